#pragma once

#include "qconv/random.hpp"
#include "qconv/weyl.hpp"

namespace qconv {

/// F|j> = d^{-1/2} sum_k xi^{jk} |k>; the Hadamard gate at d = 2.
CMatrix fourier_gate(int d);
/// diag(1, i) at d = 2, diag(xi^{2^{-1} k^2}) for odd d.
CMatrix phase_gate(int d);
/// |a, b> -> |a, a + b>; CNOT at d = 2.
CMatrix sum_gate(int d);
/// diag(1, e^{i pi/4}).
CMatrix t_gate();

/// Single-qudit gate acting on `wire` of the register.
CMatrix embed_gate(const CMatrix& gate, int wire, const QuditSpace& space);
/// Two-qudit gate on (first, second); the wires need not be adjacent.
CMatrix embed_two_qudit_gate(const CMatrix& gate, int first, int second, const QuditSpace& space);

/// Product of `length` gates drawn uniformly from {F_k, S_k, SUM_{a,b}}.
CMatrix random_clifford(Rng& rng, const QuditSpace& space, int length);

}  // namespace qconv
