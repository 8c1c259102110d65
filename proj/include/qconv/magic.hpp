#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qconv/states.hpp"

namespace qconv {

/// The MSPS keeping exactly the unit-modulus characteristic values of rho.
DensityMatrix mean_state(const DensityMatrix& rho);

/// Largest |Xi| over the support excluding unit-modulus points; empty when
/// no such point exists.
std::optional<double> largest_nonunit_modulus(const CharFunction& xi);

/// 1 - largest non-unit modulus; 0 on MSPS.
double magic_gap(const DensityMatrix& rho);
/// -log2 of the largest non-unit modulus; 0 on MSPS.
double log_magic_gap(const DensityMatrix& rho);

/// Upper bound 1 - sqrt((d^n Tr rho^2 - K) / (R_P - K)), K the number of
/// unit-modulus points. Empty when R_P == K.
std::optional<double> magic_gap_upper_bound(const DensityMatrix& rho);

/// Generators of the mean state's group and the exponents k with
/// Xi_rho(g_i) = xi^{k_i}.
struct MeanVector {
  std::vector<PhasePoint> generators;
  ZVector k;

  bool is_zero() const noexcept {
    for (int v : k)
      if (v != 0) return false;
    return true;
  }
};

MeanVector mean_vector(const DensityMatrix& rho);

struct ZeroMeanResult {
  PhasePoint displacement;
  DensityMatrix state;
};

/// Finds u with w(u) rho w(u)^dag zero-mean by solving
/// <u, g_i> = a.q_i - b.p_i = -k_i over Z_d.
ZeroMeanResult make_zero_mean(const DensityMatrix& rho);

/// Qubit circuit of n_t T gates interleaved with seeded random Clifford
/// layers (H, S, CNOT words). n in {1, 2}.
CMatrix clifford_t_circuit(std::uint64_t seed, int n, int n_t);

}  // namespace qconv
