#include "qconv/magic.hpp"

#include <cmath>
#include <string>

#include "qconv/clifford.hpp"
#include "qconv/errors.hpp"
#include "qconv/random.hpp"

namespace qconv {

namespace {

bool unit_modulus(cplx z) { return std::abs(std::abs(z) - 1.0) <= support_tol::unit_modulus; }

}  // namespace

DensityMatrix mean_state(const DensityMatrix& rho) {
  const auto xi = char_function(rho);
  Eigen::VectorXcd kept = xi.values();
  for (Eigen::Index i = 0; i < kept.size(); ++i)
    if (!unit_modulus(kept(i))) kept(i) = 0.0;
  CMatrix m = inverse_char(CharFunction(rho.space(), std::move(kept)));
  m = (m + m.adjoint()).eval() / 2.0;
  return DensityMatrix(rho.space(), std::move(m));
}

std::optional<double> largest_nonunit_modulus(const CharFunction& xi) {
  std::optional<double> best;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double mag = std::abs(xi[i]);
    if (mag <= support_tol::char_support || unit_modulus(xi[i])) continue;
    if (!best || mag > *best) best = mag;
  }
  return best;
}

double magic_gap(const DensityMatrix& rho) {
  const auto m = largest_nonunit_modulus(char_function(rho));
  return m ? 1.0 - *m : 0.0;
}

double log_magic_gap(const DensityMatrix& rho) {
  const auto m = largest_nonunit_modulus(char_function(rho));
  return m ? -std::log2(*m) : 0.0;
}

std::optional<double> magic_gap_upper_bound(const DensityMatrix& rho) {
  const auto xi = char_function(rho);
  int rank = 0;
  int unit = 0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    if (std::abs(xi[i]) <= support_tol::char_support) continue;
    ++rank;
    if (unit_modulus(xi[i])) ++unit;
  }
  if (rank == unit) return std::nullopt;
  const double num = static_cast<double>(rho.dim()) * rho.purity() - unit;
  return 1.0 - std::sqrt(std::max(0.0, num) / (rank - unit));
}

MeanVector mean_vector(const DensityMatrix& rho) {
  const auto detection = detect_msps(char_function(mean_state(rho)));
  if (!detection.is_msps) {
    throw Error(ErrorCode::PhaseNotRoot, "mean state failed MSPS detection");
  }
  const auto xi = char_function(rho);
  MeanVector out;
  for (const auto& g : detection.group->generators) {
    out.k.push_back(root_of_unity_exponent(xi(g), rho.d(), 1e-8));
    out.generators.push_back(g);
  }
  return out;
}

ZeroMeanResult make_zero_mean(const DensityMatrix& rho) {
  const auto mv = mean_vector(rho);
  const auto& space = rho.space();
  const PhaseSpace ps(space);
  ZMatrix A;
  ZVector b;
  for (std::size_t i = 0; i < mv.generators.size(); ++i) {
    const auto& g = mv.generators[i];
    ZVector row;
    for (int q : g.q) row.push_back(q);
    for (int p : g.p) row.push_back(space.d.reduce(-p));
    A.push_back(std::move(row));
    b.push_back(space.d.reduce(-mv.k[i]));
  }
  PhasePoint u = ps.zero();
  if (!A.empty()) {
    const auto sol = solve_mod_linear(A, b, space.d);
    if (!sol) throw Error(ErrorCode::NoSolution, "no Weyl displacement cancels the mean-value vector");
    u = ps.from_flat(*sol);
  }
  auto shifted = conjugate(rho, weyl_op(space, u));
  return {std::move(u), std::move(shifted)};
}

CMatrix clifford_t_circuit(std::uint64_t seed, int n, int n_t) {
  if (n < 1 || n > 2) throw Error(ErrorCode::UnsupportedScale, "Clifford+T circuits support n in {1, 2}");
  if (n_t < 0) throw Error(ErrorCode::DomainError, "negative T count");
  const QuditSpace space(2, n);
  const int layer = 4 * n;
  Rng rng(seed);
  CMatrix V = random_clifford(rng, space, layer);
  const CMatrix T = t_gate();
  for (int k = 0; k < n_t; ++k) {
    const int wire = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    V = (embed_gate(T, wire, space) * V).eval();
    V = (random_clifford(rng, space, layer) * V).eval();
  }
  return V;
}

}  // namespace qconv
