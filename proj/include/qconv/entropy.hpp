#pragma once

#include <limits>

#include "qconv/states.hpp"

namespace qconv {

/// Renyi order on the extended real line. Logarithms are base 2 throughout.
struct AlphaParam {
  double value;

  static AlphaParam infinity() { return {std::numeric_limits<double>::infinity()}; }
  static AlphaParam neg_infinity() { return {-std::numeric_limits<double>::infinity()}; }

  int sign() const noexcept { return value > 0 ? 1 : (value < 0 ? -1 : 0); }
};

struct RenyiOptions {
  /// For alpha < 0 on a singular state, return the limit value -inf instead
  /// of throwing RankDeficient.
  bool singular_negative_as_limit = false;
};

/// Generalized Renyi entropy sgn(alpha)/(1-alpha) log2 sum_i lambda_i^alpha
/// with the limits alpha = 0 (log rank), 1 (von Neumann), +inf (-log
/// lambda_max) and -inf (log lambda_min).
double renyi_entropy(const DensityMatrix& rho, AlphaParam alpha, RenyiOptions options = {});
double renyi_entropy(const RVector& eigenvalues, AlphaParam alpha, RenyiOptions options = {});

double von_neumann_entropy(const DensityMatrix& rho);

/// Sandwiched Renyi divergence for alpha in [1/2, inf]; alpha = 1 routes to
/// relative_entropy. Returns +inf for alpha > 1 when supp rho is not inside
/// supp sigma.
double sandwiched_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, AlphaParam alpha);

/// Tr rho (log2 rho - log2 sigma), +inf off support.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr rho [H, [H, log2 rho]]. With smoothing > 0 rho is replaced by
/// (1 - eps) rho + eps I / d^n; otherwise rho must be full rank.
double fisher_information(const DensityMatrix& rho, const CMatrix& H, double smoothing = 0.0);

/// Sum over wires k and j in Z_d of J(rho; |j><j|) in the X_k and Z_k
/// eigenbases.
double total_fisher(const DensityMatrix& rho, double smoothing = 0.0);

/// Projectors |j><j|_R for R = Z_k (computational) and X_k (Fourier) on
/// every wire, in that order.
std::vector<CMatrix> fisher_generators(const QuditSpace& space);

}  // namespace qconv
