#include "qconv/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <string>

#include "qconv/clifford.hpp"
#include "qconv/errors.hpp"

namespace qconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFullRank = 1e-12;

// log2 sum_i lambda_i^alpha over the support, shifted to avoid overflow.
double log2_sum_pow(const RVector& lambda, double alpha) {
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > tol::support) terms.push_back(alpha * std::log2(lambda(i)));
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

// Pseudo-power of sigma on its support.
CMatrix support_power(const HermSpectrum<double>& spec, double power) {
  RVector vals(spec.size());
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    vals(i) = spec.eigenvalues(i) > tol::support ? std::pow(spec.eigenvalues(i), power) : 0.0;
  }
  return spec.eigenvectors * vals.asDiagonal() * spec.eigenvectors.adjoint();
}

// Weight of rho outside the support of sigma.
double support_leak(const CMatrix& rho, const HermSpectrum<double>& sigma) {
  double leak = 0.0;
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    if (sigma.eigenvalues(j) > tol::support) continue;
    const auto v = sigma.eigenvectors.col(j);
    leak += (v.adjoint() * rho * v)(0, 0).real();
  }
  return leak;
}

void require_same_space(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space() == b.space())) throw Error(ErrorCode::DimensionMismatch, "states live on different spaces");
}

}  // namespace

double renyi_entropy(const RVector& lambda, AlphaParam alpha, RenyiOptions options) {
  const double a = alpha.value;
  if (std::isnan(a)) throw Error(ErrorCode::DomainError, "alpha is NaN");
  if (a == 1.0) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
      if (lambda(i) > 0.0) h -= lambda(i) * std::log2(lambda(i));
    return h;
  }
  if (a == 0.0) {
    int rank = 0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
      if (lambda(i) > tol::support) ++rank;
    return std::log2(static_cast<double>(rank));
  }
  if (a == kInf) return -std::log2(lambda.maxCoeff());
  if (a < 0.0) {
    const double lmin = lambda.minCoeff();
    if (!(lmin > kFullRank)) {
      if (options.singular_negative_as_limit) return -kInf;
      throw Error(ErrorCode::RankDeficient,
                  "alpha < 0 needs a full-rank state, min eigenvalue " + std::to_string(lmin));
    }
    if (a == -kInf) return std::log2(lmin);
    return -log2_sum_pow(lambda, a) / (1.0 - a);
  }
  return log2_sum_pow(lambda, a) / (1.0 - a);
}

double renyi_entropy(const DensityMatrix& rho, AlphaParam alpha, RenyiOptions options) {
  return renyi_entropy(herm_eig(rho.matrix()).eigenvalues, alpha, options);
}

double von_neumann_entropy(const DensityMatrix& rho) { return renyi_entropy(rho, AlphaParam{1.0}); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_space(rho, sigma);
  const auto s = herm_eig(sigma.matrix());
  if (support_leak(rho.matrix(), s) > tol::support) return kInf;
  const auto r = herm_eig(rho.matrix());
  double self = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r.eigenvalues(i) > 0.0) self += r.eigenvalues(i) * std::log2(r.eigenvalues(i));
  double cross = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s.eigenvalues(j) <= tol::support) continue;
    const auto v = s.eigenvectors.col(j);
    cross += std::log2(s.eigenvalues(j)) * (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return self - cross;
}

double sandwiched_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, AlphaParam alpha) {
  require_same_space(rho, sigma);
  const double a = alpha.value;
  if (a == 1.0) return relative_entropy(rho, sigma);
  if (!(a >= 0.5)) throw Error(ErrorCode::DomainError, "sandwiched divergence needs alpha >= 1/2");
  const auto s = herm_eig(sigma.matrix());
  if (a > 1.0 && support_leak(rho.matrix(), s) > tol::support) return kInf;

  const double power = a == kInf ? -0.5 : (1.0 - a) / (2.0 * a);
  const CMatrix S = support_power(s, power);
  CMatrix X = S * rho.matrix() * S;
  X = (X + X.adjoint()).eval() / 2.0;
  const RVector x = Eigen::SelfAdjointEigenSolver<CMatrix>(X, Eigen::EigenvaluesOnly).eigenvalues();
  if (a == kInf) return std::log2(x.maxCoeff());
  double q = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) > 0.0) q += std::pow(x(i), a);
  if (q <= 0.0) return kInf;
  return std::log2(q) / (a - 1.0);
}

namespace {

double fisher_term(const CMatrix& rho, const CMatrix& log_rho, const CMatrix& H) {
  const CMatrix HL = H * log_rho;
  const CMatrix inner = H * HL - 2.0 * HL * H + log_rho * H * H;
  return (rho * inner).trace().real();
}

CMatrix smoothed(const DensityMatrix& rho, double eps) {
  if (eps < 0.0 || eps > 1.0) throw Error(ErrorCode::DomainError, "smoothing must lie in [0, 1]");
  const auto dim = rho.dim();
  return (1.0 - eps) * rho.matrix() + eps * CMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

CMatrix log2_full_rank(const CMatrix& rho) {
  const auto spec = herm_eig(rho);
  const double lmin = spec.eigenvalues.minCoeff();
  if (!(lmin > kFullRank)) {
    throw Error(ErrorCode::RankDeficient, "Fisher information needs a full-rank state, min eigenvalue " +
                                              std::to_string(lmin));
  }
  return spectral_fn(spec, [](double v) { return std::log2(v); });
}

}  // namespace

double fisher_information(const DensityMatrix& rho, const CMatrix& H, double smoothing) {
  if (H.rows() != rho.dim() || H.cols() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match the state");
  }
  if (hermiticity_defect(H) > tol::hermitian) throw Error(ErrorCode::NotHermitian, "generator is not Hermitian");
  const CMatrix r = smoothed(rho, smoothing);
  return fisher_term(r, log2_full_rank(r), H);
}

std::vector<CMatrix> fisher_generators(const QuditSpace& space) {
  const int d = space.d;
  const CMatrix F = fourier_gate(d);
  std::vector<CMatrix> out;
  for (int wire = 0; wire < space.n; ++wire) {
    for (int j = 0; j < d; ++j) {
      CMatrix P = CMatrix::Zero(d, d);
      P(j, j) = 1.0;
      out.push_back(embed_gate(P, wire, space));
    }
    for (int j = 0; j < d; ++j) {
      // X-eigenvector with eigenvalue xi^j is F|d - j>.
      const CVector v = F.col((d - j) % d);
      out.push_back(embed_gate(v * v.adjoint(), wire, space));
    }
  }
  return out;
}

double total_fisher(const DensityMatrix& rho, double smoothing) {
  const CMatrix r = smoothed(rho, smoothing);
  const CMatrix log_rho = log2_full_rank(r);
  double total = 0.0;
  for (const auto& H : fisher_generators(rho.space())) total += fisher_term(r, log_rho, H);
  return total;
}

}  // namespace qconv
