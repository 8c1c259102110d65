#include "qconv/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qconv/errors.hpp"
#include "qconv/random.hpp"

namespace qconv {

StateDefects measure_state_defects(const CMatrix& A) {
  StateDefects out;
  out.hermitian = hermiticity_defect(A);
  out.trace = std::abs(A.trace() - cplx(1.0));
  const CMatrix H = (A + A.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().size() > 0 ? solver.eigenvalues().minCoeff() : 0.0;
  return out;
}

DensityMatrix::DensityMatrix(const QuditSpace& space, CMatrix mat) : space_(space), mat_(std::move(mat)) {
  if (mat_.rows() != space_.dim() || mat_.cols() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state matrix is " + std::to_string(mat_.rows()) + "x" +
                                                  std::to_string(mat_.cols()) + ", expected d^n = " +
                                                  std::to_string(space_.dim()));
  }
  const auto defects = measure_state_defects(mat_);
  if (!defects.acceptable()) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "hermiticity defect " << defects.hermitian << ", trace defect " << defects.trace
        << ", min eigenvalue " << defects.min_eigenvalue;
    throw Error(ErrorCode::InvalidState, msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(const QuditSpace& space) {
  return DensityMatrix(space, CMatrix::Identity(space.dim(), space.dim()) / static_cast<double>(space.dim()));
}

DensityMatrix DensityMatrix::from_ket(const QuditSpace& space, const CVector& ket) {
  if (ket.size() != space.dim()) throw Error(ErrorCode::DimensionMismatch, "ket dimension does not match d^n");
  const CVector v = ket.normalized();
  return DensityMatrix(space, v * v.adjoint());
}

DensityMatrix DensityMatrix::zero_ket(const QuditSpace& space) {
  CVector ket = CVector::Zero(space.dim());
  ket(0) = 1.0;
  return from_ket(space, ket);
}

DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& U) {
  CMatrix out = U * rho.matrix() * U.adjoint();
  out = (out + out.adjoint()).eval() / 2.0;
  return DensityMatrix(rho.space(), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.d() != sigma.d()) throw Error(ErrorCode::DimensionMismatch, "tensor factors need equal d");
  return DensityMatrix(QuditSpace(rho.d(), rho.n() + sigma.n()), tensor(rho.matrix(), sigma.matrix()));
}

CharFunction char_function(const DensityMatrix& rho) { return char_function(rho.matrix(), rho.space()); }

int pauli_rank(const DensityMatrix& rho) {
  return char_function(rho).support_size(support_tol::char_support);
}

DensityMatrix random_density(std::uint64_t seed, const QuditSpace& space, int rank) {
  if (rank < 1 || rank > space.dim()) {
    throw Error(ErrorCode::DomainError, "rank must lie in [1, d^n], got " + std::to_string(rank));
  }
  Rng rng(seed);
  CMatrix A(space.dim(), rank);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      A(i, j) = cplx(re, im);
    }
  CMatrix rho = A * A.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix(space, std::move(rho));
}

void validate_group(const StabilizerGroup& group, const QuditSpace& space) {
  const PhaseSpace ps(space);
  if (group.phases.size() != group.generators.size()) {
    throw Error(ErrorCode::InvalidGroup, "one phase per generator required");
  }
  if (group.generators.size() > static_cast<std::size_t>(space.n)) {
    throw Error(ErrorCode::InvalidGroup, "more than n generators");
  }
  for (const auto& g : group.generators) {
    if (g.p.size() != static_cast<std::size_t>(space.n) || g.q.size() != static_cast<std::size_t>(space.n)) {
      throw Error(ErrorCode::InvalidGroup, "generator label has wrong length");
    }
  }
  for (std::size_t i = 0; i < group.generators.size(); ++i)
    for (std::size_t j = i + 1; j < group.generators.size(); ++j)
      if (ps.symplectic(group.generators[i], group.generators[j]) != 0) {
        throw Error(ErrorCode::InvalidGroup,
                    "generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      }
  ZMatrix rows;
  for (const auto& g : group.generators) rows.push_back(g.flat());
  if (row_echelon(rows, space.d).size() != rows.size()) {
    throw Error(ErrorCode::InvalidGroup, "generators are linearly dependent over Z_d");
  }
}

DensityMatrix msps_from_group(const StabilizerGroup& group, const QuditSpace& space) {
  validate_group(group, space);
  const int d = space.d;
  const Eigen::Index dim = space.dim();
  CMatrix rho = CMatrix::Identity(dim, dim);
  for (std::size_t i = 0; i < group.generators.size(); ++i) {
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * space.d.reduce(group.phases[i]) / d);
    const CMatrix W = phase * weyl_op(space, group.generators[i]);
    CMatrix power = CMatrix::Identity(dim, dim);
    CMatrix projector = CMatrix::Zero(dim, dim);
    for (int k = 0; k < d; ++k) {
      projector += power;
      power = (W * power).eval();
    }
    rho = (rho * projector).eval() / static_cast<double>(d);
  }
  const auto r = static_cast<int>(group.generators.size());
  double scale = 1.0;
  for (int k = 0; k < space.n - r; ++k) scale *= d;
  rho /= scale;
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix(space, std::move(rho));
}

MspsDetection detect_msps(const CharFunction& xi) {
  constexpr double tol = support_tol::unit_modulus;
  const auto& space = xi.space();
  const PhaseSpace ps(space);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double mag = std::abs(xi[i]);
    if (mag <= tol) continue;
    if (std::abs(mag - 1.0) > tol) return {};
    support.push_back(i);
  }

  ZMatrix rows;
  rows.reserve(support.size());
  for (auto i : support) rows.push_back(ps.point(i).flat());
  ZMatrix basis = row_echelon(rows, space.d);

  // Support must be the whole span of its basis.
  std::size_t span_size = 1;
  for (std::size_t k = 0; k < basis.size(); ++k) span_size *= static_cast<std::size_t>(space.d.value());
  if (span_size != support.size()) return {};

  for (auto i : support) {
    const auto x = ps.point(i);
    for (auto j : support) {
      const auto y = ps.point(j);
      if (ps.symplectic(x, y) != 0) return {};
      const cplx expected = weyl_product_phase(space, x, y) * xi[i] * xi[j];
      if (std::abs(xi(ps.add(x, y)) - expected) > tol) return {};
    }
  }

  StabilizerGroup group;
  for (const auto& row : basis) {
    auto g = ps.from_flat(row);
    group.phases.push_back(root_of_unity_exponent(xi(g), space.d, 1e-8));
    group.generators.push_back(std::move(g));
  }
  return {true, std::move(group)};
}

MspsDetection is_msps(const DensityMatrix& rho) { return detect_msps(char_function(rho)); }

std::vector<StabilizerGroup> enumerate_msps_groups(const QuditSpace& space) {
  if (space.n != 1) throw Error(ErrorCode::UnsupportedScale, "MSPS enumeration is implemented for n = 1 only");
  const int d = space.d;
  std::vector<PhasePoint> directions;
  directions.push_back(PhasePoint{{0}, {1}});
  for (int q = 0; q < d; ++q) directions.push_back(PhasePoint{{1}, {q}});
  std::vector<StabilizerGroup> groups;
  for (const auto& dir : directions)
    for (int x = 0; x < d; ++x) groups.push_back(StabilizerGroup{{dir}, {x}});
  groups.push_back(StabilizerGroup{});
  return groups;
}

std::vector<DensityMatrix> enumerate_msps(const QuditSpace& space) {
  std::vector<DensityMatrix> out;
  for (const auto& g : enumerate_msps_groups(space)) out.push_back(msps_from_group(g, space));
  return out;
}

std::vector<DensityMatrix> enumerate_pure_stabilizers(const QuditSpace& space) {
  std::vector<DensityMatrix> out;
  for (const auto& g : enumerate_msps_groups(space)) {
    if (g.rank() == static_cast<std::size_t>(space.n)) out.push_back(msps_from_group(g, space));
  }
  return out;
}

DensityMatrix t_state() {
  const double h = 1.0 / (2.0 * std::sqrt(2.0));
  CMatrix m(2, 2);
  m << 0.5, cplx(h, -h), cplx(h, h), 0.5;
  return DensityMatrix(QuditSpace(2, 1), m);
}

}  // namespace qconv
