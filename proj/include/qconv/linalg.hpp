#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qconv/errors.hpp"

namespace qconv {

template <typename Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrix = CMatrixT<double>;
using CVector = Eigen::VectorXcd;
using RVector = RVectorT<double>;
using cplx = std::complex<double>;

namespace tol {
inline constexpr double hermitian = 1e-10;
/// Floor applied to eigenvalues before evaluating matrix functions.
inline constexpr double clamp = 1e-14;
/// Eigenvalues at or below this are kernel for rank/support decisions.
inline constexpr double support = 1e-10;
}  // namespace tol

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.
template <typename Real>
struct HermSpectrum {
  RVectorT<Real> eigenvalues;
  CMatrixT<Real> eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// Largest entry of |A - A^dagger|.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& A) {
  if (A.size() == 0) return 0;
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
auto herm_eig(const Eigen::MatrixBase<Derived>& A, typename Derived::RealScalar herm_tol = tol::hermitian)
    -> HermSpectrum<typename Derived::RealScalar> {
  using Real = typename Derived::RealScalar;
  if (A.rows() != A.cols()) throw Error(ErrorCode::DimensionMismatch, "herm_eig needs a square matrix");
  const Real defect = hermiticity_defect(A);
  if (!(defect <= herm_tol)) {
    throw Error(ErrorCode::NotHermitian, "max |A - A^dag| = " + std::to_string(static_cast<double>(defect)));
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const CMatrixT<Real> H = (A + A.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrixT<Real>> solver(H);
  HermSpectrum<Real> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// V f(max(lambda, clamp)) V^dagger for a precomputed spectrum.
template <typename Real, typename F>
CMatrixT<Real> spectral_fn(const HermSpectrum<Real>& spec, F&& f, Real clamp = Real(tol::clamp)) {
  RVectorT<Real> vals(spec.size());
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const Real v = f(std::max(spec.eigenvalues(i), clamp));
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::DomainError, "matrix function undefined at eigenvalue " +
                                              std::to_string(static_cast<double>(spec.eigenvalues(i))));
    }
    vals(i) = v;
  }
  return spec.eigenvectors * vals.asDiagonal() * spec.eigenvectors.adjoint();
}

template <typename Derived, typename F>
auto mat_fn(const Eigen::MatrixBase<Derived>& A, F&& f,
            typename Derived::RealScalar clamp = tol::clamp) {
  return spectral_fn(herm_eig(A), std::forward<F>(f), clamp);
}

/// Kronecker product A (x) B.
template <typename DA, typename DB>
auto tensor(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B) {
  using Scalar = typename DA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

/// Tr_B of an operator on H_A (x) H_B.
template <typename Derived>
auto partial_trace_B(const Eigen::MatrixBase<Derived>& M, Eigen::Index dimA, Eigen::Index dimB) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != dimA * dimB || M.cols() != dimA * dimB) {
    throw Error(ErrorCode::DimensionMismatch, "partial_trace_B: " + std::to_string(M.rows()) + " != " +
                                                  std::to_string(dimA) + "*" + std::to_string(dimB));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dimA, dimA);
  for (Eigen::Index a = 0; a < dimA; ++a)
    for (Eigen::Index b = 0; b < dimA; ++b)
      out(a, b) = M.block(a * dimB, b * dimB, dimB, dimB).trace();
  return out;
}

template <typename Derived>
typename Derived::RealScalar schatten2_norm(const Eigen::MatrixBase<Derived>& A) {
  return A.norm();
}

/// Sum of |eigenvalues|; Hermitian input only.
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived>& A) {
  return herm_eig(A).eigenvalues.cwiseAbs().sum();
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& U) {
  using Real = typename Derived::RealScalar;
  if (U.rows() != U.cols()) return std::numeric_limits<Real>::infinity();
  const auto I = CMatrixT<Real>::Identity(U.rows(), U.cols());
  return (U * U.adjoint() - I).cwiseAbs().maxCoeff();
}

}  // namespace qconv
