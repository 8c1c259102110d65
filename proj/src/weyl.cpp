#include "qconv/weyl.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qconv/errors.hpp"

namespace qconv {

namespace {

Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Phases of Weyl operators are roots of unity of order d (odd d) or 4 (d = 2).
int phase_order(int d) { return d == 2 ? 4 : d; }

cplx unit_root(int order, std::int64_t e) {
  e %= order;
  if (e < 0) e += order;
  if (e == 0) return {1.0, 0.0};
  if (2 * e == order) return {-1.0, 0.0};
  if (4 * e == order) return {0.0, 1.0};
  if (4 * e == 3 * order) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / order;
  return {std::cos(angle), std::sin(angle)};
}

// Exponent (in units of the phase order) of w(p, q)|k> = root^e |k + q>.
std::int64_t local_exponent(int d, std::int64_t p, std::int64_t q, std::int64_t k) {
  const std::int64_t shifted = (k + q) % d;
  if (d == 2) {
    // i^{-pq} Z^p X^q; Z contributes (-1)^{p(k+q)} = i^{2p(k+q)}.
    return -p * q + 2 * p * shifted;
  }
  const std::int64_t half = (d + 1) / 2;
  return -half * p * q + p * shifted;
}

}  // namespace

QuditSpace::QuditSpace(int d_, int n_) : d(d_), n(n_) {
  if (n_ < 1) throw Error(ErrorCode::DimensionMismatch, "need n >= 1 qudits");
  dim_ = ipow(d_, n_);
}

bool PhasePoint::is_zero() const noexcept {
  for (int v : p)
    if (v != 0) return false;
  for (int v : q)
    if (v != 0) return false;
  return true;
}

ZVector PhasePoint::flat() const {
  ZVector out(p);
  out.insert(out.end(), q.begin(), q.end());
  return out;
}

Eigen::Index PhaseSpace::index(const PhasePoint& x) const {
  const int d = space_.d;
  Eigen::Index idx = 0;
  for (int v : x.p) idx = idx * d + space_.d.reduce(v);
  for (int v : x.q) idx = idx * d + space_.d.reduce(v);
  return idx;
}

PhasePoint PhaseSpace::point(Eigen::Index idx) const {
  const int d = space_.d;
  const int n = space_.n;
  PhasePoint x{ZVector(n), ZVector(n)};
  for (int k = n - 1; k >= 0; --k) {
    x.q[k] = static_cast<int>(idx % d);
    idx /= d;
  }
  for (int k = n - 1; k >= 0; --k) {
    x.p[k] = static_cast<int>(idx % d);
    idx /= d;
  }
  return x;
}

PhasePoint PhaseSpace::from_flat(const ZVector& v) const {
  const auto n = static_cast<std::size_t>(space_.n);
  if (v.size() != 2 * n) throw Error(ErrorCode::DimensionMismatch, "phase point needs 2n entries");
  PhasePoint x{ZVector(n), ZVector(n)};
  for (std::size_t k = 0; k < n; ++k) {
    x.p[k] = space_.d.reduce(v[k]);
    x.q[k] = space_.d.reduce(v[n + k]);
  }
  return x;
}

PhasePoint PhaseSpace::add(const PhasePoint& x, const PhasePoint& y) const {
  PhasePoint r = x;
  for (std::size_t k = 0; k < r.p.size(); ++k) {
    r.p[k] = space_.d.reduce(static_cast<std::int64_t>(x.p[k]) + y.p[k]);
    r.q[k] = space_.d.reduce(static_cast<std::int64_t>(x.q[k]) + y.q[k]);
  }
  return r;
}

PhasePoint PhaseSpace::negate(const PhasePoint& x) const { return scale(x, -1, -1); }

PhasePoint PhaseSpace::scale(const PhasePoint& x, std::int64_t p_factor, std::int64_t q_factor) const {
  PhasePoint r = x;
  for (std::size_t k = 0; k < r.p.size(); ++k) {
    r.p[k] = space_.d.reduce(p_factor * x.p[k]);
    r.q[k] = space_.d.reduce(q_factor * x.q[k]);
  }
  return r;
}

PhasePoint PhaseSpace::zero() const {
  return PhasePoint{ZVector(space_.n, 0), ZVector(space_.n, 0)};
}

PhasePoint PhaseSpace::unit(int wire, bool x_type) const {
  PhasePoint r = zero();
  (x_type ? r.q : r.p).at(static_cast<std::size_t>(wire)) = 1;
  return r;
}

int PhaseSpace::symplectic(const PhasePoint& x, const PhasePoint& y) const {
  std::int64_t acc = 0;
  for (std::size_t k = 0; k < x.p.size(); ++k) {
    acc += static_cast<std::int64_t>(x.p[k]) * y.q[k] - static_cast<std::int64_t>(x.q[k]) * y.p[k];
  }
  return space_.d.reduce(acc);
}

CMatrix WeylAction::dense() const {
  const auto dim = static_cast<Eigen::Index>(target.size());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) out(target[k], k) = phase[k];
  return out;
}

WeylAction weyl_action(const QuditSpace& space, const PhasePoint& x) {
  const int d = space.d;
  const int n = space.n;
  const int order = phase_order(d);
  const Eigen::Index dim = space.dim();
  WeylAction w;
  w.target.resize(static_cast<std::size_t>(dim));
  w.phase.resize(static_cast<std::size_t>(dim));
  ZVector digits(n);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index rest = k;
    for (int j = n - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(rest % d);
      rest /= d;
    }
    std::int64_t e = 0;
    Eigen::Index tgt = 0;
    for (int j = 0; j < n; ++j) {
      const int p = space.d.reduce(x.p[j]);
      const int q = space.d.reduce(x.q[j]);
      e += local_exponent(d, p, q, digits[j]);
      tgt = tgt * d + (digits[j] + q) % d;
    }
    w.target[static_cast<std::size_t>(k)] = tgt;
    w.phase[static_cast<std::size_t>(k)] = unit_root(order, e);
  }
  return w;
}

CMatrix weyl_op(const QuditSpace& space, const PhasePoint& x) { return weyl_action(space, x).dense(); }

cplx weyl_product_phase(const QuditSpace& space, const PhasePoint& x, const PhasePoint& y) {
  // Compare the action on |0>: w(x) w(y)|0> against w(x + y)|0>.
  const auto wx = weyl_action(space, x);
  const auto wy = weyl_action(space, y);
  const auto wxy = weyl_action(space, PhaseSpace(space).add(x, y));
  const auto mid = static_cast<std::size_t>(wy.target[0]);
  return wx.phase[mid] * wy.phase[0] / wxy.phase[0];
}

CharFunction::CharFunction(const QuditSpace& space, Eigen::VectorXcd values)
    : space_(space), values_(std::move(values)) {
  if (values_.size() != space_.phase_space_size()) {
    throw Error(ErrorCode::DimensionMismatch, "characteristic table needs d^{2n} = " +
                                                  std::to_string(space_.phase_space_size()) + " entries");
  }
}

int CharFunction::support_size(double threshold) const {
  int count = 0;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (std::abs(values_(i)) > threshold) ++count;
  return count;
}

CharFunction char_function(const CMatrix& A, const QuditSpace& space) {
  if (A.rows() != space.dim() || A.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension does not match d^n");
  }
  const PhaseSpace ps(space);
  Eigen::VectorXcd values(ps.size());
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    const auto w = weyl_action(space, ps.negate(ps.point(i)));
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < space.dim(); ++k) {
      acc += A(k, w.target[static_cast<std::size_t>(k)]) * w.phase[static_cast<std::size_t>(k)];
    }
    values(i) = acc;
  }
  return CharFunction(space, std::move(values));
}

CMatrix inverse_char(const CharFunction& xi) {
  const auto& space = xi.space();
  const PhaseSpace ps(space);
  CMatrix out = CMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    if (xi[i] == cplx(0.0)) continue;
    const auto w = weyl_action(space, ps.point(i));
    for (Eigen::Index k = 0; k < space.dim(); ++k) {
      out(w.target[static_cast<std::size_t>(k)], k) += xi[i] * w.phase[static_cast<std::size_t>(k)];
    }
  }
  return out / static_cast<double>(space.dim());
}

bool is_clifford(const CMatrix& U, const QuditSpace& space) {
  if (U.rows() != space.dim() || U.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary dimension does not match d^n");
  }
  const double defect = unitarity_defect(U);
  if (!(defect <= 1e-10)) throw Error(ErrorCode::NotUnitary, "max |UU^dag - I| = " + std::to_string(defect));
  const PhaseSpace ps(space);
  const double dim = static_cast<double>(space.dim());
  for (int wire = 0; wire < space.n; ++wire) {
    for (bool x_type : {false, true}) {
      const CMatrix C = U * weyl_op(space, ps.unit(wire, x_type)) * U.adjoint();
      const auto coeffs = char_function(C, space);
      Eigen::Index best = 0;
      coeffs.values().cwiseAbs().maxCoeff(&best);
      const cplx c = coeffs[best] / dim;
      if (std::abs(std::abs(c) - 1.0) > 1e-9) return false;
      const double residual = (C - c * weyl_op(space, ps.point(best))).cwiseAbs().maxCoeff();
      if (residual > 1e-9) return false;
    }
  }
  return true;
}

int root_of_unity_exponent(cplx z, int d, double tolerance) {
  const double turns = std::arg(z) / (2.0 * std::numbers::pi) * d;
  int e = static_cast<int>(std::lround(turns)) % d;
  if (e < 0) e += d;
  const cplx root = unit_root(d, e);
  if (std::abs(z - root) > tolerance) {
    throw Error(ErrorCode::PhaseNotRoot, "value deviates from the nearest d-th root of unity by " +
                                             std::to_string(std::abs(z - root)));
  }
  return e;
}

}  // namespace qconv
