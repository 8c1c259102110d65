#pragma once

#include <cstdint>
#include <vector>

#include "qconv/linalg.hpp"
#include "qconv/zmod.hpp"

namespace qconv {

/// n qudits of prime local dimension d.
struct QuditSpace {
  PrimeModulus d;
  int n;

  QuditSpace(int d_, int n_);

  Eigen::Index dim() const noexcept { return dim_; }
  /// |V^n| = d^{2n}
  Eigen::Index phase_space_size() const noexcept { return dim_ * dim_; }

  bool operator==(const QuditSpace& o) const noexcept { return d.value() == o.d.value() && n == o.n; }

 private:
  Eigen::Index dim_;
};

/// A point (p, q) of V^n = Z_d^n x Z_d^n with canonical residues.
struct PhasePoint {
  ZVector p;
  ZVector q;

  bool operator==(const PhasePoint&) const = default;
  bool is_zero() const noexcept;
  /// Concatenation (p_1..p_n, q_1..q_n).
  ZVector flat() const;
};

/// Index arithmetic on the phase space; tables are ordered row-major in (p, q).
class PhaseSpace {
 public:
  explicit PhaseSpace(const QuditSpace& space) : space_(space) {}

  const QuditSpace& space() const noexcept { return space_; }
  Eigen::Index size() const noexcept { return space_.phase_space_size(); }

  Eigen::Index index(const PhasePoint& x) const;
  PhasePoint point(Eigen::Index idx) const;
  PhasePoint from_flat(const ZVector& v) const;

  PhasePoint add(const PhasePoint& x, const PhasePoint& y) const;
  PhasePoint negate(const PhasePoint& x) const;
  PhasePoint scale(const PhasePoint& x, std::int64_t p_factor, std::int64_t q_factor) const;
  PhasePoint zero() const;
  /// Z-type generator on wire k (p = e_k) or X-type (q = e_k).
  PhasePoint unit(int wire, bool x_type) const;

  /// Symplectic form p_x . q_y - q_x . p_y mod d.
  int symplectic(const PhasePoint& x, const PhasePoint& y) const;

 private:
  QuditSpace space_;
};

/// w(x)|k> = phase[k] |target[k]>; every Weyl operator is a monomial matrix.
struct WeylAction {
  std::vector<Eigen::Index> target;
  std::vector<cplx> phase;

  CMatrix dense() const;
};

WeylAction weyl_action(const QuditSpace& space, const PhasePoint& x);
CMatrix weyl_op(const QuditSpace& space, const PhasePoint& x);

/// lambda with w(x) w(y) = lambda * w(x + y).
cplx weyl_product_phase(const QuditSpace& space, const PhasePoint& x, const PhasePoint& y);

/// Xi(p, q) = Tr[A w(-p, -q)] over all of V^n.
class CharFunction {
 public:
  CharFunction(const QuditSpace& space, Eigen::VectorXcd values);

  const QuditSpace& space() const noexcept { return space_; }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }

  cplx operator[](Eigen::Index idx) const { return values_(idx); }
  cplx operator()(const PhasePoint& x) const { return values_(PhaseSpace(space_).index(x)); }

  /// Number of points with |Xi| above the support threshold.
  int support_size(double threshold = 1e-10) const;

 private:
  QuditSpace space_;
  Eigen::VectorXcd values_;
};

CharFunction char_function(const CMatrix& A, const QuditSpace& space);
/// (1/d^n) sum_x Xi(x) w(x)
CMatrix inverse_char(const CharFunction& xi);

/// True iff U w U^dagger is proportional to a Weyl operator for each of the
/// 2n generators. Throws NotUnitary.
bool is_clifford(const CMatrix& U, const QuditSpace& space);

/// Phase exponent e with z ~ xi_d^e. Throws PhaseNotRoot beyond `tolerance`.
int root_of_unity_exponent(cplx z, int d, double tolerance = 1e-8);

namespace support_tol {
inline constexpr double char_support = 1e-10;
inline constexpr double unit_modulus = 1e-9;
}  // namespace support_tol

}  // namespace qconv
