#include "qconv/clifford.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qconv/errors.hpp"

namespace qconv {

namespace {

cplx xi_pow(int d, std::int64_t e) {
  e %= d;
  if (e < 0) e += d;
  if (e == 0) return 1.0;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
}

std::vector<int> digits_of(Eigen::Index idx, int d, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    out[static_cast<std::size_t>(j)] = static_cast<int>(idx % d);
    idx /= d;
  }
  return out;
}

Eigen::Index index_of(const std::vector<int>& digits, int d) {
  Eigen::Index idx = 0;
  for (int v : digits) idx = idx * d + v;
  return idx;
}

}  // namespace

CMatrix fourier_gate(int d) {
  CMatrix F(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) F(k, j) = norm * xi_pow(d, static_cast<std::int64_t>(j) * k);
  return F;
}

CMatrix phase_gate(int d) {
  CMatrix S = CMatrix::Zero(d, d);
  if (d == 2) {
    S(0, 0) = 1.0;
    S(1, 1) = cplx(0.0, 1.0);
    return S;
  }
  const std::int64_t half = (d + 1) / 2;
  for (int k = 0; k < d; ++k) S(k, k) = xi_pow(d, half * k * k);
  return S;
}

CMatrix sum_gate(int d) {
  CMatrix M = CMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) M(a * d + (a + b) % d, a * d + b) = 1.0;
  return M;
}

CMatrix t_gate() {
  CMatrix T = CMatrix::Zero(2, 2);
  T(0, 0) = 1.0;
  T(1, 1) = std::polar(1.0, std::numbers::pi / 4.0);
  return T;
}

CMatrix embed_gate(const CMatrix& gate, int wire, const QuditSpace& space) {
  const int d = space.d;
  if (gate.rows() != d || wire < 0 || wire >= space.n) {
    throw Error(ErrorCode::DimensionMismatch, "single-qudit gate does not fit the register");
  }
  CMatrix out = CMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index col = 0; col < space.dim(); ++col) {
    auto digits = digits_of(col, d, space.n);
    const int in = digits[static_cast<std::size_t>(wire)];
    for (int v = 0; v < d; ++v) {
      if (gate(v, in) == cplx(0.0)) continue;
      digits[static_cast<std::size_t>(wire)] = v;
      out(index_of(digits, d), col) += gate(v, in);
    }
  }
  return out;
}

CMatrix embed_two_qudit_gate(const CMatrix& gate, int first, int second, const QuditSpace& space) {
  const int d = space.d;
  if (gate.rows() != d * d || first == second || first < 0 || second < 0 || first >= space.n ||
      second >= space.n) {
    throw Error(ErrorCode::DimensionMismatch, "two-qudit gate does not fit the register");
  }
  const auto f = static_cast<std::size_t>(first);
  const auto s = static_cast<std::size_t>(second);
  CMatrix out = CMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index col = 0; col < space.dim(); ++col) {
    auto digits = digits_of(col, d, space.n);
    const int in = digits[f] * d + digits[s];
    for (int v = 0; v < d * d; ++v) {
      if (gate(v, in) == cplx(0.0)) continue;
      digits[f] = v / d;
      digits[s] = v % d;
      out(index_of(digits, d), col) += gate(v, in);
    }
  }
  return out;
}

CMatrix random_clifford(Rng& rng, const QuditSpace& space, int length) {
  const int d = space.d;
  const int n = space.n;
  const CMatrix F = fourier_gate(d);
  const CMatrix S = phase_gate(d);
  const CMatrix SUM = sum_gate(d);
  const std::uint64_t kinds = n > 1 ? 3 : 2;
  CMatrix U = CMatrix::Identity(space.dim(), space.dim());
  for (int step = 0; step < length; ++step) {
    const auto kind = rng.below(kinds);
    const int wire = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (kind == 0) {
      U = embed_gate(F, wire, space) * U;
    } else if (kind == 1) {
      U = embed_gate(S, wire, space) * U;
    } else {
      int other = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (other >= wire) ++other;
      U = embed_two_qudit_gate(SUM, wire, other, space) * U;
    }
  }
  return U;
}

}  // namespace qconv
