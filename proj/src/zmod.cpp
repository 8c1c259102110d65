#include "qconv/zmod.hpp"

#include <string>

#include "qconv/errors.hpp"

namespace qconv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::UnsupportedScale: return "UnsupportedScale";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::PhaseNotRoot: return "PhaseNotRoot";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::CovarianceViolation: return "CovarianceViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(int d) noexcept {
  if (d < 2) return false;
  for (int k = 2; k * k <= d; ++k) {
    if (d % k == 0) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(int d) : d_(d) {
  if (!is_prime(d)) throw Error(ErrorCode::NotPrime, std::to_string(d) + " is not prime");
}

int mod_inverse(std::int64_t a, const PrimeModulus& d) {
  const int r = d.reduce(a);
  if (r == 0) throw Error(ErrorCode::ZeroElement, "0 has no inverse mod " + std::to_string(d.value()));
  // Fermat: a^(d-2)
  std::int64_t result = 1, base = r;
  for (int e = d.value() - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % d.value();
    base = base * base % d.value();
  }
  return static_cast<int>(result);
}

namespace {

// Full reduction of an augmented or plain matrix. Returns pivot columns.
std::vector<std::size_t> reduce_in_place(ZMatrix& m, std::size_t ncols, const PrimeModulus& d) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const int inv = mod_inverse(m[row][col], d);
    for (auto& v : m[row]) v = d.reduce(static_cast<std::int64_t>(v) * inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const std::int64_t f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        m[r][c] = d.reduce(m[r][c] - f * m[row][c]);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<ZVector> solve_mod_linear(const ZMatrix& A, const ZVector& b, const PrimeModulus& d) {
  if (A.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "rows of A must match length of b");
  if (A.empty()) return ZVector{};
  const std::size_t ncols = A.front().size();
  ZMatrix aug;
  aug.reserve(A.size());
  for (std::size_t r = 0; r < A.size(); ++r) {
    if (A[r].size() != ncols) throw Error(ErrorCode::DimensionMismatch, "ragged coefficient matrix");
    ZVector row;
    row.reserve(ncols + 1);
    for (int v : A[r]) row.push_back(d.reduce(v));
    row.push_back(d.reduce(b[r]));
    aug.push_back(std::move(row));
  }
  const auto pivots = reduce_in_place(aug, ncols, d);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) {
    if (aug[r][ncols] != 0) return std::nullopt;
  }
  ZVector x(ncols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][ncols];
  return x;
}

ZMatrix row_echelon(ZMatrix rows, const PrimeModulus& d) {
  if (rows.empty()) return rows;
  for (auto& row : rows)
    for (auto& v : row) v = d.reduce(v);
  const auto pivots = reduce_in_place(rows, rows.front().size(), d);
  rows.resize(pivots.size());
  return rows;
}

std::optional<std::pair<int, int>> find_beam_splitter_params(const PrimeModulus& d) {
  for (int s = 1; s < d; ++s)
    for (int t = 1; t < d; ++t)
      if (d.reduce(s * s + t * t) == 1) return std::pair{s, t};
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_amplifier_params(const PrimeModulus& d) {
  for (int l = 1; l < d; ++l)
    for (int m = 1; m < d; ++m)
      if (d.reduce(l * l - m * m) == 1) return std::pair{l, m};
  return std::nullopt;
}

GMatrix::GMatrix(int g00, int g01, int g10, int g11, const PrimeModulus& d)
    : d_(d), g_{d.reduce(g00), d.reduce(g01), d.reduce(g10), d.reduce(g11)} {
  det_ = d_.reduce(static_cast<std::int64_t>(g_[0]) * g_[3] - static_cast<std::int64_t>(g_[1]) * g_[2]);
  if (det_ == 0) throw Error(ErrorCode::NotInvertible, "det G = 0 mod " + std::to_string(d.value()));
  for (int g : g_) {
    if (g == 0) throw Error(ErrorCode::NotPositive, "G has an entry = 0 mod " + std::to_string(d.value()));
  }
  N_ = mod_inverse(det_, d_);
}

std::array<int, 4> GMatrix::inverse() const noexcept {
  const std::int64_t n = N_;
  return {d_.reduce(n * g_[3]), d_.reduce(-n * g_[1]), d_.reduce(-n * g_[2]), d_.reduce(n * g_[0])};
}

GMatrix default_gmatrix(const PrimeModulus& d) { return GMatrix(1, 1, 1, d.value() - 1, d); }

}  // namespace qconv
