#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qconv {

/// A small prime modulus. Construction runs deterministic trial division.
class PrimeModulus {
 public:
  explicit PrimeModulus(int d);

  int value() const noexcept { return d_; }
  operator int() const noexcept { return d_; }

  /// Canonical residue in [0, d-1].
  int reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
  }

 private:
  int d_;
};

bool is_prime(int d) noexcept;

/// Multiplicative inverse in Z_d. Throws ZeroElement for a == 0 mod d.
int mod_inverse(std::int64_t a, const PrimeModulus& d);

using ZVector = std::vector<int>;
using ZMatrix = std::vector<ZVector>;  // row-major, rows of equal length

/// Gaussian elimination over Z_d. Free variables are set to zero, so a
/// homogeneous system yields the zero solution.
std::optional<ZVector> solve_mod_linear(const ZMatrix& A, const ZVector& b, const PrimeModulus& d);

/// Reduced row echelon form over Z_d with leading entries equal to 1.
/// Zero rows are dropped, so the result has rank(rows) rows.
ZMatrix row_echelon(ZMatrix rows, const PrimeModulus& d);

/// Lexicographically smallest (s, t), both nonzero, with s^2 + t^2 = 1 mod d.
std::optional<std::pair<int, int>> find_beam_splitter_params(const PrimeModulus& d);

/// Lexicographically smallest (l, m), both nonzero, with l^2 - m^2 = 1 mod d.
std::optional<std::pair<int, int>> find_amplifier_params(const PrimeModulus& d);

/// Positive, invertible 2x2 parameter matrix over Z_d.
class GMatrix {
 public:
  GMatrix(int g00, int g01, int g10, int g11, const PrimeModulus& d);

  int g00() const noexcept { return g_[0]; }
  int g01() const noexcept { return g_[1]; }
  int g10() const noexcept { return g_[2]; }
  int g11() const noexcept { return g_[3]; }
  int det() const noexcept { return det_; }
  /// (det G)^{-1}
  int N() const noexcept { return N_; }
  const PrimeModulus& modulus() const noexcept { return d_; }

  /// Entries of N * [g11, -g01; -g10, g00], row-major.
  std::array<int, 4> inverse() const noexcept;

 private:
  PrimeModulus d_;
  std::array<int, 4> g_;
  int det_;
  int N_;
};

/// The generic example [1, 1; 1, d-1].
GMatrix default_gmatrix(const PrimeModulus& d);

}  // namespace qconv
