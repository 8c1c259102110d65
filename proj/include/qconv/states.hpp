#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qconv/weyl.hpp"

namespace qconv {

/// Measured deviations from the density-matrix invariants.
struct StateDefects {
  double hermitian = 0.0;       // max |A - A^dag|
  double trace = 0.0;           // |Tr A - 1|
  double min_eigenvalue = 0.0;  // smallest eigenvalue

  bool acceptable(double tolerance = 1e-10) const {
    return hermitian <= tolerance && trace <= tolerance && min_eigenvalue >= -tolerance;
  }
};

StateDefects measure_state_defects(const CMatrix& A);

/// Positive unit-trace operator on n qudits. Construction validates the
/// invariants and throws InvalidState with the measured deviations.
class DensityMatrix {
 public:
  DensityMatrix(const QuditSpace& space, CMatrix mat);

  static DensityMatrix maximally_mixed(const QuditSpace& space);
  /// |psi><psi| / <psi|psi>
  static DensityMatrix from_ket(const QuditSpace& space, const CVector& ket);
  /// |0...0><0...0|
  static DensityMatrix zero_ket(const QuditSpace& space);

  const QuditSpace& space() const noexcept { return space_; }
  const CMatrix& matrix() const noexcept { return mat_; }
  int d() const noexcept { return space_.d; }
  int n() const noexcept { return space_.n; }
  Eigen::Index dim() const noexcept { return space_.dim(); }

  double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  QuditSpace space_;
  CMatrix mat_;
};

/// U rho U^dagger
DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& U);
/// rho (x) sigma on n_rho + n_sigma qudits.
DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma);

CharFunction char_function(const DensityMatrix& rho);
/// |Supp(Xi_rho)| at threshold 1e-10.
int pauli_rank(const DensityMatrix& rho);

/// Ginibre construction rho = A A^dag / Tr(A A^dag) with A of shape d^n x rank.
DensityMatrix random_density(std::uint64_t seed, const QuditSpace& space, int rank);

/// Commuting, independent Weyl labels with a phase vector x in Z_d^r.
struct StabilizerGroup {
  std::vector<PhasePoint> generators;
  ZVector phases;

  std::size_t rank() const noexcept { return generators.size(); }
  bool operator==(const StabilizerGroup&) const = default;
};

/// Throws InvalidGroup if generators fail to commute or are dependent.
void validate_group(const StabilizerGroup& group, const QuditSpace& space);

DensityMatrix msps_from_group(const StabilizerGroup& group, const QuditSpace& space);

struct MspsDetection {
  bool is_msps = false;
  /// Generators in reduced row echelon form over Z_d, present on success.
  std::optional<StabilizerGroup> group;
};

MspsDetection detect_msps(const CharFunction& xi);
MspsDetection is_msps(const DensityMatrix& rho);

/// Groups of every single-qudit MSPS: d + 1 directions times d phases, then
/// the empty group. Throws UnsupportedScale for n > 1.
std::vector<StabilizerGroup> enumerate_msps_groups(const QuditSpace& space);
std::vector<DensityMatrix> enumerate_msps(const QuditSpace& space);
std::vector<DensityMatrix> enumerate_pure_stabilizers(const QuditSpace& space);

/// (I + (X + Y)/sqrt 2) / 2
DensityMatrix t_state();

}  // namespace qconv
