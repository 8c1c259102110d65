#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qconv/states.hpp"

namespace qconv {

/// Throws UnsupportedDimension unless d is an odd prime: modulo 2 the only
/// positive matrix [1, 1; 1, 1] is singular.
void require_convolution_dimension(int d);

/// Parameter matrix G on a pair of n-qudit registers. The key unitary is a
/// basis permutation; its index map is cached on construction.
class ConvolutionSpec {
 public:
  ConvolutionSpec(const QuditSpace& space, const GMatrix& G);

  const QuditSpace& space() const noexcept { return space_; }
  const GMatrix& G() const noexcept { return G_; }
  int N() const noexcept { return G_.N(); }

  /// permutation()[a] is the image of basis state a = i * d^n + j.
  const std::vector<Eigen::Index>& permutation() const noexcept { return perm_; }

 private:
  QuditSpace space_;
  GMatrix G_;
  std::vector<Eigen::Index> perm_;
};

/// G = [s, t; t, -s] with the smallest s^2 + t^2 = 1. Throws NoSolution.
ConvolutionSpec beam_splitter_spec(int d, int n);
/// G = [l, -m; -m, l] with the smallest l^2 - m^2 = 1. Throws NoSolution.
ConvolutionSpec amplifier_spec(int d, int n);

/// U|i, j> = |N g11 i - N g10 j, -N g01 i + N g00 j>.
CMatrix key_unitary(const ConvolutionSpec& spec);

/// Tr_B[U (rho (x) sigma) U^dag]
DensityMatrix convolve(const DensityMatrix& rho, const DensityMatrix& sigma, const ConvolutionSpec& spec);

/// Xi_out(p, q) = Xi_rho(N g11 p, g00 q) Xi_sigma(-N g10 p, g01 q)
CharFunction convolve_characteristic(const CharFunction& xi_rho, const CharFunction& xi_sigma,
                                     const ConvolutionSpec& spec);

/// E_sigma(rho) = rho [x] sigma for a fixed environment state sigma.
struct ConvolutionChannel {
  ConvolutionSpec spec;
  DensityMatrix sigma;

  ConvolutionChannel(ConvolutionSpec spec_, DensityMatrix sigma_);
};

DensityMatrix channel_apply(const ConvolutionChannel& chan, const DensityMatrix& rho);

/// S1 = {w(-g10^{-1} g11 x, g01^{-1} g00 y) : w(x, y) in S2}, zero phases.
StabilizerGroup partner_stabilizer_group(const StabilizerGroup& s2, const ConvolutionSpec& spec);

/// Pure stabilizer pair (rho, sigma) with pure output: sigma from s2, rho
/// from the partner group. Partner phases are scanned from zero until the
/// output entropy drops below `entropy_tol`; empty if none does.
std::optional<std::pair<DensityMatrix, DensityMatrix>> minimal_output_pair(const StabilizerGroup& s2,
                                                                          const ConvolutionSpec& spec,
                                                                          double entropy_tol = 1e-9);

struct HolevoBounds {
  double lower;
  double upper;
};

/// n log d - H(M(sigma)) <= chi(E_sigma) <= n log d - H(sigma)
HolevoBounds holevo_bounds(const ConvolutionChannel& chan);

/// Holevo quantity of the uniform Weyl orbit {w(x) rho0 w(x)^dag}. Checks
/// that the average output is maximally mixed and the output entropies are
/// equal (CovarianceViolation otherwise), then returns n log d - H(E(rho0)).
double holevo_weyl_ensemble(const ConvolutionChannel& chan, const DensityMatrix& rho0);

}  // namespace qconv
