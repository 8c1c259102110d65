#include "qconv/conv.hpp"

#include <cmath>
#include <string>

#include "qconv/entropy.hpp"
#include "qconv/errors.hpp"
#include "qconv/magic.hpp"

namespace qconv {

void require_convolution_dimension(int d) {
  if (d == 2) {
    throw Error(ErrorCode::UnsupportedDimension,
                "convolution is undefined for d = 2: the only positive matrix [1,1;1,1] is not invertible mod 2");
  }
  if (!is_prime(d)) throw Error(ErrorCode::UnsupportedDimension, "convolution needs an odd prime d");
}

ConvolutionSpec::ConvolutionSpec(const QuditSpace& space, const GMatrix& G) : space_(space), G_(G) {
  require_convolution_dimension(space.d);
  if (G.modulus().value() != space.d.value()) {
    throw Error(ErrorCode::DimensionMismatch, "G is defined over a different modulus");
  }
  const int d = space.d;
  const int n = space.n;
  const Eigen::Index half = space.dim();
  const std::int64_t N = G.N();
  const std::int64_t a = N * G.g11(), b = -N * G.g10(), c = -N * G.g01(), e = N * G.g00();
  perm_.resize(static_cast<std::size_t>(half * half));
  ZVector i(n), j(n);
  for (Eigen::Index ia = 0; ia < half; ++ia) {
    for (Eigen::Index jb = 0; jb < half; ++jb) {
      Eigen::Index ri = ia, rj = jb;
      for (int k = n - 1; k >= 0; --k) {
        i[k] = static_cast<int>(ri % d);
        j[k] = static_cast<int>(rj % d);
        ri /= d;
        rj /= d;
      }
      Eigen::Index out_i = 0, out_j = 0;
      for (int k = 0; k < n; ++k) {
        out_i = out_i * d + space.d.reduce(a * i[k] + b * j[k]);
        out_j = out_j * d + space.d.reduce(c * i[k] + e * j[k]);
      }
      perm_[static_cast<std::size_t>(ia * half + jb)] = out_i * half + out_j;
    }
  }
}

ConvolutionSpec beam_splitter_spec(int d, int n) {
  require_convolution_dimension(d);
  const PrimeModulus m(d);
  const auto st = find_beam_splitter_params(m);
  if (!st) {
    throw Error(ErrorCode::NoSolution, "no s, t != 0 with s^2 + t^2 = 1 mod " + std::to_string(d));
  }
  const auto [s, t] = *st;
  return ConvolutionSpec(QuditSpace(d, n), GMatrix(s, t, t, -s, m));
}

ConvolutionSpec amplifier_spec(int d, int n) {
  require_convolution_dimension(d);
  const PrimeModulus m(d);
  const auto lm = find_amplifier_params(m);
  if (!lm) {
    throw Error(ErrorCode::NoSolution, "no l, m != 0 with l^2 - m^2 = 1 mod " + std::to_string(d));
  }
  const auto [l, mm] = *lm;
  return ConvolutionSpec(QuditSpace(d, n), GMatrix(l, -mm, -mm, l, m));
}

CMatrix key_unitary(const ConvolutionSpec& spec) {
  const auto& perm = spec.permutation();
  const auto D = static_cast<Eigen::Index>(perm.size());
  CMatrix U = CMatrix::Zero(D, D);
  for (Eigen::Index a = 0; a < D; ++a) U(perm[static_cast<std::size_t>(a)], a) = 1.0;
  return U;
}

DensityMatrix convolve(const DensityMatrix& rho, const DensityMatrix& sigma, const ConvolutionSpec& spec) {
  require_convolution_dimension(rho.d());
  if (!(rho.space() == spec.space()) || !(sigma.space() == spec.space())) {
    throw Error(ErrorCode::DimensionMismatch, "convolution inputs must match the spec's (d, n)");
  }
  const Eigen::Index half = spec.space().dim();
  const Eigen::Index D = half * half;
  const auto& perm = spec.permutation();
  const CMatrix joint = tensor(rho.matrix(), sigma.matrix());
  CMatrix moved(D, D);
  for (Eigen::Index a = 0; a < D; ++a)
    for (Eigen::Index b = 0; b < D; ++b)
      moved(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]) = joint(a, b);
  CMatrix out = partial_trace_B(moved, half, half);
  out = (out + out.adjoint()).eval() / 2.0;
  return DensityMatrix(spec.space(), std::move(out));
}

CharFunction convolve_characteristic(const CharFunction& xi_rho, const CharFunction& xi_sigma,
                                     const ConvolutionSpec& spec) {
  if (!(xi_rho.space() == spec.space()) || !(xi_sigma.space() == spec.space())) {
    throw Error(ErrorCode::DimensionMismatch, "characteristic tables must match the spec's (d, n)");
  }
  const PhaseSpace ps(spec.space());
  const auto& G = spec.G();
  const std::int64_t N = G.N();
  Eigen::VectorXcd out(ps.size());
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    const auto x = ps.point(i);
    out(i) = xi_rho(ps.scale(x, N * G.g11(), G.g00())) * xi_sigma(ps.scale(x, -N * G.g10(), G.g01()));
  }
  return CharFunction(spec.space(), std::move(out));
}

ConvolutionChannel::ConvolutionChannel(ConvolutionSpec spec_, DensityMatrix sigma_)
    : spec(std::move(spec_)), sigma(std::move(sigma_)) {
  if (!(sigma.space() == spec.space())) {
    throw Error(ErrorCode::DimensionMismatch, "environment state does not match the spec's (d, n)");
  }
}

DensityMatrix channel_apply(const ConvolutionChannel& chan, const DensityMatrix& rho) {
  return convolve(rho, chan.sigma, chan.spec);
}

StabilizerGroup partner_stabilizer_group(const StabilizerGroup& s2, const ConvolutionSpec& spec) {
  const auto& space = spec.space();
  validate_group(s2, space);
  if (s2.rank() != static_cast<std::size_t>(space.n)) {
    throw Error(ErrorCode::InvalidGroup, "partner groups are defined for maximal (r = n) groups");
  }
  const auto& G = spec.G();
  const auto& m = G.modulus();
  const std::int64_t p_factor = -static_cast<std::int64_t>(mod_inverse(G.g10(), m)) * G.g11();
  const std::int64_t q_factor = static_cast<std::int64_t>(mod_inverse(G.g01(), m)) * G.g00();
  const PhaseSpace ps(space);
  StabilizerGroup s1;
  for (const auto& g : s2.generators) {
    s1.generators.push_back(ps.scale(g, p_factor, q_factor));
    s1.phases.push_back(0);
  }
  validate_group(s1, space);
  return s1;
}

std::optional<std::pair<DensityMatrix, DensityMatrix>> minimal_output_pair(const StabilizerGroup& s2,
                                                                          const ConvolutionSpec& spec,
                                                                          double entropy_tol) {
  const auto& space = spec.space();
  const DensityMatrix sigma = msps_from_group(s2, space);
  StabilizerGroup s1 = partner_stabilizer_group(s2, spec);
  const int d = space.d;
  const std::size_t r = s1.rank();
  std::size_t total = 1;
  for (std::size_t k = 0; k < r; ++k) total *= static_cast<std::size_t>(d);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t k = 0; k < r; ++k) {
      s1.phases[k] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    DensityMatrix rho = msps_from_group(s1, space);
    if (von_neumann_entropy(convolve(rho, sigma, spec)) < entropy_tol) {
      return std::pair{std::move(rho), sigma};
    }
  }
  return std::nullopt;
}

HolevoBounds holevo_bounds(const ConvolutionChannel& chan) {
  const double capacity = chan.spec.space().n * std::log2(static_cast<double>(chan.spec.space().d.value()));
  return {capacity - von_neumann_entropy(mean_state(chan.sigma)), capacity - von_neumann_entropy(chan.sigma)};
}

double holevo_weyl_ensemble(const ConvolutionChannel& chan, const DensityMatrix& rho0) {
  const auto& space = chan.spec.space();
  if (!(rho0.space() == space)) throw Error(ErrorCode::DimensionMismatch, "input state does not match channel");
  const PhaseSpace ps(space);
  CMatrix average = CMatrix::Zero(space.dim(), space.dim());
  double h_min = std::numeric_limits<double>::infinity();
  double h_max = -h_min;
  double h_origin = 0.0;
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    const auto out = channel_apply(chan, conjugate(rho0, weyl_op(space, ps.point(i))));
    average += out.matrix();
    const double h = von_neumann_entropy(out);
    h_min = std::min(h_min, h);
    h_max = std::max(h_max, h);
    if (i == 0) h_origin = h;
  }
  average /= static_cast<double>(ps.size());
  const CMatrix mixed = CMatrix::Identity(space.dim(), space.dim()) / static_cast<double>(space.dim());
  const double avg_dev = (average - mixed).cwiseAbs().maxCoeff();
  if (avg_dev > 1e-9) {
    throw Error(ErrorCode::CovarianceViolation, "average output deviates from I/d^n by " + std::to_string(avg_dev));
  }
  if (h_max - h_min > 1e-9) {
    throw Error(ErrorCode::CovarianceViolation, "output entropies spread by " + std::to_string(h_max - h_min));
  }
  return space.n * std::log2(static_cast<double>(space.d.value())) - h_origin;
}

}  // namespace qconv
