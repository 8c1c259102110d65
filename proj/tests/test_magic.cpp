#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qconv/clifford.hpp"
#include "qconv/errors.hpp"
#include "qconv/magic.hpp"
#include "qconv/random.hpp"

using namespace qconv;

namespace {

DensityMatrix ket(const QuditSpace& s, int k) {
  CVector v = CVector::Zero(s.dim());
  v(k) = 1.0;
  return DensityMatrix::from_ket(s, v);
}

// Brute-force search for a zero-mean displacement.
bool some_displacement_zeroes_mean(const DensityMatrix& rho) {
  const PhaseSpace ps(rho.space());
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    const CMatrix W = weyl_op(rho.space(), ps.point(i));
    if (mean_vector(conjugate(rho, W)).is_zero()) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("magic") {
  TEST_CASE("mean state examples") {
    const QuditSpace s(3, 1);
    const auto mixed = DensityMatrix::maximally_mixed(s);
    CHECK((mean_state(mixed).matrix() - mixed.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const auto t_mean = mean_state(t_state());
    CHECK((t_mean.matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto rho = random_density(seed, QuditSpace(3, 2), 1 + static_cast<int>(seed % 9));
      const auto m = mean_state(rho);
      CHECK(is_msps(m).is_msps);
      CHECK((mean_state(m).matrix() - m.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("magic gap values") {
    CHECK(magic_gap(t_state()) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(log_magic_gap(t_state()) == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& rho : enumerate_msps(QuditSpace(3, 1))) {
      CHECK(magic_gap(rho) == 0.0);
      CHECK(log_magic_gap(rho) == 0.0);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rho = random_density(seed, QuditSpace(3, 1), 1 + static_cast<int>(seed % 3));
      const double mg = magic_gap(rho);
      CHECK(mg > 0.0);
      CHECK(mg <= 1.0);
      CHECK(log_magic_gap(rho) == doctest::Approx(-std::log2(1.0 - mg)).epsilon(1e-12));
    }
  }

  TEST_CASE("magic gap of a tensor product is the smaller gap") {
    const QuditSpace s(3, 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = random_density(mix_seed(seed, 1), s, 1 + static_cast<int>(seed % 3));
      const auto b = random_density(mix_seed(seed, 2), s, 1 + static_cast<int>((seed + 1) % 3));
      CHECK(magic_gap(tensor(a, b)) == doctest::Approx(std::min(magic_gap(a), magic_gap(b))).epsilon(1e-9));
    }
    const auto t = t_state();
    CHECK(magic_gap(tensor(t, t)) == doctest::Approx(magic_gap(t)).epsilon(1e-12));
  }

  TEST_CASE("magic gap upper bound") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto rho = random_density(seed, QuditSpace(seed % 2 ? 3 : 2, 1), 1 + static_cast<int>(seed % 2));
      const auto ub = magic_gap_upper_bound(rho);
      REQUIRE(ub);
      CHECK(magic_gap(rho) <= *ub + 1e-12);
    }
    CHECK_FALSE(magic_gap_upper_bound(DensityMatrix::zero_ket(QuditSpace(3, 1))));
  }

  TEST_CASE("mean vector") {
    const QuditSpace s(3, 1);
    CHECK(mean_vector(DensityMatrix::maximally_mixed(s)).k.empty());
    const auto one = ket(s, 1);
    const auto mv = mean_vector(one);
    REQUIRE(mv.k.size() == 1);
    CHECK(mv.generators[0] == PhasePoint{{1}, {0}});
    const cplx xi1 = char_function(one)(mv.generators[0]);
    CHECK(std::abs(xi1 - std::polar(1.0, 2 * std::numbers::pi * mv.k[0] / 3)) < 1e-9);
    CHECK(mv.k[0] == 2);
    CHECK(mean_vector(DensityMatrix::zero_ket(s)).is_zero());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto rho = random_density(seed, QuditSpace(3, 2), 2);
      const auto v = mean_vector(rho);
      for (std::size_t i = 0; i < v.k.size(); ++i) {
        const cplx expect = std::polar(1.0, 2 * std::numbers::pi * v.k[i] / 3);
        CHECK(std::abs(char_function(rho)(v.generators[i]) - expect) < 1e-9);
      }
    }
  }

  TEST_CASE("zero-mean displacement") {
    const QuditSpace s(3, 1);
    const auto zero = DensityMatrix::zero_ket(s);
    const auto same = make_zero_mean(zero);
    CHECK(same.displacement.is_zero());
    CHECK((same.state.matrix() - zero.matrix()).cwiseAbs().maxCoeff() < 1e-12);

    const auto moved = make_zero_mean(ket(s, 1));
    CHECK(moved.displacement.p == ZVector{0});
    CHECK((moved.state.matrix() - zero.matrix()).cwiseAbs().maxCoeff() < 1e-12);

    for (int d : {3, 5, 7}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const QuditSpace sp(d, 1);
        for (const auto& rho : {random_density(seed, sp, 1), enumerate_pure_stabilizers(sp)[seed]}) {
          CHECK(some_displacement_zeroes_mean(rho));
          const auto zm = make_zero_mean(rho);
          CHECK(mean_vector(zm.state).is_zero());
          const CMatrix W = weyl_op(sp, zm.displacement);
          CHECK((conjugate(rho, W).matrix() - zm.state.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
    const auto two = make_zero_mean(msps_from_group(
        StabilizerGroup{{PhasePoint{{1, 1}, {0, 0}}, PhasePoint{{0, 0}, {1, 2}}}, {2, 1}}, QuditSpace(3, 2)));
    CHECK(mean_vector(two.state).is_zero());
  }

  TEST_CASE("Clifford invariance of the magic gap") {
    for (int d : {2, 3}) {
      const QuditSpace s(d, 1);
      Rng rng(static_cast<std::uint64_t>(d));
      for (int t = 0; t < 20; ++t) {
        const auto rho = random_density(mix_seed(d, t), s, 1 + t % d);
        const CMatrix U = random_clifford(rng, s, 8);
        CHECK(std::abs(magic_gap(conjugate(rho, U)) - magic_gap(rho)) < 1e-9);
      }
    }
  }

  TEST_CASE("Clifford+T circuits") {
    for (int n : {1, 2}) {
      const QuditSpace s(2, n);
      CHECK(is_clifford(clifford_t_circuit(3, n, 0), s));
      CHECK((clifford_t_circuit(3, n, 2) - clifford_t_circuit(3, n, 2)).cwiseAbs().maxCoeff() == 0.0);
      CHECK(unitarity_defect(clifford_t_circuit(5, n, 3)) < 1e-12);
    }
    const auto out = conjugate(DensityMatrix::zero_ket(QuditSpace(2, 1)), clifford_t_circuit(11, 1, 1));
    CHECK(log_magic_gap(out) <= 0.5 + 1e-9);
    CHECK_THROWS_AS(clifford_t_circuit(1, 3, 1), Error);
  }
}
