#include <doctest.h>

#include <set>

#include "qconv/errors.hpp"
#include "qconv/magic.hpp"
#include "qconv/states.hpp"

using namespace qconv;

TEST_SUITE("states") {
  TEST_CASE("validation reports deviations") {
    const QuditSpace s(3, 1);
    CMatrix bad = CMatrix::Identity(3, 3) / 2.0;
    try {
      DensityMatrix rho(s, bad);
      FAIL("trace 1.5 accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidState);
      CHECK(std::string(e.what()).find("trace defect") != std::string::npos);
    }
    CMatrix neg = CMatrix::Zero(3, 3);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(s, neg), Error);
    CHECK_THROWS_AS(DensityMatrix(s, CMatrix::Identity(2, 2) / 2.0), Error);
  }

  TEST_CASE("random states") {
    const QuditSpace s(3, 2);
    const auto full = random_density(4, s, 9);
    CHECK(herm_eig(full.matrix()).eigenvalues.minCoeff() > 0.0);
    const auto pure = random_density(4, s, 1);
    CHECK(pure.purity() == doctest::Approx(1.0).epsilon(1e-10));
    const auto again = random_density(4, s, 1);
    CHECK((pure.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((random_density(5, s, 1).matrix() - pure.matrix()).cwiseAbs().maxCoeff() > 1e-3);
    CHECK_THROWS_AS(random_density(1, s, 0), Error);
    CHECK_THROWS_AS(random_density(1, s, 10), Error);
    const auto defects = measure_state_defects(full.matrix());
    CHECK(defects.acceptable());
  }

  TEST_CASE("MSPS construction") {
    const QuditSpace s1(3, 1), s2(3, 2);
    const auto empty = msps_from_group(StabilizerGroup{}, s2);
    CHECK((empty.matrix() - CMatrix::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff() < 1e-12);

    const auto z0 = msps_from_group(StabilizerGroup{{PhasePoint{{1}, {0}}}, {0}}, s1);
    CHECK((z0.matrix() - DensityMatrix::zero_ket(s1).matrix()).cwiseAbs().maxCoeff() < 1e-12);

    const auto z1 = msps_from_group(StabilizerGroup{{PhasePoint{{1, 0}, {0, 0}}}, {0}}, s2);
    CMatrix expected = tensor(DensityMatrix::zero_ket(s1).matrix(), CMatrix(CMatrix::Identity(3, 3))) / 3.0;
    CHECK((z1.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);

    StabilizerGroup noncommuting{{PhasePoint{{1, 0}, {0, 0}}, PhasePoint{{0, 0}, {1, 0}}}, {0, 0}};
    CHECK_THROWS_AS(msps_from_group(noncommuting, s2), Error);
    StabilizerGroup dependent{{PhasePoint{{1, 0}, {0, 0}}, PhasePoint{{2, 0}, {0, 0}}}, {0, 0}};
    CHECK_THROWS_AS(msps_from_group(dependent, s2), Error);
  }

  TEST_CASE("MSPS detection") {
    const QuditSpace s1(3, 1);
    const auto mixed = is_msps(DensityMatrix::maximally_mixed(s1));
    CHECK(mixed.is_msps);
    CHECK(mixed.group->rank() == 0);
    const auto zero = is_msps(DensityMatrix::zero_ket(s1));
    CHECK(zero.is_msps);
    REQUIRE(zero.group->rank() == 1);
    CHECK(zero.group->generators[0] == PhasePoint{{1}, {0}});
    CHECK(zero.group->phases[0] == 0);
    CHECK_FALSE(is_msps(t_state()).is_msps);
    CHECK_FALSE(is_msps(random_density(3, s1, 2)).is_msps);
  }

  TEST_CASE("detection recovers the generating group") {
    const QuditSpace s2(3, 2);
    const StabilizerGroup g{{PhasePoint{{1, 0}, {0, 2}}, PhasePoint{{0, 1}, {2, 0}}}, {1, 2}};
    const auto rho = msps_from_group(g, s2);
    const auto det = is_msps(rho);
    REQUIRE(det.is_msps);
    CHECK(det.group->rank() == 2);
    const auto again = msps_from_group(*det.group, s2);
    CHECK((again.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("qubit pairs need the cocycle in the character test") {
    // Bell state: stabilized by XX and ZZ, so -YY is in the group.
    const QuditSpace s(2, 2);
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::from_ket(s, bell);
    CHECK(is_msps(rho).is_msps);
    CHECK(is_msps(msps_from_group(*is_msps(rho).group, s)).is_msps);
  }

  TEST_CASE("enumeration") {
    for (int d : {2, 3, 5}) {
      const QuditSpace s(d, 1);
      const auto all = enumerate_msps(s);
      CHECK(all.size() == static_cast<std::size_t>(d * d + d + 1));
      const auto pure = enumerate_pure_stabilizers(s);
      CHECK(pure.size() == static_cast<std::size_t>(d * (d + 1)));
      for (const auto& rho : all) CHECK(is_msps(rho).is_msps);
      for (const auto& rho : pure) {
        CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
        const auto xi = char_function(rho);
        int unit = 0;
        for (Eigen::Index i = 0; i < xi.size(); ++i)
          if (std::abs(std::abs(xi[i]) - 1.0) < 1e-9) ++unit;
        CHECK(unit == d);
      }
      for (std::size_t a = 0; a < pure.size(); ++a)
        for (std::size_t b = a + 1; b < pure.size(); ++b)
          CHECK((pure[a].matrix() - pure[b].matrix()).cwiseAbs().maxCoeff() > 1e-3);
    }
    CHECK_THROWS_AS(enumerate_msps(QuditSpace(3, 2)), Error);
  }

  TEST_CASE("qubit stabilizers are the Pauli eigenstates") {
    const auto pure = enumerate_pure_stabilizers(QuditSpace(2, 1));
    CMatrix X(2, 2), Y(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Y << 0, cplx(0, -1), cplx(0, 1), 0;
    Z << 1, 0, 0, -1;
    std::multiset<int> bloch;
    for (const auto& rho : pure) {
      const double x = (rho.matrix() * X).trace().real(), y = (rho.matrix() * Y).trace().real(),
                   z = (rho.matrix() * Z).trace().real();
      CHECK(std::abs(x) + std::abs(y) + std::abs(z) == doctest::Approx(1.0));
      bloch.insert(std::abs(x) > 0.5 ? (x > 0 ? 1 : -1) : std::abs(y) > 0.5 ? (y > 0 ? 2 : -2) : (z > 0 ? 3 : -3));
    }
    CHECK(bloch == std::multiset<int>{-3, -2, -1, 1, 2, 3});
  }

  TEST_CASE("mean state is idempotent on MSPS") {
    for (const auto& rho : enumerate_msps(QuditSpace(3, 1))) {
      CHECK((mean_state(rho).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}
