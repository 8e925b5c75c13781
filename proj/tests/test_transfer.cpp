#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gibbs/error.hpp"
#include "gibbs/transfer.hpp"
#include "support.hpp"

using namespace gibbs;
using testing_support::fixtures;

TEST_CASE("transfer matrix follows the preimage convention") {
  const auto phi = testing_support::nonpos_potential();
  const auto m = build_transfer_matrix(full_shift(2), phi);
  REQUIRE(m.level == 1);
  REQUIRE(m.size() == 2);
  // Row u, column v: weight of the preimage word v_0 u.
  CHECK(m.entries(1, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(m.entries(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(m.entries(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(m.entries(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(m.position(Word::parse("1")) == 1);

  const auto gm = build_transfer_matrix(golden_mean_shift(), LocallyConstantPotential::constant(
                                                                 golden_mean_shift(), 0.0));
  CHECK(gm.entries(0, 1) == 1.0);
  CHECK(gm.entries(1, 1) == 0.0);
}

TEST_CASE("matrix powers of the transfer matrix match preimage enumeration") {
  for (const auto& f : fixtures()) {
    const auto m = build_transfer_matrix(f.sys, f.phi);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.size());
    for (int n = 1; n <= 6; ++n) {
      v = m.entries * v;
      const auto brute = testing_support::brute_force_iterate(f.sys, f.phi, m.level, n);
      REQUIRE(brute.size() == static_cast<std::size_t>(m.size()));
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        CAPTURE(f.name);
        CAPTURE(n);
        CHECK(std::abs(v(i) - brute[static_cast<std::size_t>(i)]) <=
              1e-12 * brute[static_cast<std::size_t>(i)]);
      }
    }
  }
}

TEST_CASE("pressure agrees with a dense eigensolver") {
  for (const auto& f : fixtures()) {
    const double p = pressure(f.sys, f.phi);
    const auto m = build_transfer_matrix(f.sys, f.phi);
    CAPTURE(f.name);
    CHECK(p == doctest::Approx(std::log(testing_support::spectral_radius(m.entries)))
                   .epsilon(1e-11));
    if (f.phi.depth() <= 2)
      CHECK(p == doctest::Approx(testing_support::oracle_pressure(f.sys, f.phi)).epsilon(1e-11));
  }
}

TEST_CASE("closed forms") {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto gm = golden_mean_shift();
  // Accuracy is bounded by the 1e-12 eigen-residual tolerance.
  CHECK(pressure(gm, LocallyConstantPotential::constant(gm, 0.0)) ==
        doctest::Approx(std::log(golden)).epsilon(1e-12));
  const auto f2 = full_shift(2);
  const std::vector<double> w{0.3, -0.7};
  CHECK(pressure(f2, LocallyConstantPotential::letter_weights(f2, w)) ==
        doctest::Approx(std::log(std::exp(0.3) + std::exp(-0.7))).epsilon(1e-12));
  // The nonpositive example at beta = -1 has pressure exactly zero.
  CHECK(std::abs(pressure(f2, testing_support::nonpos_potential())) < 1e-14);
}

TEST_CASE("large potentials do not overflow") {
  const auto f2 = full_shift(2);
  const std::vector<double> w{1000.0, 0.0};
  const double p = pressure(f2, LocallyConstantPotential::letter_weights(f2, w));
  CHECK(p == doctest::Approx(1000.0 + std::log1p(std::exp(-1000.0))));
  const std::vector<double> neg{-2000.0, -2001.0};
  CHECK(pressure(f2, LocallyConstantPotential::letter_weights(f2, neg)) ==
        doctest::Approx(-2000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-14));
}

TEST_CASE("RPF triple is normalized and accurate") {
  for (const auto& f : fixtures()) {
    const auto m = build_transfer_matrix(f.sys, f.phi);
    const auto rpf = rpf_eigendata(m);
    CAPTURE(f.name);
    CHECK(rpf.nu.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rpf.nu.dot(rpf.h) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rpf.h.minCoeff() > 0.0);
    CHECK(rpf.nu.minCoeff() > 0.0);
    CHECK(rpf.right_residual <= 1e-12);
    CHECK(rpf.left_residual <= 1e-12);
    const double scale = rpf.lambda * rpf.h.cwiseAbs().maxCoeff();
    CHECK((m.entries * rpf.h - rpf.lambda * rpf.h).cwiseAbs().maxCoeff() <= 1e-11 * scale);
    const Eigen::RowVectorXd left = rpf.nu.transpose() * m.entries;
    CHECK((left - rpf.lambda * rpf.nu.transpose()).cwiseAbs().maxCoeff() <=
          1e-11 * rpf.lambda * rpf.nu.maxCoeff());
  }
}

TEST_CASE("nearly degenerate spectra still converge") {
  // -beta phi for the nonpositive example at moderate beta has eigenvalues
  // 1 +- sqrt(c) with c tiny, so plain power iteration would crawl.
  const auto phi = testing_support::nonpos_potential();
  for (double beta : {13.5, 20.5, 37.5, 50.0, -50.0}) {
    const auto m = build_transfer_matrix(full_shift(2), phi * -beta);
    const auto rpf = rpf_eigendata(m);
    CAPTURE(beta);
    CHECK(std::log(rpf.lambda) ==
          doctest::Approx(std::log(testing_support::spectral_radius(m.entries))).epsilon(1e-12));
  }
}

TEST_CASE("pressure sandwich brackets the eigenvalue route and tightens") {
  for (const auto& f : fixtures()) {
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {2, 4, 8}) {
      const auto s = pressure_sandwich(f.sys, f.phi, n);
      CAPTURE(f.name);
      CHECK(s.lo <= s.pressure + 1e-12);
      CHECK(s.pressure <= s.hi + 1e-12);
      CHECK(s.width() <= previous + 1e-12);
      previous = s.width();
    }
  }
}

TEST_CASE("translation and monotonicity") {
  for (const auto& f : fixtures()) {
    const double p = pressure(f.sys, f.phi);
    CAPTURE(f.name);
    for (double c : {-3.0, 0.5, 7.0}) CHECK(pressure(f.sys, f.phi + c) == doctest::Approx(p + c));
    // Adding a nonnegative, somewhere positive function raises the pressure.
    std::vector<double> bump(static_cast<std::size_t>(f.sys.alphabet_size()), 0.0);
    bump.back() = 0.4;
    const auto bigger = f.phi + LocallyConstantPotential::letter_weights(f.sys, bump);
    CHECK(pressure(f.sys, bigger) > p);
  }
}

TEST_CASE("non-exact systems are rejected") {
  const auto sys = testing_support::period_two();
  const auto phi = LocallyConstantPotential::constant(sys, 1.0);
  CHECK_THROWS_AS(pressure(sys, phi), NotExactError);
  CHECK_THROWS_AS(pressure_sandwich(sys, phi, 4), NotExactError);
  CHECK_THROWS_AS(rpf_eigendata(build_transfer_matrix(sys, phi)), NotExactError);
}

TEST_CASE("cylinder measures") {
  for (const auto& f : fixtures()) {
    const auto m = build_transfer_matrix(f.sys, f.phi);
    const auto rpf = rpf_eigendata(m);
    const auto mu = cylinder_measure(f.sys, f.phi, rpf, 4);
    CAPTURE(f.name);
    CHECK(mu.masses.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.masses.minCoeff() > 0.0);

    const auto mu3 = mu.marginal(3);
    const auto direct3 = cylinder_measure(f.sys, f.phi, rpf, 3);
    CHECK(mu3.words == direct3.words);
    CHECK((mu3.masses - direct3.masses).cwiseAbs().maxCoeff() <= 1e-10);

    for (std::size_t i = 0; i < mu.words.size(); ++i) {
      const auto& u = mu.words[i];
      const double lhs = rpf.lambda * mu.masses(static_cast<Eigen::Index>(i));
      const double rhs = std::exp(evaluate(f.phi, u)) * direct3.mass(u.suffix_from(1));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * lhs);
    }
  }

  for (int n : {2, 3}) {
    const auto sys = full_shift(n);
    const auto phi = LocallyConstantPotential::constant(sys, 0.0);
    const auto rpf = rpf_eigendata(build_transfer_matrix(sys, phi));
    const auto mu = cylinder_measure(sys, phi, rpf, 4);
    for (Eigen::Index i = 0; i < mu.masses.size(); ++i)
      CHECK(mu.masses(i) == doctest::Approx(std::pow(n, -4.0)).epsilon(1e-12));
  }
  const auto gm = golden_mean_shift();
  const auto gm_phi = LocallyConstantPotential::constant(gm, 0.0);
  const auto mu = cylinder_measure(gm, gm_phi, rpf_eigendata(build_transfer_matrix(gm, gm_phi)), 3);
  CHECK(mu.mass(Word::parse("110")) == 0.0);
}
