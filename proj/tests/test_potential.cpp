#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <random>

#include "gibbs/error.hpp"
#include "gibbs/potential.hpp"
#include "support.hpp"

using namespace gibbs;
using testing_support::fixtures;

TEST_CASE("table domain must be exactly the admissible words") {
  const auto gm = golden_mean_shift();
  std::map<Word, double> values{
      {Word::parse("00"), 1.0}, {Word::parse("01"), 2.0}, {Word::parse("10"), 3.0}};
  const auto phi = LocallyConstantPotential::from_table(gm, 2, values);
  CHECK(phi.depth() == 2);
  CHECK(phi.min_value() == 1.0);
  CHECK(phi.max_value() == 3.0);
  CHECK(evaluate(phi, Word::parse("0100")) == 2.0);
  CHECK_THROWS_AS(evaluate(phi, Word::parse("11")), DomainError);
  CHECK_THROWS_AS(evaluate(phi, Word::parse("1")), DomainError);

  auto extra = values;
  extra[Word::parse("11")] = 0.0;
  try {
    LocallyConstantPotential::from_table(gm, 2, extra);
    FAIL("accepted an inadmissible word");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("11") != std::string::npos);
  }

  auto missing = values;
  missing.erase(Word::parse("10"));
  CHECK_THROWS_AS(LocallyConstantPotential::from_table(gm, 2, missing), DomainError);

  std::map<Word, double> bad_value{
      {Word::parse("00"), 1.0}, {Word::parse("01"), 2.0},
      {Word::parse("10"), std::numeric_limits<double>::infinity()}};
  CHECK_THROWS_AS(LocallyConstantPotential::from_table(gm, 2, bad_value), DomainError);
}

TEST_CASE("entries round-trip through from_table") {
  for (const auto& f : fixtures()) {
    std::map<Word, double> table;
    for (const auto& [w, v] : f.phi.entries()) table[w] = v;
    CHECK(LocallyConstantPotential::from_table(f.sys, f.phi.depth(), table) == f.phi);
  }
}

TEST_CASE("arithmetic and depth alignment") {
  const auto f2 = full_shift(2);
  const std::vector<double> w{1.0, -2.0};
  const auto a = LocallyConstantPotential::letter_weights(f2, w);
  const auto b = testing_support::nonpos_potential();
  const auto sum = a + b;
  CHECK(sum.depth() == 2);
  for (const auto& [word, v] : sum.entries())
    CHECK(v == doctest::Approx(evaluate(a, word) + evaluate(b, word)).epsilon(1e-15));
  CHECK((a * 2.0).max_value() == 2.0);
  CHECK((a + 0.5).min_value() == -1.5);
  CHECK((-a).max_value() == 2.0);

  const auto deep = b.extended(4);
  CHECK(deep.depth() == 4);
  for (const auto& [word, v] : deep.entries()) CHECK(v == evaluate(b, word.prefix(2)));
}

TEST_CASE("Birkhoff sums by hand") {
  const auto phi = testing_support::nonpos_potential();
  const double l43 = std::log(4.0 / 3.0);
  const double l3 = std::log(3.0);
  CHECK(birkhoff_sum(phi, PeriodicOrbit{Word::parse("0")}) == doctest::Approx(-l3));
  CHECK(birkhoff_sum(phi, PeriodicOrbit{Word::parse("01")}) == doctest::Approx(l43 - l3));
  CHECK(birkhoff_sum(phi, PeriodicOrbit{Word::parse("011")}) ==
        doctest::Approx(l43 - 2.0 * l3));
}

TEST_CASE("coboundaries have vanishing Birkhoff sums on every orbit") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& sys : {full_shift(2), golden_mean_shift(), testing_support::three_state()}) {
    for (int depth = 1; depth <= 2; ++depth) {
      const auto psi =
          LocallyConstantPotential::from_function(sys, depth, [&](const Word&) { return u(rng); });
      const auto phi = coboundary(psi);
      CHECK(phi.depth() == depth + 1);
      for (const auto& orbit : periodic_orbits(sys, 8))
        CHECK(std::abs(birkhoff_sum(phi, orbit)) < 1e-12);
    }
  }
}

TEST_CASE("cycle means agree with enumerated periodic orbits") {
  for (const auto& f : fixtures()) {
    // Karp's extremes are attained on simple cycles of the level graph,
    // whose length is at most the number of level words.
    const int level = std::max(f.phi.depth() - 1, 1);
    const int vertices = static_cast<int>(admissible_words(f.sys, level).size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& orbit : periodic_orbits(f.sys, vertices)) {
      const double mean = birkhoff_sum(f.phi, orbit) / orbit.period();
      lo = std::min(lo, mean);
      hi = std::max(hi, mean);
    }
    const auto range = cycle_mean_range(f.phi);
    CAPTURE(f.name);
    CHECK(range.min_mean == doctest::Approx(lo).epsilon(1e-12));
    CHECK(range.max_mean == doctest::Approx(hi).epsilon(1e-12));
  }
}

TEST_CASE("Bowen constant is exact for locally constant potentials") {
  for (const auto& f : fixtures()) {
    const auto bc = bowen_constant(f.phi);
    CHECK(bc.c == 0.0);
    CHECK(bc.delta == std::ldexp(1.0, -(f.phi.depth() + 1)));
    // Points within delta share depth+1 leading symbols along the orbit
    // segment, so the Birkhoff sums coincide exactly.
    const int n = 5;
    const int len = n + f.phi.depth() + 3;
    const auto shared = static_cast<std::size_t>(n + f.phi.depth());
    std::map<Word, double> by_prefix;
    for (const auto& x : admissible_words(f.sys, len)) {
      double sx = 0.0;
      for (int i = 0; i < n; ++i) sx += f.phi(x.symbols().subspan(static_cast<std::size_t>(i)));
      const auto [it, fresh] = by_prefix.emplace(x.prefix(shared), sx);
      if (!fresh) CHECK(it->second == sx);
    }
  }
}
