#include <random>

#include "bushdx/defuzz.hpp"
#include "bushdx/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace bushdx;

TEST_CASE("output set coefficients") {
  CHECK(kOutputSets[0].coefficient() == 5.0);
  CHECK(kOutputSets[1].coefficient() == 60.0);
  CHECK(kOutputSets[2].coefficient() == 90.0);
  for (std::size_t i = 0; i < kOutputSets.size(); ++i) {
    CHECK(kOutputSets[i].peak_lo <= kOutputSets[i].peak_hi);
    if (i > 0) CHECK(kOutputSets[i - 1].peak_hi < kOutputSets[i].peak_lo);
  }
}

TEST_CASE("crisp_rank examples") {
  CHECK(crisp_rank({1, 1, 1}) == doctest::Approx(155.0 / 3.0).epsilon(1e-15));
  CHECK(crisp_rank({1, 1, 1}) == doctest::Approx(51.666666667).epsilon(1e-9));
  CHECK(crisp_rank({1, 0, 0}) == 5.0);
  CHECK(crisp_rank({1, 1, 0}) == 32.5);
  CHECK(crisp_rank({0, 1, 0}) == 60.0);
  CHECK(crisp_rank({0, 0, 1}) == 90.0);
}

TEST_CASE("crisp_rank agrees with a sampled weighted average of maxima") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const AggregatedMembership m{u(rng), u(rng), u(rng)};
    CHECK(crisp_rank(m) == doctest::Approx(oracle::rank_by_sampling(m.low, m.medium, m.high)).epsilon(1e-9));
  }
}

TEST_CASE("crisp_rank errors") {
  CHECK_THROWS_AS(crisp_rank({0, 0, 0}), DomainError);
  CHECK_THROWS_AS(crisp_rank({-0.1, 1, 0}), DomainError);
  CHECK_THROWS_AS(crisp_rank({std::numeric_limits<double>::quiet_NaN(), 1, 0}), DomainError);
}

TEST_CASE("decide thresholds and boundaries") {
  CHECK(decide(155.0 / 3.0) == Decision::reject);
  CHECK(decide(5) == Decision::accept);
  CHECK(decide(20) == Decision::monitor);
  CHECK(decide(30) == Decision::monitor);
  CHECK(decide(10) == Decision::monitor);
  CHECK(decide(std::nextafter(30.0, 31.0)) == Decision::reject);
  CHECK(decide(std::nextafter(10.0, 0.0)) == Decision::accept);
  CHECK(decide(0) == Decision::accept);
  CHECK(decide(100) == Decision::reject);
  CHECK_THROWS_AS(decide(-1), DomainError);
  CHECK_THROWS_AS(decide(100.5), DomainError);
  CHECK_THROWS_AS(decide(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("scale invariance, bounds and monotonicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 10.0);
  for (int k = 0; k < 500; ++k) {
    AggregatedMembership m{u(rng), u(rng), u(rng)};
    if (m.low + m.medium + m.high == 0.0) continue;
    const double r = crisp_rank(m);
    const double s = scale(rng);
    CHECK(std::abs(crisp_rank({s * m.low, s * m.medium, s * m.high}) - r) <= 1e-12);
    CHECK((r >= 5.0 && r <= 90.0));
    AggregatedMembership more = m;
    more.high += 0.5 * u(rng);
    CHECK(crisp_rank(more) >= r - 1e-12);
    CHECK(decide(r) == decide(r));
  }
}

TEST_CASE("assess: published bushing") {
  const auto a = assess(fixtures::published_bushing(), default_ruleset());
  CHECK(a.tdcg == 6090.0);
  CHECK(a.aggregated == AggregatedMembership{1, 1, 1});
  CHECK(std::abs(a.rank - 51.666667) <= 1e-6);
  CHECK(a.decision == Decision::reject);
}

TEST_CASE("assess: all-zero reading") {
  const auto a = assess(fixtures::zero_reading(), default_ruleset());
  const auto want = oracle::default_rules(oracle::degrees_of({}));
  CHECK(want.low == 1.0);
  CHECK(want.medium == 0.0);
  CHECK(want.high == 0.0);
  CHECK(a.rank == 5.0);
  CHECK(a.decision == Decision::accept);
}

TEST_CASE("assess: every combustible elevated with dangerous oxygen") {
  GasReading r;
  r.bushing_id = "synthetic-mr";
  // Each value sits inside its elevated plateau (see oracle quads).
  r.h2 = 500, r.ch4 = 50, r.c2h6 = 20, r.c2h4 = 50, r.c2h2 = 30, r.co = 700;
  r.co2 = 12000, r.n2 = 5, r.o2 = 0.25;
  const std::array<double, 10> v = {r.h2, r.ch4, r.c2h6, r.c2h4, r.c2h2, r.co, r.n2, r.o2, r.co2,
                                    r.h2 + r.ch4 + r.c2h6 + r.c2h4 + r.c2h2 + r.co};
  const auto o = oracle::degrees_of(v);
  for (int g : {0, 1, 2, 3, 4, 5, 8, 9}) CHECK(o[g].e == 1.0);
  CHECK(o[7].d == 1.0);
  const auto want = oracle::default_rules(o);
  CHECK(want.low == 0.0);
  CHECK(want.medium == 1.0);
  CHECK(want.high == 0.0);

  const auto a = assess(r, default_ruleset());
  CHECK(a.aggregated == AggregatedMembership{0, 1, 0});
  CHECK(a.rank == 60.0);
  CHECK(a.decision == Decision::reject);
}

TEST_CASE("assess: errors propagate") {
  CHECK_THROWS_AS(assess(fixtures::zero_reading(), RuleSet{"empty", {}}), StructuralError);
  const auto only_high = parse_rules("IF hydrogen IS dangerous THEN risk IS high");
  CHECK_THROWS_AS(assess(fixtures::zero_reading(), only_high), DomainError);
  auto bad = fixtures::published_bushing();
  bad.tdcg = 1.0;
  CHECK_THROWS_AS(assess(bad, default_ruleset()), ConsistencyError);
}
