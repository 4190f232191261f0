#include <random>

#include "bushdx/error.hpp"
#include "bushdx/fuzzifier.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace bushdx;

TEST_CASE("compute_tdcg") {
  CHECK(compute_tdcg(fixtures::published_bushing()) == 6090.0);
  CHECK(compute_tdcg(fixtures::zero_reading()) == 0.0);

  GasReading r = fixtures::zero_reading();
  r.h2 = 100, r.ch4 = 10, r.c2h6 = 1, r.c2h4 = 1, r.c2h2 = 1, r.co = 10;
  r.co2 = 5000, r.n2 = 3, r.o2 = 0.1;  // not combustibles
  const double oracle_sum = 100 + 10 + 1 + 1 + 1 + 10;
  CHECK(compute_tdcg(r) == oracle_sum);
  CHECK(oracle_sum == 123.0);
}

TEST_CASE("supplied TDCG acts as a checksum") {
  auto r = fixtures::published_bushing();
  r.tdcg = 6090.4;
  CHECK(compute_tdcg(r) == 6090.0);
  r.tdcg = 6100;
  try {
    compute_tdcg(r);
    FAIL("expected ConsistencyError");
  } catch (const ConsistencyError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("6100") != std::string::npos);
    CHECK(msg.find("6090") != std::string::npos);
  }
}

TEST_CASE("invalid readings raise domain errors") {
  auto r = fixtures::published_bushing();
  r.co2 = -1;
  CHECK_THROWS_AS(compute_tdcg(r), DomainError);
  CHECK_THROWS_AS(fuzzify_bushing(r), DomainError);
  r = fixtures::published_bushing();
  r.o2 = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(fuzzify_bushing(r), DomainError);
  CHECK_THROWS_AS(fuzzify_gas(GasId::ethane, -0.5), DomainError);
}

TEST_CASE("fuzzify_gas examples") {
  CHECK(fuzzify_gas(GasId::ethane, 22) == LevelDegrees{0, 1, 0});
  CHECK(fuzzify_gas(GasId::nitrogen, 4.58) == LevelDegrees{0, 1, 0});
  const auto m = fuzzify_gas(GasId::methane, 24);
  const auto o = oracle::degrees(index(GasId::methane), 24);
  CHECK(m.normal == doctest::Approx(o.n).epsilon(1e-12));
  CHECK(m.elevated == doctest::Approx(o.e).epsilon(1e-12));
  CHECK(m.dangerous == 0.0);
  CHECK(o.n == doctest::Approx(0.5));
}

TEST_CASE("published bushing reproduces the membership table exactly") {
  const auto t = fuzzify_bushing(fixtures::published_bushing());
  CHECK(t[GasId::acetylene] == LevelDegrees{1, 0, 0});
  CHECK(t[GasId::carbon_dioxide] == LevelDegrees{1, 0, 0});
  CHECK(t[GasId::carbon_monoxide] == LevelDegrees{1, 0, 0});
  CHECK(t[GasId::ethane] == LevelDegrees{0, 1, 0});
  CHECK(t[GasId::ethylene] == LevelDegrees{1, 0, 0});
  CHECK(t[GasId::hydrogen] == LevelDegrees{0, 0, 1});
  CHECK(t[GasId::methane] == LevelDegrees{0, 0, 1});
  CHECK(t[GasId::nitrogen] == LevelDegrees{0, 1, 0});
  CHECK(t[GasId::oxygen] == LevelDegrees{0, 0, 1});
  CHECK(t[GasId::tdcg] == LevelDegrees{0, 0, 1});
}

TEST_CASE("all-zero reading sits on every normal plateau") {
  const auto t = fuzzify_bushing(fixtures::zero_reading());
  for (GasId gas : kAllGases) CHECK(t[gas] == LevelDegrees{1, 0, 0});
}

TEST_CASE("every gas at its dangerous onset is fully dangerous") {
  GasReading r;
  r.bushing_id = "onset";
  // Combustibles at onset give TDCG = 2285 (< 5000), so TDCG is checked separately.
  r.h2 = 1000, r.ch4 = 80, r.c2h6 = 35, r.c2h4 = 100, r.c2h2 = 70, r.co = 1000;
  r.co2 = 15000, r.n2 = 10, r.o2 = 0.20;
  const auto t = fuzzify_bushing(r);
  for (GasId gas : kAllGases) {
    if (gas == GasId::tdcg) continue;
    const auto o = oracle::degrees(index(gas), concentration(r, gas));
    REQUIRE(o.d == 1.0);
    CHECK(t[gas] == LevelDegrees{0, 0, 1});
  }
  CHECK(fuzzify_gas(GasId::tdcg, 5000) == LevelDegrees{0, 0, 1});
  r.h2 = 1000 + (5000 - 2285);
  CHECK(fuzzify_bushing(r)[GasId::tdcg] == LevelDegrees{0, 0, 1});
}

TEST_CASE("fuzzification is deterministic and partitions unity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    GasReading r;
    r.bushing_id = "rand";
    r.h2 = 2000 * u(rng), r.ch4 = 200 * u(rng), r.c2h6 = 80 * u(rng), r.c2h4 = 200 * u(rng);
    r.c2h2 = 150 * u(rng), r.co = 2000 * u(rng), r.co2 = 30000 * u(rng), r.n2 = 20 * u(rng);
    r.o2 = 0.4 * u(rng);
    const auto a = fuzzify_bushing(r);
    CHECK(a == fuzzify_bushing(r));
    for (GasId gas : kAllGases) {
      const auto& d = a[gas];
      CHECK(std::abs(d.normal + d.elevated + d.dangerous - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("membership table JSON keyed by gas and level") {
  const auto t = fuzzify_bushing(fixtures::published_bushing());
  const auto j = to_json(t);
  CHECK(j.size() == 10);
  CHECK(j.at("hydrogen").at("dangerous").get<double>() == 1.0);
  CHECK(j.at("ethane").at("elevated").get<double>() == 1.0);
  CHECK(membership_table_from_json(j) == t);
  auto broken = j;
  broken.erase("oxygen");
  CHECK_THROWS_AS(membership_table_from_json(broken), StructuralError);
}
