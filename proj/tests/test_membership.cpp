#include <cmath>
#include <limits>
#include <random>

#include "bushdx/error.hpp"
#include "bushdx/membership.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bushdx;

TEST_CASE("hydrogen curves at published and derived points") {
  const auto& h2 = catalog_entry(GasId::hydrogen);
  CHECK(eval_mf(h2.dangerous, 5782) == 1.0);
  CHECK(eval_mf(h2.normal, 0) == 1.0);

  // Midpoint of the [135,150] ramp by direct interpolation.
  const double mid_normal = oracle::lerp_at(135, 1, 150, 0, 142.5);
  const double mid_elevated = oracle::lerp_at(135, 0, 150, 1, 142.5);
  REQUIRE(mid_normal == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(h2.normal, 142.5) == doctest::Approx(mid_normal).epsilon(1e-12));
  CHECK(eval_mf(h2.elevated, 142.5) == doctest::Approx(mid_elevated).epsilon(1e-12));
}

TEST_CASE("catalog has ten gases with declared units") {
  const auto& cat = gas_catalog();
  REQUIRE(cat.size() == 10);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(index(cat[i].gas) == i);
    const bool pct = cat[i].gas == GasId::nitrogen || cat[i].gas == GasId::oxygen;
    CHECK(cat[i].unit == (pct ? Unit::percent : Unit::ppm));
  }
}

TEST_CASE("TDCG elevated plateau spans [720, 4500]") {
  const auto& e = catalog_entry(GasId::tdcg).elevated;
  for (double x : {720.0, 1000.0, 2500.0, 4499.0, 4500.0}) CHECK(eval_mf(e, x) == 1.0);
  CHECK(eval_mf(e, 719.0) < 1.0);
  CHECK(eval_mf(e, 4501.0) < 1.0);
}

TEST_CASE("oxygen dangerous at 0.19 is half way up the ramp") {
  const double expected = 50.0 * 0.19 - 9.0;  // published slope form
  CHECK(expected == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eval_mf(catalog_entry(GasId::oxygen).dangerous, 0.19) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("catalog agrees with closed-form oracle everywhere") {
  std::mt19937_64 rng(7);
  for (GasId gas : kAllGases) {
    const auto& e = catalog_entry(gas);
    const auto& q = oracle::kQuads[index(gas)];
    std::uniform_real_distribution<double> dist(0.0, 1.3 * q.d);
    for (int k = 0; k < 2000; ++k) {
      const double x = dist(rng);
      const auto o = oracle::degrees(index(gas), x);
      CHECK(std::abs(eval_mf(e.normal, x) - o.n) <= 1e-12);
      CHECK(std::abs(eval_mf(e.elevated, x) - o.e) <= 1e-12);
      CHECK(std::abs(eval_mf(e.dangerous, x) - o.d) <= 1e-12);
    }
  }
}

TEST_CASE("vertex exactness at every published breakpoint") {
  for (GasId gas : kAllGases) {
    const auto& e = catalog_entry(gas);
    const auto& q = oracle::kQuads[index(gas)];
    CHECK(eval_mf(e.normal, q.a) == 1.0);
    CHECK(eval_mf(e.normal, q.b) == 0.0);
    CHECK(eval_mf(e.elevated, q.a) == 0.0);
    CHECK(eval_mf(e.elevated, q.b) == 1.0);
    CHECK(eval_mf(e.elevated, q.c) == 1.0);
    CHECK(eval_mf(e.elevated, q.d) == 0.0);
    CHECK(eval_mf(e.dangerous, q.c) == 0.0);
    CHECK(eval_mf(e.dangerous, q.d) == 1.0);
    CHECK(e.dangerous_onset() == q.d);
  }
}

TEST_CASE("partition of unity, range and monotonicity on random samples") {
  std::mt19937_64 rng(20060207);
  for (GasId gas : kAllGases) {
    const auto& e = catalog_entry(gas);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * e.dangerous_onset());
    for (int k = 0; k < 1000; ++k) {
      const double x = dist(rng);
      const double y = dist(rng);
      const double n = eval_mf(e.normal, x), el = eval_mf(e.elevated, x), d = eval_mf(e.dangerous, x);
      CHECK(std::abs(n + el + d - 1.0) <= 1e-12);
      for (double v : {n, el, d}) CHECK((v >= 0.0 && v <= 1.0));
      const double lo = std::min(x, y), hi = std::max(x, y);
      CHECK(eval_mf(e.normal, lo) >= eval_mf(e.normal, hi));
      CHECK(eval_mf(e.dangerous, lo) <= eval_mf(e.dangerous, hi));
    }
  }
}

TEST_CASE("evaluation clamps beyond the published domain") {
  const auto& co2 = catalog_entry(GasId::carbon_dioxide);
  CHECK(eval_mf(co2.dangerous, 1e9) == 1.0);
  CHECK(eval_mf(co2.normal, 1e9) == 0.0);
  CHECK(eval_mf(co2.elevated, 1e9) == 0.0);
}

TEST_CASE("domain errors for negative and non-finite arguments") {
  const auto& mf = catalog_entry(GasId::methane).normal;
  CHECK_THROWS_AS(eval_mf(mf, -1.0), DomainError);
  CHECK_THROWS_AS(eval_mf(mf, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(eval_mf(mf, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("shipped catalog validates clean") {
  const auto& cat = gas_catalog();
  CHECK(validate_catalog(cat).empty());
}

TEST_CASE("widened hydrogen normal ramp breaks partition of unity") {
  auto cat = gas_catalog();
  cat[index(GasId::hydrogen)].normal = MembershipFunction::shoulder_down(135, 160);
  const auto report = validate_catalog(cat);
  REQUIRE_FALSE(report.empty());
  bool found = false;
  for (const auto& v : report) {
    CHECK(v.gas == GasId::hydrogen);
    if (v.kind == CatalogViolation::Kind::partition_of_unity) {
      found = true;
      // Whole region where the two curves disagree, which includes (150,160).
      CHECK(v.x_lo > 135.0);
      CHECK(v.x_lo <= 150.0);
      CHECK(v.x_hi >= 159.9);
      CHECK(v.x_hi < 160.0);
    }
  }
  CHECK(found);

  // Direct evaluation inside (150,160): elevated is 1, normal still positive.
  CHECK(eval_mf(cat[0].normal, 155) + eval_mf(cat[0].elevated, 155) > 1.0);
}

TEST_CASE("decreasing breakpoint order is a structural violation") {
  auto cat = gas_catalog();
  auto& mf = cat[index(GasId::ethane)].elevated;
  std::swap(mf.breakpoints[1], mf.breakpoints[2]);
  mf.breakpoints[1].x = 40;  // 9, 40, 10, 35
  const auto report = validate_catalog(cat);
  REQUIRE(report.size() >= 1);
  CHECK(report[0].gas == GasId::ethane);
  CHECK(report[0].kind == CatalogViolation::Kind::structure);
}

TEST_CASE("missing gas and out-of-range degrees are flagged") {
  std::vector<GasCatalogEntry> cat(gas_catalog().begin(), gas_catalog().end() - 1);
  cat[0].dangerous.right_value = 1.5;
  const auto report = validate_catalog(cat);
  bool missing_tdcg = false, bad_degree = false;
  for (const auto& v : report) {
    missing_tdcg |= v.gas == GasId::tdcg && v.kind == CatalogViolation::Kind::missing_gas;
    bad_degree |= v.gas == GasId::hydrogen && v.kind == CatalogViolation::Kind::structure;
  }
  CHECK(missing_tdcg);
  CHECK(bad_degree);
}

TEST_CASE("monotonicity violation is reported") {
  auto cat = gas_catalog();
  // Normal with a bump: 1 -> 0 -> 0.5 -> 0
  cat[index(GasId::acetylene)].normal = {{{14, 1}, {15, 0}, {16, 0.5}, {17, 0}}, 1.0, 0.0};
  bool mono = false;
  for (const auto& v : validate_catalog(cat)) {
    mono |= v.gas == GasId::acetylene && v.kind == CatalogViolation::Kind::monotonicity;
  }
  CHECK(mono);
}

TEST_CASE("catalog JSON export") {
  const auto j = catalog_to_json(gas_catalog());
  REQUIRE(j.at("gases").size() == 10);
  const auto& o2 = j.at("gases").at(index(GasId::oxygen));
  CHECK(o2.at("gas") == "oxygen");
  CHECK(o2.at("unit") == "percent");
  const auto& pts = o2.at("levels").at("dangerous").at("breakpoints");
  REQUIRE(pts.size() == 2);
  CHECK(pts.at(0).at(0).get<double>() == 0.18);
  CHECK(pts.at(1).at(0).get<double>() == 0.20);
  CHECK(o2.at("levels").at("dangerous").at("right_value").get<double>() == 1.0);
}

TEST_CASE("name lookups") {
  CHECK(parse_gas("Carbon_Monoxide") == GasId::carbon_monoxide);
  CHECK_FALSE(parse_gas("xenon").has_value());
  CHECK(parse_level("DANGEROUS") == Level::dangerous);
  CHECK(to_string(GasId::tdcg) == "tdcg");
}
