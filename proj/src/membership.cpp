#include "bushdx/membership.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bushdx/error.hpp"

namespace bushdx {

namespace {

constexpr std::array<std::string_view, kGasCount> kGasNames = {
    "hydrogen", "methane", "ethane",  "ethylene",       "acetylene",
    "carbon_monoxide", "nitrogen", "oxygen", "carbon_dioxide", "tdcg",
};

constexpr std::array<std::string_view, 3> kLevelNames = {"normal", "elevated", "dangerous"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

MembershipFunction MembershipFunction::shoulder_down(double plateau_end, double zero_at) {
  return {{{plateau_end, 1.0}, {zero_at, 0.0}}, 1.0, 0.0};
}

MembershipFunction MembershipFunction::shoulder_up(double rise_start, double plateau_start) {
  return {{{rise_start, 0.0}, {plateau_start, 1.0}}, 0.0, 1.0};
}

MembershipFunction MembershipFunction::trapezoid(double a, double b, double c, double d) {
  return {{{a, 0.0}, {b, 1.0}, {c, 1.0}, {d, 0.0}}, 0.0, 0.0};
}

std::vector<std::string> MembershipFunction::structural_problems() const {
  std::vector<std::string> problems;
  auto in_unit = [](double y) { return std::isfinite(y) && y >= 0.0 && y <= 1.0; };
  if (breakpoints.empty()) problems.emplace_back("no breakpoints");
  if (!in_unit(left_value)) problems.emplace_back("left value outside [0,1]");
  if (!in_unit(right_value)) problems.emplace_back("right value outside [0,1]");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& v = breakpoints[i];
    if (!std::isfinite(v.x)) {
      problems.push_back("breakpoint " + std::to_string(i) + " has non-finite x");
    }
    if (!in_unit(v.y)) {
      problems.push_back("breakpoint " + std::to_string(i) + " degree outside [0,1]");
    }
    if (i > 0 && !(breakpoints[i - 1].x < v.x)) {
      std::ostringstream os;
      os << "breakpoint x not strictly increasing at index " << i << " (" << breakpoints[i - 1].x
         << " then " << v.x << ")";
      problems.push_back(os.str());
    }
  }
  return problems;
}

Degree eval_mf(const MembershipFunction& mf, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    std::ostringstream os;
    os << "membership argument must be finite and non-negative, got " << x;
    throw DomainError(os.str());
  }
  const auto& v = mf.breakpoints;
  if (v.empty()) throw StructuralError("membership function has no breakpoints");
  if (x < v.front().x) return mf.left_value;
  if (x > v.back().x) return mf.right_value;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (x == v[i].x) return v[i].y;
    if (x < v[i + 1].x) {
      const double t = (x - v[i].x) / (v[i + 1].x - v[i].x);
      return v[i].y + (v[i + 1].y - v[i].y) * t;
    }
  }
  return v.back().y;
}

std::string_view to_string(GasId gas) { return kGasNames[index(gas)]; }

std::string_view to_string(Level level) { return kLevelNames[index(level)]; }

std::string_view to_string(Unit unit) { return unit == Unit::ppm ? "ppm" : "percent"; }

std::optional<GasId> parse_gas(std::string_view name) {
  const std::string key = lowercase(name);
  for (GasId gas : kAllGases) {
    if (to_string(gas) == key) return gas;
  }
  return std::nullopt;
}

std::optional<Level> parse_level(std::string_view name) {
  const std::string key = lowercase(name);
  for (Level level : kAllLevels) {
    if (to_string(level) == key) return level;
  }
  return std::nullopt;
}

Unit unit_of(GasId gas) {
  return (gas == GasId::nitrogen || gas == GasId::oxygen) ? Unit::percent : Unit::ppm;
}

const MembershipFunction& GasCatalogEntry::curve(Level level) const {
  switch (level) {
    case Level::normal:
      return normal;
    case Level::elevated:
      return elevated;
    case Level::dangerous:
      return dangerous;
  }
  throw StructuralError("unknown level");
}

double GasCatalogEntry::dangerous_onset() const {
  for (const auto& v : dangerous.breakpoints) {
    if (v.y == 1.0) return v.x;
  }
  throw StructuralError("dangerous curve of " + std::string(to_string(gas)) +
                        " never reaches 1");
}

GasCatalogEntry make_catalog_entry(GasId gas, double a, double b, double c, double d) {
  return {gas,
          unit_of(gas),
          MembershipFunction::shoulder_down(a, b),
          MembershipFunction::trapezoid(a, b, c, d),
          MembershipFunction::shoulder_up(c, d)};
}

const std::vector<GasCatalogEntry>& gas_catalog() {
  // Breakpoints of the published normal/elevated/dangerous trapezoids.
  static const std::vector<GasCatalogEntry> catalog = {
      make_catalog_entry(GasId::hydrogen, 135, 150, 900, 1000),
      make_catalog_entry(GasId::methane, 23, 25, 72, 80),
      make_catalog_entry(GasId::ethane, 9, 10, 32, 35),
      make_catalog_entry(GasId::ethylene, 18, 20, 90, 100),
      make_catalog_entry(GasId::acetylene, 14, 15, 63, 70),
      make_catalog_entry(GasId::carbon_monoxide, 450, 500, 900, 1000),
      make_catalog_entry(GasId::nitrogen, 0.9, 1.0, 9, 10),
      make_catalog_entry(GasId::oxygen, 0.09, 0.10, 0.18, 0.20),
      make_catalog_entry(GasId::carbon_dioxide, 9000, 10000, 13500, 15000),
      make_catalog_entry(GasId::tdcg, 648, 720, 4500, 5000),
  };
  return catalog;
}

const GasCatalogEntry& catalog_entry(GasId gas) { return gas_catalog()[index(gas)]; }

std::string_view to_string(CatalogViolation::Kind kind) {
  switch (kind) {
    case CatalogViolation::Kind::structure:
      return "structure";
    case CatalogViolation::Kind::partition_of_unity:
      return "partition_of_unity";
    case CatalogViolation::Kind::monotonicity:
      return "monotonicity";
    case CatalogViolation::Kind::missing_gas:
      return "missing_gas";
  }
  return "unknown";
}

namespace {

constexpr double kUnityTolerance = 1e-9;
constexpr std::size_t kGridSteps = 20000;

std::vector<double> sample_grid(const GasCatalogEntry& e) {
  double hi = 0.0;
  for (Level level : kAllLevels) {
    for (const auto& v : e.curve(level).breakpoints) hi = std::max(hi, v.x);
  }
  hi = hi > 0.0 ? 1.5 * hi : 1.0;
  std::vector<double> xs;
  xs.reserve(kGridSteps + 16);
  for (std::size_t i = 0; i <= kGridSteps; ++i) {
    xs.push_back(hi * static_cast<double>(i) / static_cast<double>(kGridSteps));
  }
  for (Level level : kAllLevels) {
    for (const auto& v : e.curve(level).breakpoints) {
      if (v.x >= 0.0) xs.push_back(v.x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Collapses flagged sample indices into contiguous x-ranges.
void push_runs(std::vector<CatalogViolation>& out, GasId gas, CatalogViolation::Kind kind,
               const std::vector<double>& xs, const std::vector<bool>& flagged,
               const std::string& what) {
  std::size_t i = 0;
  while (i < xs.size()) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < xs.size() && flagged[j + 1]) ++j;
    std::ostringstream os;
    os << to_string(gas) << ": " << what << " on [" << xs[i] << ", " << xs[j] << "]";
    out.push_back({gas, kind, xs[i], xs[j], os.str()});
    i = j + 1;
  }
}

}  // namespace

std::vector<CatalogViolation> validate_catalog(std::span<const GasCatalogEntry> entries) {
  std::vector<CatalogViolation> report;
  std::array<int, kGasCount> seen{};

  for (const auto& e : entries) {
    ++seen[index(e.gas)];
    bool structurally_ok = true;
    for (Level level : kAllLevels) {
      for (const auto& p : e.curve(level).structural_problems()) {
        structurally_ok = false;
        report.push_back({e.gas, CatalogViolation::Kind::structure, 0.0, 0.0,
                          std::string(to_string(e.gas)) + " " + std::string(to_string(level)) +
                              ": " + p});
      }
    }
    if (!structurally_ok) continue;

    const auto xs = sample_grid(e);
    std::vector<bool> unity_bad(xs.size(), false);
    std::vector<bool> normal_bad(xs.size(), false);
    std::vector<bool> dangerous_bad(xs.size(), false);
    double prev_n = 0.0;
    double prev_d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double n = eval_mf(e.normal, xs[i]);
      const double el = eval_mf(e.elevated, xs[i]);
      const double d = eval_mf(e.dangerous, xs[i]);
      unity_bad[i] = std::abs(n + el + d - 1.0) > kUnityTolerance;
      if (i > 0) {
        normal_bad[i] = n > prev_n;
        dangerous_bad[i] = d < prev_d;
      }
      prev_n = n;
      prev_d = d;
    }
    push_runs(report, e.gas, CatalogViolation::Kind::partition_of_unity, xs, unity_bad,
              "degrees do not sum to 1");
    push_runs(report, e.gas, CatalogViolation::Kind::monotonicity, xs, normal_bad,
              "normal curve increases");
    push_runs(report, e.gas, CatalogViolation::Kind::monotonicity, xs, dangerous_bad,
              "dangerous curve decreases");
  }

  for (GasId gas : kAllGases) {
    if (seen[index(gas)] == 0) {
      report.push_back({gas, CatalogViolation::Kind::missing_gas, 0.0, 0.0,
                        std::string(to_string(gas)) + ": no catalog entry"});
    } else if (seen[index(gas)] > 1) {
      report.push_back({gas, CatalogViolation::Kind::structure, 0.0, 0.0,
                        std::string(to_string(gas)) + ": duplicate catalog entry"});
    }
  }
  return report;
}

namespace {

nlohmann::ordered_json mf_to_json(const MembershipFunction& mf) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& v : mf.breakpoints) points.push_back({v.x, v.y});
  return {{"left_value", mf.left_value}, {"breakpoints", points}, {"right_value", mf.right_value}};
}

}  // namespace

nlohmann::ordered_json catalog_to_json(std::span<const GasCatalogEntry> entries) {
  nlohmann::ordered_json gases = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json levels;
    for (Level level : kAllLevels) levels[std::string(to_string(level))] = mf_to_json(e.curve(level));
    gases.push_back({{"gas", to_string(e.gas)}, {"unit", to_string(e.unit)}, {"levels", levels}});
  }
  return {{"catalog", "bushing-dga"}, {"gases", gases}};
}

}  // namespace bushdx
