#include "bushdx/fuzzifier.hpp"

#include <cmath>
#include <sstream>

#include "bushdx/error.hpp"

namespace bushdx {

namespace {

double raw_value(const GasReading& r, GasId gas) {
  switch (gas) {
    case GasId::hydrogen:
      return r.h2;
    case GasId::methane:
      return r.ch4;
    case GasId::ethane:
      return r.c2h6;
    case GasId::ethylene:
      return r.c2h4;
    case GasId::acetylene:
      return r.c2h2;
    case GasId::carbon_monoxide:
      return r.co;
    case GasId::nitrogen:
      return r.n2;
    case GasId::oxygen:
      return r.o2;
    case GasId::carbon_dioxide:
      return r.co2;
    case GasId::tdcg:
      break;
  }
  throw StructuralError("tdcg has no raw field");
}

void require_valid(double v, std::string_view field, const std::string& id) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << "bushing '" << id << "': " << field << " must be finite and non-negative, got " << v;
    throw DomainError(os.str());
  }
}

}  // namespace

void validate_reading(const GasReading& reading) {
  for (GasId gas : kAllGases) {
    if (gas == GasId::tdcg) continue;
    require_valid(raw_value(reading, gas), to_string(gas), reading.bushing_id);
  }
  if (reading.tdcg) require_valid(*reading.tdcg, "tdcg", reading.bushing_id);
}

double compute_tdcg(const GasReading& reading) {
  validate_reading(reading);
  const double sum = reading.h2 + reading.ch4 + reading.c2h6 + reading.c2h4 + reading.c2h2 + reading.co;
  if (reading.tdcg && std::abs(*reading.tdcg - sum) > kTdcgTolerancePpm) {
    std::ostringstream os;
    os << "bushing '" << reading.bushing_id << "': supplied tdcg " << *reading.tdcg
       << " ppm disagrees with computed " << sum << " ppm";
    throw ConsistencyError(os.str());
  }
  return sum;
}

double concentration(const GasReading& reading, GasId gas) {
  return gas == GasId::tdcg ? compute_tdcg(reading) : raw_value(reading, gas);
}

Degree LevelDegrees::operator[](Level level) const {
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

LevelDegrees fuzzify_gas(GasId gas, double value) {
  const auto& entry = catalog_entry(gas);
  return {eval_mf(entry.normal, value), eval_mf(entry.elevated, value),
          eval_mf(entry.dangerous, value)};
}

GasMembershipTable fuzzify_bushing(const GasReading& reading) {
  const double tdcg = compute_tdcg(reading);
  GasMembershipTable table;
  for (GasId gas : kAllGases) {
    table[gas] = fuzzify_gas(gas, gas == GasId::tdcg ? tdcg : raw_value(reading, gas));
  }
  return table;
}

nlohmann::ordered_json to_json(const GasMembershipTable& table) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (GasId gas : kAllGases) {
    const auto& d = table[gas];
    j[std::string(to_string(gas))] = {
        {"normal", d.normal}, {"elevated", d.elevated}, {"dangerous", d.dangerous}};
  }
  return j;
}

GasMembershipTable membership_table_from_json(const nlohmann::ordered_json& j) {
  GasMembershipTable table;
  for (GasId gas : kAllGases) {
    const auto key = std::string(to_string(gas));
    if (!j.contains(key)) throw StructuralError("membership table lacks gas '" + key + "'");
    const auto& d = j.at(key);
    table[gas] = {d.at("normal").get<double>(), d.at("elevated").get<double>(),
                  d.at("dangerous").get<double>()};
  }
  return table;
}

}  // namespace bushdx
