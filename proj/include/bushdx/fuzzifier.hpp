#pragma once

#include <array>
#include <optional>
#include <string>

#include "bushdx/membership.hpp"
#include "json.hpp"

namespace bushdx {

// One bushing's DGA sample. Combustibles and CO2 in ppm, N2 and O2 in percent.
struct GasReading {
  std::string bushing_id;
  double h2 = 0.0;
  double ch4 = 0.0;
  double c2h6 = 0.0;
  double c2h4 = 0.0;
  double c2h2 = 0.0;
  double co = 0.0;
  double co2 = 0.0;
  double n2 = 0.0;
  double o2 = 0.0;
  // Laboratory-reported TDCG, checked against the recomputed sum.
  std::optional<double> tdcg;

  bool operator==(const GasReading&) const = default;
};

// Maximum tolerated gap between a supplied and a recomputed TDCG.
inline constexpr double kTdcgTolerancePpm = 0.5;

// Sum of H2, CH4, C2H6, C2H4, C2H2 and CO. Throws ConsistencyError if the
// reading carries a TDCG that disagrees by more than kTdcgTolerancePpm.
double compute_tdcg(const GasReading& reading);

// Concentration of `gas`; TDCG is always the recomputed sum.
double concentration(const GasReading& reading, GasId gas);

// Throws DomainError naming the first negative or non-finite field.
void validate_reading(const GasReading& reading);

struct LevelDegrees {
  Degree normal = 0.0;
  Degree elevated = 0.0;
  Degree dangerous = 0.0;

  Degree operator[](Level level) const;
  bool operator==(const LevelDegrees&) const = default;
};

struct GasMembershipTable {
  std::array<LevelDegrees, kGasCount> degrees{};

  const LevelDegrees& operator[](GasId gas) const { return degrees[index(gas)]; }
  LevelDegrees& operator[](GasId gas) { return degrees[index(gas)]; }
  Degree at(GasId gas, Level level) const { return degrees[index(gas)][level]; }

  bool operator==(const GasMembershipTable&) const = default;
};

LevelDegrees fuzzify_gas(GasId gas, double value);

GasMembershipTable fuzzify_bushing(const GasReading& reading);

// {"hydrogen": {"normal": .., "elevated": .., "dangerous": ..}, ...}
nlohmann::ordered_json to_json(const GasMembershipTable& table);
GasMembershipTable membership_table_from_json(const nlohmann::ordered_json& j);

}  // namespace bushdx
