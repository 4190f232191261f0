#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bushdx {

using Degree = double;

// Clamped piecewise-linear membership curve. Below the first vertex the curve
// holds `left_value`, above the last it holds `right_value`.
struct MembershipFunction {
  struct Vertex {
    double x;
    Degree y;
    bool operator==(const Vertex&) const = default;
  };

  std::vector<Vertex> breakpoints;
  Degree left_value = 0.0;
  Degree right_value = 0.0;

  // 1 on [0, plateau_end], falling to 0 at zero_at.
  static MembershipFunction shoulder_down(double plateau_end, double zero_at);
  // 0 up to rise_start, 1 from plateau_start on.
  static MembershipFunction shoulder_up(double rise_start, double plateau_start);
  static MembershipFunction trapezoid(double a, double b, double c, double d);

  // Empty when the vertex list is usable: non-empty, strictly increasing x,
  // every degree in [0,1].
  std::vector<std::string> structural_problems() const;

  bool operator==(const MembershipFunction&) const = default;
};

// Throws DomainError for negative or non-finite x.
Degree eval_mf(const MembershipFunction& mf, double x);

enum class GasId {
  hydrogen,
  methane,
  ethane,
  ethylene,
  acetylene,
  carbon_monoxide,
  nitrogen,
  oxygen,
  carbon_dioxide,
  tdcg,
};

inline constexpr std::size_t kGasCount = 10;

inline constexpr std::array<GasId, kGasCount> kAllGases = {
    GasId::hydrogen,        GasId::methane,  GasId::ethane, GasId::ethylene,
    GasId::acetylene,       GasId::carbon_monoxide, GasId::nitrogen,
    GasId::oxygen,          GasId::carbon_dioxide,  GasId::tdcg,
};

enum class Unit { ppm, percent };

enum class Level { normal, elevated, dangerous };

inline constexpr std::array<Level, 3> kAllLevels = {Level::normal, Level::elevated,
                                                   Level::dangerous};

constexpr std::size_t index(GasId gas) { return static_cast<std::size_t>(gas); }
constexpr std::size_t index(Level level) { return static_cast<std::size_t>(level); }

std::string_view to_string(GasId gas);
std::string_view to_string(Unit unit);
std::string_view to_string(Level level);
std::optional<GasId> parse_gas(std::string_view name);
std::optional<Level> parse_level(std::string_view name);
Unit unit_of(GasId gas);

struct GasCatalogEntry {
  GasId gas;
  Unit unit;
  MembershipFunction normal;
  MembershipFunction elevated;
  MembershipFunction dangerous;

  const MembershipFunction& curve(Level level) const;

  // Lower edge of the dangerous plateau.
  double dangerous_onset() const;
};

// Ten gases, three trapezoidal levels each, in GasId order.
const std::vector<GasCatalogEntry>& gas_catalog();

const GasCatalogEntry& catalog_entry(GasId gas);

// Four-breakpoint form of a gas: (normal plateau end, normal zero,
// elevated plateau end, dangerous plateau start).
GasCatalogEntry make_catalog_entry(GasId gas, double a, double b, double c, double d);

struct CatalogViolation {
  enum class Kind { structure, partition_of_unity, monotonicity, missing_gas };

  GasId gas;
  Kind kind;
  // Sampled x-range over which the violation was seen (both ends inclusive).
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::string message;
};

std::string_view to_string(CatalogViolation::Kind kind);

// Samples each curve densely and checks partition of unity and monotonicity.
// Empty result means the catalog is valid.
std::vector<CatalogViolation> validate_catalog(std::span<const GasCatalogEntry> entries);

nlohmann::ordered_json catalog_to_json(std::span<const GasCatalogEntry> entries);

}  // namespace bushdx
