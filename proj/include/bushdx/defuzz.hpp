#pragma once

#include <array>
#include <string>
#include <string_view>

#include "bushdx/fuzzifier.hpp"
#include "bushdx/rules.hpp"

namespace bushdx {

// Location of an output set's maximum on the 0-100 risk axis.
struct OutputSet {
  RiskGroup group;
  double peak_lo;
  double peak_hi;

  // Representative rank: midpoint of the flat top.
  constexpr double coefficient() const { return 0.5 * (peak_lo + peak_hi); }
};

inline constexpr std::array<OutputSet, 3> kOutputSets = {{
    {RiskGroup::low, 0.0, 10.0},
    {RiskGroup::medium, 60.0, 60.0},
    {RiskGroup::high, 80.0, 100.0},
}};

inline constexpr double kRejectAbove = 30.0;
inline constexpr double kAcceptBelow = 10.0;

enum class Decision { accept, monitor, reject };

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view s);

// Weighted average of the output-set maxima. Throws DomainError when every
// membership is zero (no rule fired) or any membership is negative/non-finite.
double crisp_rank(const AggregatedMembership& agg);

// rank > 30 reject, rank < 10 accept, otherwise monitor (both boundaries
// monitor). Throws DomainError outside [0,100].
Decision decide(double rank);

struct RiskAssessment {
  GasReading reading;
  double tdcg = 0.0;
  GasMembershipTable memberships;
  AggregatedMembership aggregated;
  double rank = 0.0;
  Decision decision = Decision::accept;

  bool operator==(const RiskAssessment&) const = default;
};

// fuzzify -> aggregate -> crisp_rank -> decide. Throws StructuralError for an
// empty ruleset.
RiskAssessment assess(const GasReading& reading, const RuleSet& ruleset);

}  // namespace bushdx
