#include "bushdx/defuzz.hpp"

#include <cmath>
#include <sstream>

#include "bushdx/error.hpp"

namespace bushdx {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::accept:
      return "Accept";
    case Decision::monitor:
      return "Monitor";
    case Decision::reject:
      return "Reject";
  }
  return "?";
}

Decision parse_decision(std::string_view s) {
  if (s == "Accept") return Decision::accept;
  if (s == "Monitor") return Decision::monitor;
  if (s == "Reject") return Decision::reject;
  throw FormatError("unknown decision '" + std::string(s) + "'");
}

double crisp_rank(const AggregatedMembership& agg) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& set : kOutputSets) {
    const double mu = agg[set.group];
    if (!std::isfinite(mu) || mu < 0.0) {
      std::ostringstream os;
      os << "membership of " << to_string(set.group) << " risk must be finite and >= 0, got " << mu;
      throw DomainError(os.str());
    }
    weighted += set.coefficient() * mu;
    total += mu;
  }
  if (total == 0.0) throw DomainError("rank undefined: no rule fired");
  return weighted / total;
}

Decision decide(double rank) {
  if (!std::isfinite(rank) || rank < 0.0 || rank > 100.0) {
    std::ostringstream os;
    os << "rank must lie in [0,100], got " << rank;
    throw DomainError(os.str());
  }
  if (rank > kRejectAbove) return Decision::reject;
  if (rank < kAcceptBelow) return Decision::accept;
  return Decision::monitor;
}

RiskAssessment assess(const GasReading& reading, const RuleSet& ruleset) {
  if (ruleset.rules.empty()) throw StructuralError("ruleset '" + ruleset.name + "' has no rules");
  RiskAssessment a;
  a.reading = reading;
  a.tdcg = compute_tdcg(reading);
  a.memberships = fuzzify_bushing(reading);
  a.aggregated = aggregate(ruleset, a.memberships);
  try {
    a.rank = crisp_rank(a.aggregated);
  } catch (const DomainError& e) {
    throw DomainError("bushing '" + reading.bushing_id + "': " + e.what());
  }
  a.decision = decide(a.rank);
  return a;
}

}  // namespace bushdx
