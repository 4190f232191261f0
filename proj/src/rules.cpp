#include "bushdx/rules.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "bushdx/error.hpp"

namespace bushdx {

namespace {

constexpr std::array<std::string_view, 3> kGroupNames = {"low", "medium", "high"};

}  // namespace

std::string_view to_string(RiskGroup group) { return kGroupNames[index(group)]; }

std::optional<RiskGroup> parse_group(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (RiskGroup g : kAllGroups) {
    if (to_string(g) == key) return g;
  }
  return std::nullopt;
}

bool Atom::operator==(const Atom& other) const {
  if (gas != other.gas || negated != other.negated || any != other.any) return false;
  return any || level == other.level;
}

std::vector<RiskGroup> RuleSet::uncovered_groups() const {
  std::vector<RiskGroup> missing;
  for (RiskGroup g : kAllGroups) {
    const bool covered = std::any_of(rules.begin(), rules.end(),
                                     [g](const Rule& r) { return r.consequent == g; });
    if (!covered) missing.push_back(g);
  }
  return missing;
}

void validate_rule(const Rule& rule) {
  if (rule.antecedent.empty()) throw StructuralError("rule has an empty antecedent");
  std::array<bool, kGasCount> used{};
  for (const auto& atom : rule.antecedent) {
    if (atom.any && atom.negated) {
      throw StructuralError("atom on " + std::string(to_string(atom.gas)) +
                            " cannot be both NOT and ANY");
    }
    if (used[index(atom.gas)]) {
      throw StructuralError("gas " + std::string(to_string(atom.gas)) +
                            " appears twice in one antecedent");
    }
    used[index(atom.gas)] = true;
  }
}

Degree AggregatedMembership::operator[](RiskGroup g) const {
  switch (g) {
    case RiskGroup::low:
      return low;
    case RiskGroup::medium:
      return medium;
    case RiskGroup::high:
      return high;
  }
  throw StructuralError("unknown risk group");
}

Degree& AggregatedMembership::operator[](RiskGroup g) {
  switch (g) {
    case RiskGroup::low:
      return low;
    case RiskGroup::medium:
      return medium;
    case RiskGroup::high:
      return high;
  }
  throw StructuralError("unknown risk group");
}

std::uint64_t rule_count(std::uint64_t categories, std::uint64_t criteria) {
  if (categories == 0 || criteria == 0) {
    throw PreconditionError("rule_count needs at least one category and one criterion");
  }
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < criteria; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / categories) {
      throw RangeError("rule count " + std::to_string(categories) + "^" +
                       std::to_string(criteria) + " overflows 64 bits");
    }
    result *= categories;
    // 1^n never grows; stop early instead of looping over huge exponents.
    if (categories == 1) break;
  }
  return result;
}

std::string format_rule(const Rule& rule) {
  std::string out = "IF ";
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    const auto& a = rule.antecedent[i];
    if (i > 0) out += " AND ";
    out += to_string(a.gas);
    if (a.any) {
      out += " IS ANY";
    } else {
      out += a.negated ? " IS NOT " : " IS ";
      out += to_string(a.level);
    }
  }
  out += " THEN risk IS ";
  out += to_string(rule.consequent);
  return out;
}

std::string format_rules(const RuleSet& ruleset) {
  std::string out;
  for (const auto& r : ruleset.rules) {
    out += format_rule(r);
    out += '\n';
  }
  return out;
}

Degree eval_atom(const Atom& atom, const GasMembershipTable& table) {
  const auto& d = table[atom.gas];
  if (atom.any) return std::clamp(d.normal + d.elevated + d.dangerous, 0.0, 1.0);
  const Degree v = d[atom.level];
  return atom.negated ? 1.0 - v : v;
}

RuleFiring eval_rule(const Rule& rule, const GasMembershipTable& table) {
  if (rule.antecedent.empty()) throw StructuralError("rule has an empty antecedent");
  Degree truth = 1.0;
  for (const auto& atom : rule.antecedent) truth = std::min(truth, eval_atom(atom, table));
  return {rule.consequent, truth};
}

AggregatedMembership aggregate(const RuleSet& ruleset, const GasMembershipTable& table) {
  AggregatedMembership agg;
  for (const auto& rule : ruleset.rules) {
    const auto firing = eval_rule(rule, table);
    agg[firing.group] = std::max(agg[firing.group], firing.truth);
  }
  return agg;
}

const RuleSet& default_ruleset() {
  static const RuleSet rules = parse_rules(default_ruleset_source(), "default");
  return rules;
}

}  // namespace bushdx
