#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bushdx/fuzzifier.hpp"
#include "bushdx/membership.hpp"

namespace bushdx {

enum class RiskGroup { low, medium, high };

inline constexpr std::array<RiskGroup, 3> kAllGroups = {RiskGroup::low, RiskGroup::medium,
                                                       RiskGroup::high};

constexpr std::size_t index(RiskGroup g) { return static_cast<std::size_t>(g); }

std::string_view to_string(RiskGroup group);
std::optional<RiskGroup> parse_group(std::string_view name);

// One antecedent clause: "gas IS [NOT] level" or "gas IS ANY".
struct Atom {
  GasId gas = GasId::hydrogen;
  Level level = Level::normal;  // ignored when any is set
  bool negated = false;
  bool any = false;

  static Atom is(GasId gas, Level level) { return {gas, level, false, false}; }
  static Atom is_not(GasId gas, Level level) { return {gas, level, true, false}; }
  static Atom is_any(GasId gas) { return {gas, Level::normal, false, true}; }

  // Level-insensitive when any is set.
  bool operator==(const Atom& other) const;
};

// Conjunction of atoms implying a risk group.
struct Rule {
  std::vector<Atom> antecedent;
  RiskGroup consequent = RiskGroup::low;

  bool operator==(const Rule&) const = default;
};

struct RuleSet {
  std::string name;
  std::vector<Rule> rules;

  // Groups that no rule concludes. Aggregation degenerates to zero for such
  // groups, which can leave healthy readings without any firing rule.
  std::vector<RiskGroup> uncovered_groups() const;

  // Same rules in the same order; the name is not part of the structure.
  bool same_rules(const RuleSet& other) const { return rules == other.rules; }
};

// Throws StructuralError for an empty antecedent, a gas repeated within one
// antecedent, or an atom with both NOT and ANY.
void validate_rule(const Rule& rule);

struct AggregatedMembership {
  Degree low = 0.0;
  Degree medium = 0.0;
  Degree high = 0.0;

  Degree operator[](RiskGroup g) const;
  Degree& operator[](RiskGroup g);
  bool operator==(const AggregatedMembership&) const = default;
};

// categories^criteria. Throws PreconditionError for zero arguments and
// RangeError when the result does not fit in 64 bits.
std::uint64_t rule_count(std::uint64_t categories, std::uint64_t criteria);

// Parses the line-oriented IF/AND/THEN rule language. Throws ParseError
// (with 1-based line/column) on syntax errors, unknown names and duplicated
// gases within one rule.
RuleSet parse_rules(std::string_view text, std::string name = "unnamed");

// Canonical single-line form, e.g.
// "IF tdcg IS dangerous AND oxygen IS NOT normal THEN risk IS high".
std::string format_rule(const Rule& rule);
std::string format_rules(const RuleSet& ruleset);

Degree eval_atom(const Atom& atom, const GasMembershipTable& table);

struct RuleFiring {
  RiskGroup group;
  Degree truth;
};

RuleFiring eval_rule(const Rule& rule, const GasMembershipTable& table);

AggregatedMembership aggregate(const RuleSet& ruleset, const GasMembershipTable& table);

// Source of the shipped ruleset (data/rulesets/default.rules).
std::string_view default_ruleset_source();

// Parsed shipped ruleset, named "default".
const RuleSet& default_ruleset();

}  // namespace bushdx
