#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "beliefkit/mass_function.hpp"

namespace beliefkit {

enum class Rule { dempster, conjunctive, disjunctive, yager, dubois_prade };

Rule parse_rule(std::string_view name);
std::string rule_name(Rule r);

/// Conflict threshold above which Dempster's rule reports TotalConflict.
inline constexpr double kTotalConflict = 1.0 - 1e-12;

/// Unnormalized conjunctive rule; the empty set keeps the conflict.
MassFunction conjunctive_combine(const MassFunction& m1, const MassFunction& m2);
/// Normalized orthogonal sum.
MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2);
/// Union-based rule; beliefs multiply.
MassFunction disjunctive_combine(const MassFunction& m1, const MassFunction& m2);
/// Conflict reassigned to the whole frame.
MassFunction yager_combine(const MassFunction& m1, const MassFunction& m2);
/// Each conflicting product reassigned to the union of its pair.
MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2);

MassFunction combine(Rule rule, const MassFunction& m1, const MassFunction& m2);
/// Left fold ((m0 . m1) . m2) ... in the given order. Yager and Dubois-Prade
/// are not associative, so the order matters for them.
MassFunction combine_all(Rule rule, const std::vector<MassFunction>& ms);

/// Mass the conjunctive rule sends to the empty set.
double conflict(const MassFunction& m1, const MassFunction& m2);

/// Dempster conditioning on `a`: combination with the categorical BPA on a.
MassFunction dempster_condition(const MassFunction& m, Mask a);

}  // namespace beliefkit
