#include "beliefkit/combination.hpp"

#include <map>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

void require_same_frame(const MassFunction& m1, const MassFunction& m2) {
  if (!(m1.frame() == m2.frame())) throw FrameMismatch("combination of BPAs on different frames");
}

template <class Op>
std::map<Mask, double> pairwise(const MassFunction& m1, const MassFunction& m2, Op op) {
  std::map<Mask, double> out;
  for (const auto& [b, x] : m1.entries()) {
    for (const auto& [c, y] : m2.entries()) out[op(b, c)] += x * y;
  }
  return out;
}

}  // namespace

Rule parse_rule(std::string_view name) {
  if (name == "dempster") return Rule::dempster;
  if (name == "conjunctive") return Rule::conjunctive;
  if (name == "disjunctive") return Rule::disjunctive;
  if (name == "yager") return Rule::yager;
  if (name == "dubois" || name == "dubois_prade" || name == "dubois-prade") {
    return Rule::dubois_prade;
  }
  throw DomainError("unknown combination rule '" + std::string(name) + "'");
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::dempster: return "dempster";
    case Rule::conjunctive: return "conjunctive";
    case Rule::disjunctive: return "disjunctive";
    case Rule::yager: return "yager";
    case Rule::dubois_prade: return "dubois";
  }
  return "?";
}

MassFunction conjunctive_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  return MassFunction(m1.frame(), pairwise(m1, m2, [](Mask b, Mask c) { return b & c; }),
                      false);
}

double conflict(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  double k = 0.0;
  for (const auto& [b, x] : m1.entries()) {
    for (const auto& [c, y] : m2.entries()) {
      if ((b & c) == 0) k += x * y;
    }
  }
  return k;
}

MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto raw = pairwise(m1, m2, [](Mask b, Mask c) { return b & c; });
  const double k = raw.count(0) ? raw[0] : 0.0;
  if (k >= kTotalConflict) throw TotalConflict("Dempster combination of totally conflicting BPAs");
  raw.erase(0);
  for (auto& [a, v] : raw) v /= (1.0 - k);
  return MassFunction(m1.frame(), raw);
}

MassFunction disjunctive_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto raw = pairwise(m1, m2, [](Mask b, Mask c) { return b | c; });
  const bool has_empty = raw.count(0) && raw[0] > 0.0;
  return MassFunction(m1.frame(), raw, !has_empty);
}

MassFunction yager_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  auto raw = pairwise(m1, m2, [](Mask b, Mask c) { return b & c; });
  if (raw.count(0)) {
    raw[m1.frame().full()] += raw[0];
    raw.erase(0);
  }
  return MassFunction(m1.frame(), raw);
}

MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  // Same accumulation order as the Yager rule, so the two agree bit for bit
  // on binary frames where the only conflicting union is the whole frame.
  std::map<Mask, double> raw;
  std::map<Mask, double> moved;
  for (const auto& [b, x] : m1.entries()) {
    for (const auto& [c, y] : m2.entries()) {
      if (b & c) {
        raw[b & c] += x * y;
      } else {
        moved[b | c] += x * y;
      }
    }
  }
  for (const auto& [a, v] : moved) raw[a] += v;
  if (raw.count(0)) {
    // Only reachable when both inputs carry empty-set mass.
    const double lost = raw[0];
    raw.erase(0);
    for (auto& kv : raw) kv.second /= (1.0 - lost);
  }
  return MassFunction(m1.frame(), raw);
}

MassFunction combine(Rule rule, const MassFunction& m1, const MassFunction& m2) {
  switch (rule) {
    case Rule::dempster: return dempster_combine(m1, m2);
    case Rule::conjunctive: return conjunctive_combine(m1, m2);
    case Rule::disjunctive: return disjunctive_combine(m1, m2);
    case Rule::yager: return yager_combine(m1, m2);
    case Rule::dubois_prade: return dubois_prade_combine(m1, m2);
  }
  throw DomainError("unknown rule");
}

MassFunction combine_all(Rule rule, const std::vector<MassFunction>& ms) {
  if (ms.empty()) throw DomainError("nothing to combine");
  MassFunction acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = combine(rule, acc, ms[i]);
  return acc;
}

MassFunction dempster_condition(const MassFunction& m, Mask a) {
  if (!m.frame().contains(a)) throw DomainError("conditioning event outside the frame");
  const double pl = m.plausibility(a);
  if (pl <= 1e-12) {
    throw ZeroPlausibility("conditioning event " + m.frame().format(a) + " has zero plausibility");
  }
  return dempster_combine(m, MassFunction::categorical(m.frame(), a));
}

}  // namespace beliefkit
