#include "beliefkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "beliefkit/errors.hpp"
#include "beliefkit/simplex_lp.hpp"

namespace beliefkit {

namespace {

void require_binary(const MassFunction& m) {
  if (m.frame().size() != 2) throw DomainError("binary frame required");
}

std::vector<double> coordinates(const MassFunction& m, bool believability) {
  const Mask full = m.frame().full();
  m.frame().power_set_size();
  std::vector<double> out;
  for (Mask a = believability ? 0 : 1; a < full; ++a) {
    double s = 0.0;
    for (const auto& [b, v] : m.entries()) {
      if (is_subset(b, a)) s += v;
    }
    out.push_back(s);
  }
  return out;
}

bool unnormalized_rule(SubspaceRule r) {
  return r == SubspaceRule::conjunctive_unnorm || r == SubspaceRule::disjunctive_unnorm;
}

MassFunction subspace_combine(SubspaceRule rule, const MassFunction& a, const MassFunction& b) {
  switch (rule) {
    case SubspaceRule::dempster: return dempster_combine(a, b);
    case SubspaceRule::yager: return yager_combine(a, b);
    case SubspaceRule::disjunctive:
    case SubspaceRule::disjunctive_unnorm: return disjunctive_combine(a, b);
    case SubspaceRule::conjunctive_unnorm: return conjunctive_combine(a, b);
  }
  throw DomainError("unknown rule");
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

double l2_objective(const Eigen::MatrixXd& m, const Eigen::VectorXd& b, const Eigen::VectorXd& w) {
  return (m * w - b).squaredNorm();
}

// Accelerated projected gradient, then an exact solve on the detected
// support, kept only when it is feasible and no worse.
Eigen::VectorXd solve_l2(const Eigen::MatrixXd& m, const Eigen::VectorXd& b) {
  const Eigen::Index k = m.cols();
  const Eigen::MatrixXd q = m.transpose() * m;
  const Eigen::VectorXd r = m.transpose() * b;
  Eigen::VectorXd p = Eigen::VectorXd::Ones(k);
  double lipschitz = 1.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd next = q * p;
    lipschitz = next.norm() / p.norm();
    p = next / next.norm();
  }
  const double step = 1.0 / (2.0 * lipschitz * 1.01);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  Eigen::VectorXd y = w;
  double t = 1.0;
  for (int it = 0; it < 50000; ++it) {
    const Eigen::VectorXd grad = 2.0 * (q * y - r);
    const Eigen::VectorXd next = project_simplex(y - step * grad);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / tn) * (next - w);
    const double change = (next - w).lpNorm<Eigen::Infinity>();
    w = next;
    t = tn;
    if (change < 1e-15) break;
  }

  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (w(j) > 1e-10) support.push_back(j);
  }
  const Eigen::Index s = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
  Eigen::VectorXd rhs(s + 1);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) kkt(i, j) = 2.0 * q(support[i], support[j]);
    kkt(i, s) = 1.0;
    kkt(s, i) = 1.0;
    rhs(i) = 2.0 * r(support[i]);
  }
  rhs(s) = 1.0;
  const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
  Eigen::VectorXd polished = Eigen::VectorXd::Zero(k);
  bool feasible = sol.allFinite();
  for (Eigen::Index i = 0; i < s && feasible; ++i) {
    if (sol(i) < -1e-12) feasible = false;
    polished(support[i]) = std::max(0.0, sol(i));
  }
  if (feasible && polished.sum() > 0) {
    polished /= polished.sum();
    if (l2_objective(m, b, polished) <= l2_objective(m, b, w)) return polished;
  }
  return w;
}

Eigen::VectorXd solve_lp_norm(const Eigen::MatrixXd& m, const Eigen::VectorXd& b, bool l1) {
  const Eigen::Index rows = m.rows(), k = m.cols();
  const Eigen::Index slacks = l1 ? rows : 1;
  LinearProgram lp;
  lp.c = Eigen::VectorXd::Zero(k + slacks);
  lp.c.tail(slacks).setOnes();
  lp.a_ub = Eigen::MatrixXd::Zero(2 * rows, k + slacks);
  lp.b_ub.resize(2 * rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index ti = l1 ? k + i : k;
    lp.a_ub.row(i).head(k) = m.row(i);
    lp.a_ub(i, ti) = -1.0;
    lp.b_ub(i) = b(i);
    lp.a_ub.row(rows + i).head(k) = -m.row(i);
    lp.a_ub(rows + i, ti) = -1.0;
    lp.b_ub(rows + i) = -b(i);
  }
  lp.a_eq = Eigen::MatrixXd::Zero(1, k + slacks);
  lp.a_eq.row(0).head(k).setOnes();
  lp.b_eq = Eigen::VectorXd::Ones(1);
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw NonConvergence("conditioning linear program failed");
  return res.x.head(k);
}

}  // namespace

std::vector<double> belief_coordinates(const MassFunction& m) {
  return coordinates(m, !m.normalized());
}

std::vector<double> mass_vector(const MassFunction& m) {
  const Mask full = m.frame().full();
  m.frame().power_set_size();
  std::vector<double> out;
  for (Mask a = m.normalized() ? 1 : 0; a <= full; ++a) out.push_back(m.mass(a));
  return out;
}

MassFunction mixture(const std::vector<MassFunction>& ms, const std::vector<double>& weights) {
  if (ms.empty() || ms.size() != weights.size()) throw DomainError("mixture needs one weight per BF");
  double total = 0.0;
  bool normalized = true;
  std::map<Mask, double> acc;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!(ms[i].frame() == ms[0].frame())) throw FrameMismatch("mixture over different frames");
    if (weights[i] < 0) throw DomainError("mixture weights must be nonnegative");
    total += weights[i];
    normalized = normalized && ms[i].normalized();
    for (const auto& [a, v] : ms[i].entries()) acc[a] += weights[i] * v;
  }
  if (std::abs(total - 1.0) > kMassSumTol) throw DomainError("mixture weights must sum to one");
  return MassFunction(ms[0].frame(), acc, normalized);
}

SubspaceRule parse_subspace_rule(std::string_view name) {
  if (name == "dempster") return SubspaceRule::dempster;
  if (name == "yager") return SubspaceRule::yager;
  if (name == "disjunctive") return SubspaceRule::disjunctive;
  if (name == "conjunctive_unnorm") return SubspaceRule::conjunctive_unnorm;
  if (name == "disjunctive_unnorm") return SubspaceRule::disjunctive_unnorm;
  throw DomainError("unknown subspace rule: " + std::string(name));
}

std::string subspace_rule_name(SubspaceRule r) {
  switch (r) {
    case SubspaceRule::dempster: return "dempster";
    case SubspaceRule::yager: return "yager";
    case SubspaceRule::disjunctive: return "disjunctive";
    case SubspaceRule::conjunctive_unnorm: return "conjunctive_unnorm";
    case SubspaceRule::disjunctive_unnorm: return "disjunctive_unnorm";
  }
  return "?";
}

ConditionalSubspace conditional_subspace(const MassFunction& bel, SubspaceRule rule) {
  require_binary(bel);
  const bool unnorm = unnormalized_rule(rule);
  if (!unnorm && !bel.normalized()) {
    throw DomainError("normalized rule applied to an unnormalized BF");
  }
  ConditionalSubspace out;
  out.rule = rule;
  for (Mask a = unnorm ? 0 : 1; a <= bel.frame().full(); ++a) {
    const MassFunction cat = MassFunction::categorical(bel.frame(), a);
    SubspaceVertex v;
    v.categorical = a;
    try {
      v.combined = subspace_combine(rule, bel, cat);
    } catch (const TotalConflict&) {
      out.notes.push_back("combination with the categorical BF on " + bel.frame().format(a) +
                          " is undefined (total conflict)");
      continue;
    }
    if (unnorm && v.combined.normalized()) {
      v.combined = MassFunction(v.combined.frame(), v.combined.entries(), false);
    }
    v.masses = mass_vector(v.combined);
    v.coordinates = coordinates(v.combined, unnorm);
    out.vertices.push_back(std::move(v));
  }
  return out;
}

double affine_commutation_check(Rule rule, const MassFunction& bel,
                                const std::vector<MassFunction>& bels,
                                const std::vector<double>& weights) {
  const MassFunction lhs = combine(rule, bel, mixture(bels, weights));
  std::vector<MassFunction> parts;
  parts.reserve(bels.size());
  for (const auto& b : bels) parts.push_back(combine(rule, bel, b));
  return max_abs_diff(lhs, mixture(parts, weights));
}

std::array<double, 2> disjunctive_focus(const MassFunction& bel, double m_prime_x) {
  require_binary(bel);
  const double mx = bel.mass(1), my = bel.mass(2);
  if (my >= 1.0 - 1e-15) throw DomainError("disjunctive focus undefined for m(y) = 1");
  if (m_prime_x < 0.0 || m_prime_x > 1.0) throw DomainError("m'(x) must lie in [0, 1]");
  return {m_prime_x * (mx - my) / (1.0 - my), 0.0};
}

YagerLociReport yager_parallel_loci_check(const MassFunction& bel, const std::vector<double>& cs,
                                          std::size_t samples) {
  require_binary(bel);
  if (samples < 2) throw DomainError("at least two samples per locus");
  const Frame& f = bel.frame();
  YagerLociReport rep;
  const double mx = bel.mass(1), mt = bel.mass(3);
  rep.slope_defined = mx > 0.0;
  if (rep.slope_defined) rep.limit_slope = -mt / mx;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double c : cs) {
    if (c < 0.0 || c >= 1.0) throw DomainError("locus constant must lie in [0, 1)");
    LocusImage img;
    img.c = c;
    for (std::size_t k = 0; k < samples; ++k) {
      const double y = (1.0 - c) * static_cast<double>(k) / static_cast<double>(samples - 1);
      const double t = std::max(0.0, 1.0 - c - y);
      const MassFunction m2(f, std::map<Mask, double>{{1, c}, {2, y}, {3, t}});
      const MassFunction r = yager_combine(bel, m2);
      img.points.push_back({r.mass(1), r.mass(2)});
    }
    const auto& p0 = img.points.front();
    const auto& p1 = img.points.back();
    const double dx = p1[0] - p0[0], dy = p1[1] - p0[1];
    const double len = std::hypot(dx, dy);
    img.vertical = std::abs(dx) <= 1e-15;
    img.slope = img.vertical ? std::numeric_limits<double>::quiet_NaN() : dy / dx;
    for (const auto& p : img.points) {
      const double ex = p[0] - p0[0], ey = p[1] - p0[1];
      const double d = len > 0 ? std::abs(ex * dy - ey * dx) / len : std::hypot(ex, ey);
      img.collinearity_residual = std::max(img.collinearity_residual, d);
    }
    if (!img.vertical) {
      lo = std::min(lo, img.slope);
      hi = std::max(hi, img.slope);
    }
    rep.loci.push_back(std::move(img));
  }
  rep.slope_spread = hi >= lo ? hi - lo : 0.0;
  return rep;
}

ConditioningNorm parse_conditioning_norm(std::string_view name) {
  if (name == "L1" || name == "l1") return ConditioningNorm::l1;
  if (name == "L2" || name == "l2") return ConditioningNorm::l2;
  if (name == "Linf" || name == "linf" || name == "LINF") return ConditioningNorm::linf;
  throw DomainError("unknown norm: " + std::string(name));
}

std::string conditioning_norm_name(ConditioningNorm n) {
  switch (n) {
    case ConditioningNorm::l1: return "L1";
    case ConditioningNorm::l2: return "L2";
    case ConditioningNorm::linf: return "Linf";
  }
  return "?";
}

double belief_distance(const MassFunction& a, const MassFunction& b, ConditioningNorm norm) {
  if (!(a.frame() == b.frame())) throw FrameMismatch("distance between different frames");
  const auto ca = belief_coordinates(a), cb = belief_coordinates(b);
  if (ca.size() != cb.size()) throw DomainError("coordinate systems differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double d = std::abs(ca[i] - cb[i]);
    switch (norm) {
      case ConditioningNorm::l1: acc += d; break;
      case ConditioningNorm::l2: acc += d * d; break;
      case ConditioningNorm::linf: acc = std::max(acc, d); break;
    }
  }
  return norm == ConditioningNorm::l2 ? std::sqrt(acc) : acc;
}

GeometricConditioning geometric_condition(const MassFunction& bel, Mask a, ConditioningNorm norm) {
  const Frame& f = bel.frame();
  if (f.size() > kMaxConditioningFrame) {
    throw FrameTooLarge("geometric conditioning supports at most 10 outcomes");
  }
  if (!bel.normalized()) throw DomainError("geometric conditioning needs a normalized BF");
  if (a == 0 || !f.contains(a)) throw DomainError("conditioning event must be a nonempty subset");
  bool inside = true;
  for (const auto& [b, v] : bel.entries()) inside = inside && is_subset(b, a);
  if (inside) return {bel, 0.0};

  std::vector<Mask> columns;
  for (Mask c = 1; c <= a; ++c) {
    if (is_subset(c, a)) columns.push_back(c);
  }
  const Mask full = f.full();
  const Eigen::Index rows = static_cast<Eigen::Index>(full - 1);
  const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, k);
  for (Mask b = 1; b < full; ++b) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (is_subset(columns[j], b)) m(static_cast<Eigen::Index>(b - 1), j) = 1.0;
    }
  }
  const auto coords = belief_coordinates(bel);
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(coords.data(), rows);

  Eigen::VectorXd w = norm == ConditioningNorm::l2 ? solve_l2(m, target)
                                                   : solve_lp_norm(m, target, norm == ConditioningNorm::l1);
  w = w.cwiseMax(0.0);
  w /= w.sum();
  std::vector<MassFunction::Entry> entries;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (w(j) > 1e-15) entries.emplace_back(columns[j], w(j));
  }
  MassFunction result(f, entries);
  const double d = belief_distance(bel, result, norm);
  return {std::move(result), d};
}

std::vector<std::array<double, 3>> ternary_2monotone_vertices() {
  return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, -1.0}};
}

ToyPointCheck check_toy_point(const std::array<double, 3>& p, double tol) {
  ToyPointCheck c;
  c.x_slack = p[0];
  c.y_slack = p[1];
  c.z_slack = p[2] + std::min(p[0], p[1]);
  c.equality_residual = p[0] + p[1] + p[2] - 1.0;
  c.feasible = c.x_slack >= -tol && c.y_slack >= -tol && c.z_slack >= -tol &&
               std::abs(c.equality_residual) <= tol;
  c.interior = c.feasible && c.x_slack > tol && c.y_slack > tol && c.z_slack > tol;
  return c;
}

}  // namespace beliefkit
