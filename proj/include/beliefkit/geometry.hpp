#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "beliefkit/combination.hpp"
#include "beliefkit/mass_function.hpp"

namespace beliefkit {

/// Bel(A) for every nonempty A ⊊ Θ in mask order. For an unnormalized
/// mass function the believability b(A) = Σ_{B⊆A} m(B) is used instead,
/// over every A ⊊ Θ including ∅.
std::vector<double> belief_coordinates(const MassFunction& m);

/// Masses in mask order over nonempty subsets, with ∅ first when `m` is
/// unnormalized. Binary normalized case: [m(x), m(y), m(Θ)].
std::vector<double> mass_vector(const MassFunction& m);

/// Σ w_i m_i; weights must be nonnegative and sum to one.
MassFunction mixture(const std::vector<MassFunction>& ms, const std::vector<double>& weights);

enum class SubspaceRule { dempster, yager, disjunctive, conjunctive_unnorm, disjunctive_unnorm };

SubspaceRule parse_subspace_rule(std::string_view name);
std::string subspace_rule_name(SubspaceRule r);

struct SubspaceVertex {
  /// The categorical BF combined with bel.
  Mask categorical = 0;
  MassFunction combined;
  std::vector<double> masses;
  std::vector<double> coordinates;
};

struct ConditionalSubspace {
  SubspaceRule rule = SubspaceRule::dempster;
  std::vector<SubspaceVertex> vertices;
  /// Categoricals skipped because the combination is undefined.
  std::vector<std::string> notes;
};

/// Combinations of a binary `bel` with every categorical BF: x, y, Θ, and
/// also ∅ for the unnormalized rules.
ConditionalSubspace conditional_subspace(const MassFunction& bel, SubspaceRule rule);

/// ‖bel ⊙ (Σ α_i bel_i) − Σ α_i (bel ⊙ bel_i)‖_∞ over mass vectors.
double affine_commutation_check(Rule rule, const MassFunction& bel,
                                const std::vector<MassFunction>& bels,
                                const std::vector<double>& weights);

/// Point where the lines joining Bel′ and Bel ⊔ Bel′ meet the χ axis, for
/// every Bel′ with the given m′(x).
std::array<double, 2> disjunctive_focus(const MassFunction& bel, double m_prime_x);

struct LocusImage {
  double c = 0.0;
  /// (m(x), m(y)) of bel ⊛ m₂ for m₂(y) evenly spaced in [0, 1 − c].
  std::vector<std::array<double, 2>> points;
  double slope = 0.0;
  bool vertical = false;
  /// Largest distance of a point from the line through the end points.
  double collinearity_residual = 0.0;
};

struct YagerLociReport {
  std::vector<LocusImage> loci;
  /// −m₁(Θ)/m₁(x); undefined when m₁(x) = 0.
  bool slope_defined = false;
  double limit_slope = 0.0;
  /// Max − min slope over the loci.
  double slope_spread = 0.0;
};

/// Images under Yager combination with `bel` of the loci m₂(x) = c.
YagerLociReport yager_parallel_loci_check(const MassFunction& bel, const std::vector<double>& cs,
                                          std::size_t samples = 11);

enum class ConditioningNorm { l1, l2, linf };

ConditioningNorm parse_conditioning_norm(std::string_view name);
std::string conditioning_norm_name(ConditioningNorm n);

/// Largest frame geometric conditioning accepts.
inline constexpr std::size_t kMaxConditioningFrame = 10;

struct GeometricConditioning {
  MassFunction result;
  double distance = 0.0;
};

/// Distance between belief coordinates in the given norm.
double belief_distance(const MassFunction& a, const MassFunction& b, ConditioningNorm norm);

/// Closest BF with every focal element inside `a`, measured on belief
/// coordinates.
GeometricConditioning geometric_condition(const MassFunction& bel, Mask a, ConditioningNorm norm);

/// Vertices of {z ≥ −min(x, y), x, y ≥ 0, x + y + z = 1}.
std::vector<std::array<double, 3>> ternary_2monotone_vertices();

struct ToyPointCheck {
  bool feasible = false;
  /// Every inequality strict.
  bool interior = false;
  /// z + min(x, y), x, y, and x + y + z − 1.
  double z_slack = 0.0;
  double x_slack = 0.0;
  double y_slack = 0.0;
  double equality_residual = 0.0;
};

ToyPointCheck check_toy_point(const std::array<double, 3>& p, double tol = 1e-12);

}  // namespace beliefkit
