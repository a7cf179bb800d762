#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "beliefkit/mass_function.hpp"
#include "beliefkit/multivariate.hpp"

namespace beliefkit {

enum class LikelihoodRule { dempster, conjunctive, disjunctive };

LikelihoodRule parse_likelihood_rule(std::string_view name);

/// Combination of the cylindrical extensions of the per-trial BPAs on the
/// joint frame. Needs a joint frame of at most 64 outcomes.
MassFunction joint_belief_function(const std::vector<MassFunction>& trials, LikelihoodRule rule);

/// Belief of a Cartesian event. Uses the product-form factorization, so it
/// works for any number of trials.
double belief_likelihood(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                         const ProductFocalElement& event);
/// Belief of an arbitrary joint event (mask over the joint frame). The
/// disjunctive rule factorizes through inner projections; the conjunctive
/// rules fall back to brute force, capped at 24 joint outcomes.
double belief_likelihood(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                         Mask joint_event);
/// Belief of the complement of a single joint outcome, factorized.
double belief_of_tuple_complement(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                                  const std::vector<std::size_t>& tuple);

struct LowerUpper {
  double lower = 0.0;
  double upper = 0.0;
  /// Set when some frame is not binary: the upper value then rests on the
  /// plausibility product rather than on the binary derivation.
  bool conjectural = false;
};

/// Lower = product of Bel_i({x_i}), upper = product of Pl_i({x_i}).
LowerUpper lower_upper_likelihood(const std::vector<MassFunction>& trials,
                                  const std::vector<std::size_t>& sample);

struct SurfacePoint {
  double p = 0.0;
  double q = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct BernoulliSurface {
  std::size_t k = 0;
  std::size_t n = 0;
  double step = 0.0;
  std::vector<SurfacePoint> points;
  SurfacePoint lower_argmax;
  SurfacePoint upper_argmax;
};

/// Grid over {p,q ≥ 0, p+q ≤ 1} with p = i·step, q = j·step; 1/step must be
/// an integer. Ties in the argmax keep the first point in (i, j) order.
BernoulliSurface bernoulli_likelihood_surface(std::size_t k, std::size_t n, double step,
                                              bool keep_points = true);

struct PropertyCheck {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double max_deviation = 0.0;

  void record(double deviation, double tol);
};

struct FactorizationReport {
  std::string suite;
  std::size_t n = 0;
  std::size_t instances = 0;
  std::vector<PropertyCheck> properties;
  double seconds = 0.0;

  bool passed() const;
  const PropertyCheck& property(std::string_view name) const;
};

/// Random full-support BPAs per trial (frame sizes given per trial, empty
/// means binary); compares the factorized formulas against the combined
/// joint BPA: singleton beliefs, Cartesian-event beliefs, product masses,
/// focal counts, and Dempster = conjunctive.
FactorizationReport check_conjunctive_factorization(std::size_t n, std::size_t instances,
                                                    const std::vector<std::size_t>& frame_sizes,
                                                    std::uint64_t seed, double tol = 1e-12);

/// Binary trials under the disjunctive rule: focal count 2^n+1, masses of
/// tuple complements, complement beliefs, complement plausibilities = 1.
FactorizationReport check_disjunctive_factorization(std::size_t n, std::size_t instances,
                                                    std::uint64_t seed, double tol = 1e-12);

struct ConjectureReport {
  std::size_t n = 0;
  std::size_t instances = 0;
  std::size_t tuples_checked = 0;
  /// Largest |Pl({x}) - product of Pl_i({x_i})| over random binary cases.
  double max_deviation = 0.0;
  std::size_t counterexamples = 0;
  /// Largest |Pl((T,...,T)) - (1-q)^n| over equidistributed cases.
  double equidistributed_max_deviation = 0.0;
  double seconds = 0.0;
};

ConjectureReport check_plausibility_conjecture(std::size_t n, std::size_t instances,
                                               std::uint64_t seed,
                                               double counterexample_tol = 1e-9);

}  // namespace beliefkit
