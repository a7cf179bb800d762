#pragma once

#include <cstddef>
#include <vector>

#include "beliefkit/random.hpp"

namespace beliefkit {

/// ε = (ln|H| + ln(1/δ)) / n.
double risk_bound(std::size_t h_count, std::size_t n, double delta);
/// Smallest n with risk_bound(h_count, n, δ) ≤ ε.
std::size_t sample_complexity(std::size_t h_count, double epsilon, double delta);

/// Finite class of maps from {0..x_count−1} to {0..y_count−1}.
struct HypothesisClass {
  std::size_t x_count = 0;
  std::size_t y_count = 2;
  /// labels[h][x].
  std::vector<std::vector<int>> labels;

  std::size_t size() const { return labels.size(); }
  void validate() const;
};

/// [x ≥ t] and [x < t] for t = 0..points−1: 2·points distinct hypotheses.
HypothesisClass threshold_class(std::size_t points);

/// Distribution over pairs (x, y), indexed x·y_count + y.
using JointDistribution = std::vector<double>;

/// Pairs (x, h(x)) with x drawn from px.
JointDistribution labelled_distribution(const HypothesisClass& cls, std::size_t h,
                                        const std::vector<double>& px);

double expected_risk(const HypothesisClass& cls, std::size_t h, const JointDistribution& p);

/// Index of a hypothesis with zero risk under p, or size() if none.
std::size_t realizing_hypothesis(const HypothesisClass& cls, const JointDistribution& p,
                                 double tol = 1e-15);

/// Lowest-index minimizer of the empirical risk on (x, y) samples.
std::size_t erm(const HypothesisClass& cls, const std::vector<std::pair<int, int>>& samples,
                double* empirical_risk = nullptr);

std::vector<std::pair<int, int>> draw_samples(const JointDistribution& p, std::size_t y_count,
                                              std::size_t n, Rng& rng);

struct RealizableReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t violations = 0;
  double frequency = 0.0;
  /// √(δ(1 − δ)/trials).
  double sigma = 0.0;
  bool within_bound = false;
  /// The ERM had zero empirical risk in every trial.
  bool erm_always_consistent = true;
};

/// Frequency of L(ĥ) > ε over independent training sets; throws
/// NotRealizable when no hypothesis has zero risk.
RealizableReport simulate_realizable(const HypothesisClass& cls, const JointDistribution& p,
                                     std::size_t n, double epsilon, double delta,
                                     std::size_t trials, Rng& rng);

struct CredalTail {
  std::size_t n = 0;
  /// Share of trials with max_p L_p(ĥ) > ε.
  double tail = 0.0;
  double mean_worst_risk = 0.0;
};

struct CredalReport {
  /// Vertices with a zero-risk hypothesis.
  std::vector<bool> vertex_realizable;
  /// One hypothesis has zero risk at every vertex.
  bool uniform_realizable = false;
  /// No uniform realizer exists, so the tail need not vanish.
  bool gap = false;
  std::vector<CredalTail> tails;
};

/// Training distributions are Dirichlet(1) mixtures of the vertices; the
/// worst-case risk of the ERM is evaluated at the vertices.
CredalReport simulate_credal(const HypothesisClass& cls,
                             const std::vector<JointDistribution>& vertices,
                             const std::vector<std::size_t>& ns, double epsilon,
                             std::size_t trials, Rng& rng);

}  // namespace beliefkit
