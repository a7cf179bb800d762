#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beliefkit/mass_function.hpp"
#include "beliefkit/random.hpp"

namespace beliefkit {

/// Ht: Σ log(1/Q(A)); Hn: Shannon entropy of m; Hd: Σ m(A) log|A|;
/// HBel, HPl: Shannon entropy of the Bel and Pl vectors.
enum class EntropyKind { Ht, Hn, Hd, HBel, HPl };

EntropyKind parse_entropy_kind(std::string_view name);
std::string entropy_kind_name(EntropyKind k);

/// Floor applied to arguments of logarithms and reciprocals.
inline constexpr double kLogFloor = 1e-12;

double entropy(const MassFunction& m, EntropyKind kind);
/// ∂H/∂m(A) for every nonempty A, indexed by mask − 1.
std::vector<double> entropy_gradient(const MassFunction& m, EntropyKind kind);

struct ConcavityReport {
  std::size_t pairs = 0;
  /// Largest αH(m₁) + (1−α)H(m₂) − H(αm₁ + (1−α)m₂), floored at 0.
  double max_violation = 0.0;
};

/// Random full-support pairs and uniform α.
ConcavityReport concavity_check(EntropyKind kind, const Frame& frame, std::size_t pairs, Rng& rng);

inline constexpr std::size_t kMaxMaxentFrame = 16;
/// The dense Newton solver handles at most this many joint outcomes.
inline constexpr std::size_t kMaxMaxentFitFrame = 10;

/// Joint frame X × C with outcome index x·K + k and label "x|c".
struct MaxentProblem {
  std::vector<std::string> x_values;
  std::vector<std::string> classes;
  Frame frame;
  std::vector<double> histogram;
  /// features[m][outcome].
  std::vector<std::vector<double>> features;
  EntropyKind entropy = EntropyKind::HBel;

  std::size_t outcome(std::size_t x, std::size_t k) const { return x * classes.size() + k; }
  void validate() const;
};

MaxentProblem make_maxent_problem(std::vector<std::string> x_values,
                                  std::vector<std::string> classes, std::vector<double> histogram,
                                  std::vector<std::vector<double>> features, EntropyKind entropy);

/// Relative frequencies of (x, class) pairs in a training set.
std::vector<double> histogram_from_samples(const std::vector<std::string>& x_values,
                                           const std::vector<std::string>& classes,
                                           const std::vector<std::pair<std::string, std::string>>& samples);

double empirical_expectation(const MaxentProblem& problem, std::size_t m_index);

struct ConstraintValue {
  /// Σ Bel({θ})φ − Ê[φ].
  double g1 = 0.0;
  /// Σ φ (p̂ − Pl({θ})).
  double g2 = 0.0;
};

std::vector<ConstraintValue> constraint_values(const MaxentProblem& problem, const MassFunction& m);

/// The histogram as a Bayesian BPA; always feasible.
MassFunction histogram_bpa(const MaxentProblem& problem);

struct MaxentConfig {
  double tol = 1e-10;
  double kkt_tol = 1e-6;
  std::size_t max_iterations = 300;
};

struct MaxentKkt {
  double stationarity = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double slackness = 0.0;
  double residual = 0.0;
};

struct MaxentFit {
  MassFunction mass;
  double entropy = 0.0;
  /// Multipliers of g¹ ≤ 0 and g² ≤ 0, of Σm = 1, and of m ≥ 0 (mask − 1).
  std::vector<double> mu1;
  std::vector<double> mu2;
  double nu = 0.0;
  std::vector<double> z;
  MaxentKkt kkt;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<std::string> diagnostics;
};

/// Primal-dual interior point over the mass simplex. Ht is convex in m, so
/// its curvature is dropped and the result is only a stationary point.
MaxentFit fit_maxent(const MaxentProblem& problem, const MaxentConfig& config = {});

struct ClassicalMaxent {
  std::vector<double> lambda;
  /// conditional[x][k] = p(C_k | x).
  std::vector<std::vector<double>> conditional;
  double moment_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  /// p̂(x) p(C_k | x) by outcome index.
  std::vector<double> joint(const MaxentProblem& problem) const;
};

/// Log-linear model fitted by Newton's method on the dual.
ClassicalMaxent classical_maxent(const MaxentProblem& problem, double tol = 1e-10,
                                 std::size_t max_iterations = 200);

/// ½ (Σ_θ |m({θ}) − p(θ)| + mass on non-singletons).
double total_variation(const MassFunction& m, const std::vector<double>& p);

}  // namespace beliefkit
