#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beliefkit {

/// One observation; an absent `y` is a missing label, treated as a vacuous
/// observation.
struct RegressionSample {
  double x = 0.0;
  std::optional<int> y;
};

struct BetaParams {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 1.0;
};

enum class FitTarget { lower, upper };

FitTarget parse_fit_target(std::string_view name);

/// |β₀ + β₁x| is clamped to this before exponentiating.
inline constexpr double kExponentClamp = 500.0;

struct LogitLinks {
  double p = 0.0;
  double q = 0.0;
};

/// p = σ(β₀+β₁x), q = β₂(1 − p).
LogitLinks logit_links(const BetaParams& params, double x);

double lower_log_likelihood(const BetaParams& params, const std::vector<RegressionSample>& data);
double upper_log_likelihood(const BetaParams& params, const std::vector<RegressionSample>& data);
double log_likelihood(FitTarget target, const BetaParams& params,
                      const std::vector<RegressionSample>& data);

/// Analytic gradient in (β₀, β₁, β₂).
std::array<double, 3> log_likelihood_gradient(FitTarget target, const BetaParams& params,
                                              const std::vector<RegressionSample>& data);

/// Multipliers for the constraints β₂ − 1 ≤ 0 (mu0), −β₂ < 0 (mu_positive)
/// and −β₂ − e^{β₀+β₁x_i} ≤ 0 (mu, one per sample).
struct KktMultipliers {
  double mu0 = 0.0;
  double mu_positive = 0.0;
  std::vector<double> mu;
};

struct KktReport {
  /// ∇f − Σ μ_j ∇g_j, one entry per coordinate.
  std::array<double, 3> stationarity{};
  double primal = 0.0;
  double dual = 0.0;
  double slackness = 0.0;
  /// Max absolute violation over all of the above.
  double residual = 0.0;
};

KktReport kkt_residuals(FitTarget target, const BetaParams& params, const KktMultipliers& mult,
                        const std::vector<RegressionSample>& data);

struct FitConfig {
  FitTarget target = FitTarget::lower;
  /// Hold β₂ at 1 and fit (β₀, β₁) only.
  bool fix_beta2 = false;
  double tau_initial = 1e-4;
  double tau_final = 1e-10;
  double tau_factor = 0.1;
  double gradient_tol = 1e-8;
  double kkt_tol = 1e-6;
  std::size_t max_iterations = 2000;
};

struct FitResult {
  BetaParams params;
  double objective = 0.0;
  KktMultipliers multipliers;
  KktReport kkt;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective value after every accepted iterate.
  std::vector<double> objective_trace;
  std::vector<std::string> diagnostics;
};

/// Log-barrier Newton fit with a decreasing barrier weight. A run that ends
/// without meeting the tolerances is returned with `converged` false.
FitResult fit_logistic(const std::vector<RegressionSample>& data, const FitConfig& config = {});

/// Classical logistic regression by Newton's method, used for initialization.
std::array<double, 2> classical_logistic(const std::vector<RegressionSample>& data,
                                         std::size_t max_iterations = 100);

struct BeliefInterval {
  double bel_T = 0.0;
  double pl_T = 0.0;
  bool from_converged_fit = false;
};

struct IntervalPrediction {
  BeliefInterval lower;
  BeliefInterval upper;
};

/// Bel(T) = p and Pl(T) = 1 − q under each fitted model.
IntervalPrediction predict_interval(const FitResult& lower_fit, const FitResult& upper_fit,
                                    double x);

}  // namespace beliefkit
