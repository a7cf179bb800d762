#pragma once

#include <cstddef>
#include <vector>

#include "beliefkit/mass_function.hpp"
#include "beliefkit/random.hpp"

namespace beliefkit {

/// Focal element drawn with probability m(A).
Mask sample_focal(const MassFunction& m, Rng& rng);

/// Counts of K = {T}, K = {F} and K = Θ among n draws from a binary BPA,
/// where T is outcome 0.
struct BernoulliDraw {
  std::size_t t = 0;
  std::size_t f = 0;
  std::size_t both = 0;
};

BernoulliDraw draw_bernoulli_counts(const MassFunction& m, std::size_t n, Rng& rng);

struct LlnReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  double epsilon = 0.0;
  double bel_t = 0.0;
  double pl_t = 0.0;
  /// Fraction of trials with [min, max] ⊆ [Bel(T) − ε, Pl(T) + ε].
  double coverage = 0.0;
  double mean_min = 0.0;
  double mean_max = 0.0;
  /// min ≤ max held in every trial.
  bool ordered = true;
};

/// min = #{K = {T}}/n, max = #{K ≠ {F}}/n per trial. T is outcome 0.
LlnReport lln_band_check(const MassFunction& m, std::size_t n, std::size_t trials, double epsilon,
                         Rng& rng);

struct CltReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::vector<double> alpha;
  /// Share of samples where every selection satisfies
  /// √n(Φ − Pl(T))/√(Bel(F)(1 − Bel(F))) ≤ α, against 𝒩(α).
  std::vector<double> upper_estimate;
  /// Share where every selection satisfies
  /// √n(Φ − Bel(T))/√(Bel(T)(1 − Bel(T))) ≥ α, against 1 − 𝒩(α).
  std::vector<double> lower_estimate;
  double upper_distance = 0.0;
  double lower_distance = 0.0;
};

double normal_cdf(double x);

/// −3 to 3 in steps of 0.1.
std::vector<double> default_alpha_grid();

CltReport clt_check(const MassFunction& m, std::size_t n, std::size_t samples,
                    const std::vector<double>& alpha, Rng& rng);

}  // namespace beliefkit
