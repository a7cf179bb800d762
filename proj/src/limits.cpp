#include "beliefkit/limits.hpp"

#include <algorithm>
#include <cmath>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

void require_binary(const MassFunction& m) {
  if (m.frame().size() != 2) throw DomainError("Bernoulli limit checks need a binary frame");
  if (!m.normalized()) throw DomainError("Bernoulli limit checks need a normalized BPA");
}

}  // namespace

Mask sample_focal(const MassFunction& m, Rng& rng) {
  const auto& e = m.entries();
  if (e.empty()) throw DomainError("cannot sample from an empty BPA");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = u(rng), cum = 0.0;
  for (const auto& [a, v] : e) {
    cum += v;
    if (r < cum) return a;
  }
  return e.back().first;
}

BernoulliDraw draw_bernoulli_counts(const MassFunction& m, std::size_t n, Rng& rng) {
  require_binary(m);
  const double pt = m.mass(1), pf = m.mass(2);
  BernoulliDraw d;
  using Binomial = std::binomial_distribution<std::size_t>;
  d.t = pt > 0 ? Binomial(n, std::min(1.0, pt))(rng) : 0;
  const std::size_t rest = n - d.t;
  const double cond = pt < 1 ? std::min(1.0, pf / (1.0 - pt)) : 0.0;
  d.f = rest > 0 && cond > 0 ? Binomial(rest, cond)(rng) : 0;
  d.both = n - d.t - d.f;
  return d;
}

LlnReport lln_band_check(const MassFunction& m, std::size_t n, std::size_t trials, double epsilon,
                         Rng& rng) {
  require_binary(m);
  if (n == 0 || trials == 0) throw DomainError("n and trials must be positive");
  LlnReport r;
  r.n = n;
  r.trials = trials;
  r.epsilon = epsilon;
  r.bel_t = m.belief(1);
  r.pl_t = m.plausibility(1);
  std::size_t covered = 0;
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < trials; ++i) {
    const auto d = draw_bernoulli_counts(m, n, rng);
    const double lo = static_cast<double>(d.t) / dn;
    const double hi = static_cast<double>(n - d.f) / dn;
    r.ordered = r.ordered && lo <= hi;
    r.mean_min += lo;
    r.mean_max += hi;
    if (lo >= r.bel_t - epsilon && hi <= r.pl_t + epsilon) ++covered;
  }
  r.coverage = static_cast<double>(covered) / static_cast<double>(trials);
  r.mean_min /= static_cast<double>(trials);
  r.mean_max /= static_cast<double>(trials);
  return r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int i = -30; i <= 30; ++i) g.push_back(0.1 * i);
  return g;
}

CltReport clt_check(const MassFunction& m, std::size_t n, std::size_t samples,
                    const std::vector<double>& alpha, Rng& rng) {
  require_binary(m);
  if (n < 100) throw DomainError("the CLT check needs n ≥ 100");
  if (samples == 0 || alpha.empty()) throw DomainError("samples and alpha grid must be nonempty");
  const double bel_t = m.belief(1), bel_f = m.belief(2);
  const double pl_t = 1.0 - bel_f;
  if (!(bel_f > 0.0 && bel_f < 1.0) || !(bel_t > 0.0 && bel_t < 1.0)) {
    throw DomainError("degenerate variance: Bel(T) and Bel(F) must lie in (0, 1)");
  }
  const double sn = std::sqrt(static_cast<double>(n));
  const double dn = static_cast<double>(n);
  const double s1 = std::sqrt(bel_f * (1.0 - bel_f)), s2 = std::sqrt(bel_t * (1.0 - bel_t));
  // The first statistic grows with Φ, so the worst selection is the largest
  // frequency; the second event is an upper set, so the smallest one.
  std::vector<double> z1, z2;
  z1.reserve(samples);
  z2.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto d = draw_bernoulli_counts(m, n, rng);
    z1.push_back(sn * (static_cast<double>(n - d.f) / dn - pl_t) / s1);
    z2.push_back(sn * (static_cast<double>(d.t) / dn - bel_t) / s2);
  }
  std::sort(z1.begin(), z1.end());
  std::sort(z2.begin(), z2.end());
  CltReport r;
  r.n = n;
  r.samples = samples;
  r.alpha = alpha;
  const double ds = static_cast<double>(samples);
  for (double a : alpha) {
    const double e1 = static_cast<double>(std::upper_bound(z1.begin(), z1.end(), a) - z1.begin()) / ds;
    const double e2 = static_cast<double>(z2.end() - std::lower_bound(z2.begin(), z2.end(), a)) / ds;
    r.upper_estimate.push_back(e1);
    r.lower_estimate.push_back(e2);
    r.upper_distance = std::max(r.upper_distance, std::abs(e1 - normal_cdf(a)));
    r.lower_distance = std::max(r.lower_distance, std::abs(e2 - (1.0 - normal_cdf(a))));
  }
  return r;
}

}  // namespace beliefkit
