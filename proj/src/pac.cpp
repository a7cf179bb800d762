#include "beliefkit/pac.hpp"

#include <cmath>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

void check_distribution(const HypothesisClass& cls, const JointDistribution& p) {
  if (p.size() != cls.x_count * cls.y_count) throw DomainError("distribution size does not match X × Y");
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw DomainError("probabilities must be nonnegative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-9) throw NormalizationError("distribution must sum to one");
}

}  // namespace

double risk_bound(std::size_t h_count, std::size_t n, double delta) {
  if (h_count < 1 || n < 1) throw DomainError("|H| and n must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("δ must lie in (0, 1)");
  return (std::log(static_cast<double>(h_count)) + std::log(1.0 / delta)) / static_cast<double>(n);
}

std::size_t sample_complexity(std::size_t h_count, double epsilon, double delta) {
  if (h_count < 1) throw DomainError("|H| must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("δ must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw DomainError("ε must be positive");
  const double raw = (std::log(static_cast<double>(h_count)) + std::log(1.0 / delta)) / epsilon;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

void HypothesisClass::validate() const {
  if (labels.empty()) throw DomainError("hypothesis class is empty");
  if (x_count == 0 || y_count == 0) throw DomainError("X and Y must be nonempty");
  for (const auto& h : labels) {
    if (h.size() != x_count) throw DomainError("hypothesis does not cover X");
    for (int y : h) {
      if (y < 0 || static_cast<std::size_t>(y) >= y_count) throw DomainError("label outside Y");
    }
  }
}

HypothesisClass threshold_class(std::size_t points) {
  HypothesisClass c;
  c.x_count = points;
  c.y_count = 2;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t t = 0; t < points; ++t) {
      std::vector<int> h(points);
      for (std::size_t x = 0; x < points; ++x) h[x] = dir == 0 ? (x >= t) : (x < t);
      c.labels.push_back(std::move(h));
    }
  }
  return c;
}

JointDistribution labelled_distribution(const HypothesisClass& cls, std::size_t h,
                                        const std::vector<double>& px) {
  if (px.size() != cls.x_count) throw DomainError("marginal size does not match X");
  JointDistribution p(cls.x_count * cls.y_count, 0.0);
  for (std::size_t x = 0; x < cls.x_count; ++x) {
    p[x * cls.y_count + static_cast<std::size_t>(cls.labels.at(h)[x])] = px[x];
  }
  return p;
}

double expected_risk(const HypothesisClass& cls, std::size_t h, const JointDistribution& p) {
  double r = 0.0;
  for (std::size_t x = 0; x < cls.x_count; ++x) {
    for (std::size_t y = 0; y < cls.y_count; ++y) {
      if (static_cast<std::size_t>(cls.labels[h][x]) != y) r += p[x * cls.y_count + y];
    }
  }
  return r;
}

std::size_t realizing_hypothesis(const HypothesisClass& cls, const JointDistribution& p, double tol) {
  for (std::size_t h = 0; h < cls.size(); ++h) {
    if (expected_risk(cls, h, p) <= tol) return h;
  }
  return cls.size();
}

std::size_t erm(const HypothesisClass& cls, const std::vector<std::pair<int, int>>& samples,
                double* empirical_risk) {
  std::size_t best = 0, best_errors = samples.size() + 1;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    std::size_t errors = 0;
    for (const auto& [x, y] : samples) errors += cls.labels[h][static_cast<std::size_t>(x)] != y;
    if (errors < best_errors) {
      best = h;
      best_errors = errors;
    }
  }
  if (empirical_risk) {
    *empirical_risk = samples.empty() ? 0.0
                                      : static_cast<double>(best_errors) / static_cast<double>(samples.size());
  }
  return best;
}

std::vector<std::pair<int, int>> draw_samples(const JointDistribution& p, std::size_t y_count,
                                              std::size_t n, Rng& rng) {
  std::discrete_distribution<std::size_t> d(p.begin(), p.end());
  std::vector<std::pair<int, int>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = d(rng);
    out.emplace_back(static_cast<int>(k / y_count), static_cast<int>(k % y_count));
  }
  return out;
}

RealizableReport simulate_realizable(const HypothesisClass& cls, const JointDistribution& p,
                                     std::size_t n, double epsilon, double delta,
                                     std::size_t trials, Rng& rng) {
  cls.validate();
  check_distribution(cls, p);
  if (realizing_hypothesis(cls, p) == cls.size()) {
    throw NotRealizable("no hypothesis has zero expected risk");
  }
  if (trials == 0) throw DomainError("trials must be positive");
  RealizableReport r;
  r.n = n;
  r.trials = trials;
  r.epsilon = epsilon;
  r.delta = delta;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto s = draw_samples(p, cls.y_count, n, rng);
    double emp = 0.0;
    const std::size_t h = erm(cls, s, &emp);
    r.erm_always_consistent = r.erm_always_consistent && emp == 0.0;
    if (expected_risk(cls, h, p) > epsilon) ++r.violations;
  }
  r.frequency = static_cast<double>(r.violations) / static_cast<double>(trials);
  r.sigma = std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
  r.within_bound = r.frequency <= delta + 3.0 * r.sigma;
  return r;
}

CredalReport simulate_credal(const HypothesisClass& cls,
                             const std::vector<JointDistribution>& vertices,
                             const std::vector<std::size_t>& ns, double epsilon,
                             std::size_t trials, Rng& rng) {
  cls.validate();
  if (vertices.empty()) throw DomainError("credal set needs at least one vertex");
  if (trials == 0) throw DomainError("trials must be positive");
  CredalReport r;
  bool any = false;
  for (const auto& v : vertices) {
    check_distribution(cls, v);
    const bool ok = realizing_hypothesis(cls, v) < cls.size();
    r.vertex_realizable.push_back(ok);
    any = any || ok;
  }
  if (!any) throw NotRealizable("no credal vertex is realizable");
  for (std::size_t h = 0; h < cls.size() && !r.uniform_realizable; ++h) {
    bool all = true;
    for (const auto& v : vertices) all = all && expected_risk(cls, h, v) <= 1e-15;
    r.uniform_realizable = all;
  }
  r.gap = !r.uniform_realizable;

  for (std::size_t n : ns) {
    CredalTail tail;
    tail.n = n;
    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto w = dirichlet(rng, vertices.size());
      JointDistribution mix(vertices[0].size(), 0.0);
      for (std::size_t k = 0; k < vertices.size(); ++k) {
        for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += w[k] * vertices[k][i];
      }
      const std::size_t h = erm(cls, draw_samples(mix, cls.y_count, n, rng));
      double worst = 0.0;
      for (const auto& v : vertices) worst = std::max(worst, expected_risk(cls, h, v));
      tail.mean_worst_risk += worst;
      if (worst > epsilon) ++exceed;
    }
    tail.tail = static_cast<double>(exceed) / static_cast<double>(trials);
    tail.mean_worst_risk /= static_cast<double>(trials);
    r.tails.push_back(tail);
  }
  return r;
}

}  // namespace beliefkit
