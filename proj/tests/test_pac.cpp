#include <cmath>
#include <set>

#include "beliefkit/errors.hpp"
#include "beliefkit/pac.hpp"
#include "doctest.h"

using namespace beliefkit;

namespace {

std::vector<double> skewed_marginal() { return {0.05, 0.1, 0.2, 0.15, 0.1, 0.2, 0.15, 0.05}; }

}  // namespace

TEST_CASE("bound and sample complexity") {
  CHECK(risk_bound(1, 10, 1.0 - 1e-15) <= 1e-15);
  const long double expect = (std::log(1000.0L) + std::log(100.0L)) / 1000.0L;
  CHECK(std::abs(risk_bound(1000, 1000, 0.01) - static_cast<double>(expect)) <= 1e-15);
  for (std::size_t h : {1, 16, 1000}) {
    for (double eps : {0.3, 0.05, 0.001}) {
      const auto n = sample_complexity(h, eps, 0.05);
      CHECK(risk_bound(h, n, 0.05) <= eps);
      if (n > 1) CHECK(risk_bound(h, n - 1, 0.05) > eps);
    }
  }
  CHECK_THROWS_AS(risk_bound(0, 10, 0.1), DomainError);
  CHECK_THROWS_AS(risk_bound(5, 10, 1.0), DomainError);
  CHECK_THROWS_AS(sample_complexity(5, 0.0, 0.1), DomainError);
}

TEST_CASE("threshold class") {
  const auto c = threshold_class(8);
  CHECK(c.size() == 16);
  std::set<std::vector<int>> distinct(c.labels.begin(), c.labels.end());
  CHECK(distinct.size() == 16);
  CHECK(c.labels[3] == std::vector<int>{0, 0, 0, 1, 1, 1, 1, 1});
}

TEST_CASE("risk is linear in the distribution") {
  const auto c = threshold_class(8);
  const auto p = labelled_distribution(c, 4, skewed_marginal());
  const auto q = labelled_distribution(c, 11, std::vector<double>(8, 0.125));
  Rng rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng);
    JointDistribution mix(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) mix[k] = a * p[k] + (1 - a) * q[k];
    for (std::size_t h = 0; h < c.size(); ++h) {
      const double lp = expected_risk(c, h, p), lq = expected_risk(c, h, q);
      const double lm = expected_risk(c, h, mix);
      CHECK(std::abs(lm - (a * lp + (1 - a) * lq)) <= 1e-12);
      CHECK(lm <= std::max(lp, lq) + 1e-12);
    }
  }
  CHECK(realizing_hypothesis(c, p) == 4);
  CHECK(erm(c, {{0, 0}, {5, 1}}) == 1);
}

TEST_CASE("realizable simulation respects the bound") {
  const auto c = threshold_class(8);
  const auto p = labelled_distribution(c, 5, skewed_marginal());
  const double eps = 0.1, delta = 0.05;
  const auto n = sample_complexity(c.size(), eps, delta);
  Rng rng(2);
  const auto r = simulate_realizable(c, p, n, eps, delta, 10000, rng);
  CHECK(r.within_bound);
  CHECK(r.frequency <= delta);
  CHECK(r.erm_always_consistent);

  const auto big = simulate_realizable(c, p, 10 * n, eps, delta, 10000, rng);
  CHECK(big.violations == 0);

  // Very few samples: the ERM often picks a poor threshold.
  const auto few = simulate_realizable(c, p, 2, eps, delta, 2000, rng);
  CHECK(few.frequency > delta);

  HypothesisClass single;
  single.x_count = 8;
  single.labels = {c.labels[5]};
  const auto s = simulate_realizable(single, p, 5, eps, delta, 100, rng);
  CHECK(s.violations == 0);

  JointDistribution noisy = p;
  noisy[0] = 0.025;
  noisy[1] = 0.025;
  CHECK_THROWS_AS(simulate_realizable(c, noisy, 10, eps, delta, 10, rng), NotRealizable);
}

TEST_CASE("credal simulation") {
  const auto c = threshold_class(8);
  Rng rng(3);
  const std::vector<std::size_t> ns{10, 100, 1000};

  const auto single = simulate_credal(c, {labelled_distribution(c, 5, skewed_marginal())}, ns, 0.1,
                                      2000, rng);
  CHECK(single.uniform_realizable);
  CHECK_FALSE(single.gap);

  // Same labelling under two marginals: uniformly realizable.
  const std::vector<JointDistribution> uniform{
      labelled_distribution(c, 5, skewed_marginal()),
      labelled_distribution(c, 5, std::vector<double>(8, 0.125))};
  const auto u = simulate_credal(c, uniform, ns, 0.05, 2000, rng);
  CHECK(u.uniform_realizable);
  REQUIRE(u.tails.size() == 3);
  CHECK(u.tails[1].tail <= u.tails[0].tail);
  CHECK(u.tails[2].tail <= u.tails[1].tail);
  CHECK(u.tails[2].tail <= 0.01);

  // Each vertex has its own zero-risk threshold and they disagree on mass.
  const std::vector<JointDistribution> adversarial{
      labelled_distribution(c, 2, std::vector<double>(8, 0.125)),
      labelled_distribution(c, 6, std::vector<double>(8, 0.125))};
  const auto a = simulate_credal(c, adversarial, ns, 0.05, 2000, rng);
  CHECK(a.vertex_realizable == std::vector<bool>{true, true});
  CHECK_FALSE(a.uniform_realizable);
  CHECK(a.gap);
  CHECK(a.tails[2].tail >= 0.99);
  CHECK(a.tails[2].mean_worst_risk >= 0.25 - 1e-12);

  JointDistribution flat(16, 1.0 / 16);
  CHECK_THROWS_AS(simulate_credal(c, {flat}, ns, 0.1, 10, rng), NotRealizable);
}
