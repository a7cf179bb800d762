#include "beliefkit/likelihood.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "beliefkit/combination.hpp"
#include "beliefkit/errors.hpp"
#include "beliefkit/random.hpp"

namespace beliefkit {

namespace {

void require_trials(const std::vector<MassFunction>& trials) {
  if (trials.empty()) throw DomainError("belief likelihood needs at least one trial");
  for (const auto& m : trials) {
    if (!m.normalized()) throw DomainError("trial BPAs must be normalized");
  }
}

ProductFrame product_of(const std::vector<MassFunction>& trials) {
  std::vector<Frame> frames;
  for (const auto& m : trials) frames.push_back(m.frame());
  return ProductFrame(frames);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Frame binary_frame() { return Frame({"T", "F"}); }

// Cartesian events enumerated as one nonempty factor per trial.
template <class F>
void for_each_cartesian(const std::vector<MassFunction>& trials, F f) {
  std::vector<Mask> factors(trials.size(), 1);
  while (true) {
    f(ProductFocalElement{factors});
    std::size_t k = 0;
    while (k < trials.size()) {
      if (factors[k] < trials[k].frame().full()) {
        ++factors[k];
        break;
      }
      factors[k] = 1;
      ++k;
    }
    if (k == trials.size()) return;
  }
}

}  // namespace

LikelihoodRule parse_likelihood_rule(std::string_view name) {
  if (name == "dempster") return LikelihoodRule::dempster;
  if (name == "conjunctive") return LikelihoodRule::conjunctive;
  if (name == "disjunctive") return LikelihoodRule::disjunctive;
  throw DomainError("belief likelihoods support dempster, conjunctive and disjunctive rules");
}

MassFunction joint_belief_function(const std::vector<MassFunction>& trials, LikelihoodRule rule) {
  require_trials(trials);
  const ProductFrame pf = product_of(trials);
  std::vector<MassFunction> ext;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    ext.push_back(vacuous_extension(trials[k], pf, k));
  }
  const Rule r = rule == LikelihoodRule::disjunctive  ? Rule::disjunctive
                 : rule == LikelihoodRule::dempster ? Rule::dempster
                                                    : Rule::conjunctive;
  return combine_all(r, ext);
}

double belief_likelihood(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                         const ProductFocalElement& event) {
  require_trials(trials);
  if (event.factors.size() != trials.size()) throw DomainError("event arity mismatch");
  bool all_full = true;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    if (!trials[k].frame().contains(event.factors[k])) throw DomainError("factor outside frame");
    all_full = all_full && event.factors[k] == trials[k].frame().full();
  }
  if (rule == LikelihoodRule::disjunctive) {
    // Focal elements are unions of cylinders; a union of cylinders lies in a
    // proper Cartesian product only when there is a single trial.
    if (all_full) return 1.0;
    if (trials.size() == 1) return trials[0].belief(event.factors[0]);
    return 0.0;
  }
  double b = 1.0;
  for (std::size_t k = 0; k < trials.size(); ++k) b *= trials[k].belief(event.factors[k]);
  return b;
}

double belief_likelihood(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                         Mask joint_event) {
  require_trials(trials);
  const ProductFrame pf = product_of(trials);
  if (!pf.joint_representable()) throw IntractableInstance("joint frame too large for a mask");
  if (!pf.joint().contains(joint_event)) throw DomainError("event outside the joint frame");
  if (rule == LikelihoodRule::disjunctive) {
    // Bel of a disjunctive combination is the product of the extended
    // beliefs, and an extended belief only sees the inner projection.
    double b = 1.0;
    for (std::size_t k = 0; k < trials.size(); ++k) {
      Mask inner = 0;
      for (std::size_t x = 0; x < trials[k].frame().size(); ++x) {
        const Mask cyl = pf.cylinder(k, Mask{1} << x);
        if (is_subset(cyl, joint_event)) inner |= Mask{1} << x;
      }
      b *= trials[k].belief(inner);
    }
    return b;
  }
  if (pf.outcome_count() > double(kMaxDenseFrame)) {
    throw IntractableInstance("brute-force belief likelihood limited to 24 joint outcomes");
  }
  return joint_belief_function(trials, rule).belief(joint_event);
}

double belief_of_tuple_complement(const std::vector<MassFunction>& trials, LikelihoodRule rule,
                                  const std::vector<std::size_t>& tuple) {
  require_trials(trials);
  if (tuple.size() != trials.size()) throw DomainError("tuple arity mismatch");
  double prod = 1.0;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const Mask x = Mask{1} << tuple[k];
    if (rule == LikelihoodRule::disjunctive) {
      prod *= trials[k].belief(trials[k].frame().full() & ~x);
    } else {
      prod *= trials[k].plausibility(x);
    }
  }
  return rule == LikelihoodRule::disjunctive ? prod : 1.0 - prod;
}

LowerUpper lower_upper_likelihood(const std::vector<MassFunction>& trials,
                                  const std::vector<std::size_t>& sample) {
  require_trials(trials);
  if (sample.size() != trials.size()) throw DomainError("sample length differs from trial count");
  LowerUpper lu{1.0, 1.0, false};
  for (std::size_t k = 0; k < trials.size(); ++k) {
    if (sample[k] >= trials[k].frame().size()) throw DomainError("sample outcome out of range");
    const Mask x = Mask{1} << sample[k];
    lu.lower *= trials[k].mass(x);
    lu.upper *= trials[k].plausibility(x);
    if (trials[k].frame().size() != 2) lu.conjectural = true;
  }
  return lu;
}

BernoulliSurface bernoulli_likelihood_surface(std::size_t k, std::size_t n, double step,
                                              bool keep_points) {
  if (k > n) throw DomainError("successes exceed trials");
  if (!(step > 0.0) || step > 1.0) throw DomainError("grid step must lie in (0,1]");
  const double steps = 1.0 / step;
  const auto N = static_cast<std::size_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(N)) > 1e-9 * steps) {
    throw DomainError("1/step must be an integer");
  }
  BernoulliSurface s;
  s.k = k;
  s.n = n;
  s.step = step;
  const double dk = static_cast<double>(k);
  const double dnk = static_cast<double>(n - k);
  bool first = true;
  for (std::size_t i = 0; i <= N; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(N);
    for (std::size_t j = 0; i + j <= N; ++j) {
      const double q = static_cast<double>(j) / static_cast<double>(N);
      SurfacePoint pt{p, q, std::pow(p, dk) * std::pow(q, dnk),
                      std::pow(1.0 - q, dk) * std::pow(1.0 - p, dnk)};
      if (first || pt.lower > s.lower_argmax.lower) s.lower_argmax = pt;
      if (first || pt.upper > s.upper_argmax.upper) s.upper_argmax = pt;
      first = false;
      if (keep_points) s.points.push_back(pt);
    }
  }
  return s;
}

void PropertyCheck::record(double deviation, double tol) {
  ++checks;
  if (!(deviation <= tol)) ++violations;
  if (!(deviation <= max_deviation)) max_deviation = deviation;
}

bool FactorizationReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyCheck& p) { return p.violations == 0; });
}

const PropertyCheck& FactorizationReport::property(std::string_view name) const {
  for (const auto& p : properties) {
    if (p.name == name) return p;
  }
  throw DomainError("no property named " + std::string(name));
}

FactorizationReport check_conjunctive_factorization(std::size_t n, std::size_t instances,
                                                    const std::vector<std::size_t>& frame_sizes,
                                                    std::uint64_t seed, double tol) {
  if (!frame_sizes.empty() && frame_sizes.size() != n) {
    throw DomainError("frame_sizes must list one size per trial");
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Frame> frames;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t size = frame_sizes.empty() ? 2 : frame_sizes[k];
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < size; ++x) labels.push_back("t" + std::to_string(k) + "_" + std::to_string(x));
    frames.emplace_back(labels);
  }
  const ProductFrame pf(frames);
  if (pf.outcome_count() > double(kMaxDenseFrame)) {
    throw IntractableInstance("dense factorization oracle limited to 24 joint outcomes");
  }

  FactorizationReport rep;
  rep.suite = "conjunctive";
  rep.n = n;
  PropertyCheck singleton{"singleton_beliefs"}, cartesian{"cartesian_events"},
      masses{"product_masses"}, count{"focal_count"}, dempster{"dempster_equals_conjunctive"},
      factorized{"factorized_path"};
  Rng rng(seed);
  for (std::size_t it = 0; it < instances; ++it) {
    std::vector<MassFunction> trials;
    for (const auto& f : frames) trials.push_back(random_full_mass(f, rng));
    const MassFunction joint = joint_belief_function(trials, LikelihoodRule::conjunctive);
    const MassFunction joint_d = joint_belief_function(trials, LikelihoodRule::dempster);
    dempster.record(max_abs_diff(joint, joint_d), tol);

    double expected_count = 1.0;
    for (const auto& m : trials) expected_count *= static_cast<double>(m.focal_count());
    count.record(std::abs(static_cast<double>(joint.focal_count()) - expected_count), 0.0);

    const auto total = static_cast<std::size_t>(pf.outcome_count());
    for (std::size_t t = 0; t < total; ++t) {
      const auto tuple = pf.decode(t);
      double prod = 1.0;
      for (std::size_t k = 0; k < n; ++k) prod *= trials[k].mass(Mask{1} << tuple[k]);
      singleton.record(std::abs(joint.belief(Mask{1} << t) - prod), tol);
    }
    for_each_cartesian(trials, [&](const ProductFocalElement& e) {
      const Mask a = pf.product(e);
      double prod_bel = 1.0;
      double prod_mass = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        prod_bel *= trials[k].belief(e.factors[k]);
        prod_mass *= trials[k].mass(e.factors[k]);
      }
      cartesian.record(std::abs(joint.belief(a) - prod_bel), tol);
      masses.record(std::abs(joint.mass(a) - prod_mass), tol);
      factorized.record(
          std::abs(belief_likelihood(trials, LikelihoodRule::conjunctive, e) - joint.belief(a)),
          tol);
    });
  }
  rep.instances = instances;
  rep.properties = {singleton, cartesian, masses, count, dempster, factorized};
  rep.seconds = seconds_since(t0);
  return rep;
}

FactorizationReport check_disjunctive_factorization(std::size_t n, std::size_t instances,
                                                    std::uint64_t seed, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Frame> frames(n, binary_frame());
  const ProductFrame pf(frames);
  if (pf.outcome_count() > double(kMaxDenseFrame)) {
    throw IntractableInstance("dense factorization oracle limited to 24 joint outcomes");
  }
  FactorizationReport rep;
  rep.suite = "disjunctive";
  rep.n = n;
  PropertyCheck count{"focal_count"}, masses{"complement_masses"},
      beliefs{"complement_beliefs"}, plaus{"complement_plausibility"},
      factorized{"factorized_path"};
  Rng rng(seed);
  const auto total = static_cast<std::size_t>(pf.outcome_count());
  const Mask full = pf.joint().full();
  for (std::size_t it = 0; it < instances; ++it) {
    std::vector<MassFunction> trials;
    for (const auto& f : frames) trials.push_back(random_full_mass(f, rng));
    const MassFunction joint = joint_belief_function(trials, LikelihoodRule::disjunctive);
    count.record(std::abs(static_cast<double>(joint.focal_count()) -
                          (std::ldexp(1.0, static_cast<int>(n)) + 1.0)),
                 0.0);
    double rest = 1.0;
    for (std::size_t t = 0; t < total; ++t) {
      const auto tuple = pf.decode(t);
      const Mask comp = full & ~(Mask{1} << t);
      double prod_mass = 1.0;
      double prod_bel = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        const Mask xc = frames[k].full() & ~(Mask{1} << tuple[k]);
        prod_mass *= trials[k].mass(xc);
        prod_bel *= trials[k].belief(xc);
      }
      rest -= prod_mass;
      masses.record(std::abs(joint.mass(comp) - prod_mass), tol);
      beliefs.record(std::abs(joint.belief(comp) - prod_bel), tol);
      plaus.record(std::abs(joint.plausibility(comp) - 1.0), tol);
      factorized.record(std::abs(belief_of_tuple_complement(trials, LikelihoodRule::disjunctive,
                                                            tuple) -
                                 joint.belief(comp)),
                        tol);
    }
    masses.record(std::abs(joint.mass(full) - rest), tol);
  }
  rep.instances = instances;
  rep.properties = {count, masses, beliefs, plaus, factorized};
  rep.seconds = seconds_since(t0);
  return rep;
}

ConjectureReport check_plausibility_conjecture(std::size_t n, std::size_t instances,
                                               std::uint64_t seed, double counterexample_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Frame> frames(n, binary_frame());
  const ProductFrame pf(frames);
  if (pf.outcome_count() > double(kMaxDenseFrame)) {
    throw IntractableInstance("dense conjecture oracle limited to 24 joint outcomes");
  }
  ConjectureReport rep;
  rep.n = n;
  rep.instances = instances;
  Rng rng(seed);
  const auto total = static_cast<std::size_t>(pf.outcome_count());
  for (std::size_t it = 0; it < instances; ++it) {
    std::vector<MassFunction> trials;
    for (const auto& f : frames) trials.push_back(random_full_mass(f, rng));
    const MassFunction joint = joint_belief_function(trials, LikelihoodRule::conjunctive);
    for (std::size_t t = 0; t < total; ++t) {
      const auto tuple = pf.decode(t);
      double prod = 1.0;
      for (std::size_t k = 0; k < n; ++k) prod *= trials[k].plausibility(Mask{1} << tuple[k]);
      const double dev = std::abs(joint.plausibility(Mask{1} << t) - prod);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > counterexample_tol) ++rep.counterexamples;
      ++rep.tuples_checked;
    }
    // Equidistributed case: the same (p, q) for every trial.
    const auto w = dirichlet(rng, 3);
    const MassFunction same(binary_frame(), std::map<Mask, double>{{1, w[0]}, {2, w[1]}, {3, w[2]}});
    const std::vector<MassFunction> eq(n, same);
    const MassFunction joint_eq = joint_belief_function(eq, LikelihoodRule::conjunctive);
    const double expected = std::pow(1.0 - w[1], static_cast<double>(n));
    rep.equidistributed_max_deviation =
        std::max(rep.equidistributed_max_deviation,
                 std::abs(joint_eq.plausibility(Mask{1} << pf.encode(std::vector<std::size_t>(n, 0))) -
                          expected));
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace beliefkit
