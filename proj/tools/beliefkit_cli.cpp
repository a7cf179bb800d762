#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "beliefkit/combination.hpp"
#include "beliefkit/errors.hpp"
#include "beliefkit/geometry.hpp"
#include "beliefkit/io.hpp"
#include "beliefkit/likelihood.hpp"
#include "beliefkit/limits.hpp"
#include "beliefkit/maxent.hpp"
#include "beliefkit/pac.hpp"
#include "beliefkit/random.hpp"
#include "beliefkit/regression.hpp"
#include "beliefkit/total_belief.hpp"

using namespace beliefkit;
using io::Json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  bool strict = false;

  io::ParseOptions parse() const { return {strict}; }
};

/// Raised for bad combinations of otherwise valid flags; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--out", c.out, "Write the result to this file instead of standard output");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--strict", c.strict, "Reject unknown fields in input documents");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw UsageError("cannot write " + c.out);
  out << text;
}

void require_json(const Common& c, const std::string& command) {
  if (c.format != "json") throw UsageError(command + " only produces JSON");
}

void emit_report(const Common& c, const std::string& name, const Json& result) {
  require_json(c, name);
  emit(c, io::write_report({name, result}));
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
  return s;
}

void emit_mass(const Common& c, const MassFunction& m) {
  if (c.format == "json") {
    emit(c, io::write_mass(m));
    return;
  }
  io::Dataset d{{"set", "m"}, {}};
  for (const auto& [a, v] : m.entries()) {
    d.rows.push_back({join_labels(m.frame().sorted_labels_of(a)), io::format_number(v)});
  }
  emit(c, io::write_csv(d));
}

Json set_json(const Frame& f, Mask a) { return Json(f.sorted_labels_of(a)); }

Json property_json(const PropertyCheck& p) {
  return Json{{"name", p.name}, {"checks", p.checks}, {"violations", p.violations},
              {"max_deviation", p.max_deviation}};
}

Json factorization_json(const FactorizationReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(property_json(p));
  return Json{{"suite", r.suite}, {"n", r.n}, {"instances", r.instances},
              {"properties", props}, {"passed", r.passed()}};
}

MassFunction binary_random(Rng& rng) {
  static const Frame f({"x", "y"});
  return random_full_mass(f, rng);
}

// Returns the exit code: 0 when every check held, 1 otherwise.
int run_verify(const Common& c, const std::string& suite, std::size_t n, std::size_t instances) {
  Json result;
  bool passed = true;
  if (suite == "factorization") {
    const auto conj = check_conjunctive_factorization(n, instances, {}, c.seed);
    const auto disj = check_disjunctive_factorization(n, instances, c.seed + 1);
    passed = conj.passed() && disj.passed();
    result = Json{{"conjunctive", factorization_json(conj)}, {"disjunctive", factorization_json(disj)}};
  } else if (suite == "conjecture") {
    const auto r = check_plausibility_conjecture(n, instances, c.seed);
    passed = r.counterexamples == 0 && r.equidistributed_max_deviation <= 1e-12;
    result = Json{{"n", r.n},
                  {"instances", r.instances},
                  {"tuples_checked", r.tuples_checked},
                  {"max_deviation", r.max_deviation},
                  {"counterexamples", r.counterexamples},
                  {"equidistributed_max_deviation", r.equidistributed_max_deviation}};
  } else if (suite == "commutation") {
    Rng rng(c.seed);
    for (Rule rule : {Rule::yager, Rule::disjunctive}) {
      double worst = 0.0;
      for (std::size_t i = 0; i < instances; ++i) {
        const auto bel = binary_random(rng);
        const std::vector<MassFunction> bels{binary_random(rng), binary_random(rng)};
        const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        worst = std::max(worst, affine_commutation_check(rule, bel, bels, {a, 1.0 - a}));
      }
      passed = passed && worst <= 1e-12;
      result[rule_name(rule)] = Json{{"triples", instances}, {"max_deviation", worst}};
    }
  } else if (suite == "concavity") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
    const Frame f(labels);
    for (EntropyKind k : {EntropyKind::Ht, EntropyKind::Hn, EntropyKind::Hd, EntropyKind::HBel,
                          EntropyKind::HPl}) {
      Rng rng(c.seed);
      const auto r = concavity_check(k, f, instances, rng);
      const bool ok = r.max_violation <= 1e-10;
      passed = passed && ok;
      result[entropy_kind_name(k)] = Json{{"pairs", r.pairs}, {"max_violation", r.max_violation},
                                          {"concave", ok}};
    }
  } else {
    throw UsageError("unknown suite " + suite);
  }
  result["passed"] = passed;
  result["seed"] = c.seed;
  emit_report(c, "verify-" + suite, result);
  if (!passed) std::cerr << "verify: suite " << suite << " reported violations\n";
  return passed ? 0 : 1;
}

std::vector<std::string> subset_names(const Frame& f, const std::vector<Mask>& masks,
                                      const std::string& prefix) {
  std::vector<std::string> out;
  for (Mask a : masks) out.push_back(prefix + f.format(a));
  return out;
}

void run_subspace(const Common& c, const std::string& rule_text, const std::string& file) {
  const MassFunction bel = io::parse_mass(read_file(file), c.parse());
  const auto cs = conditional_subspace(bel, parse_subspace_rule(rule_text));
  if (c.format == "csv") {
    if (cs.vertices.empty()) throw DomainError("conditional subspace has no vertices");
    const MassFunction& first = cs.vertices.front().combined;
    const Frame& f = bel.frame();
    std::vector<Mask> mass_masks, coord_masks;
    if (!first.normalized()) {
      mass_masks.push_back(0);
      coord_masks.push_back(0);
    }
    for (Mask a = 1; a <= f.full(); ++a) {
      mass_masks.push_back(a);
      if (a != f.full()) coord_masks.push_back(a);
    }
    io::Dataset d;
    d.columns.push_back("categorical");
    for (const auto& s : subset_names(f, mass_masks, "m")) d.columns.push_back(s);
    for (const auto& s : subset_names(f, coord_masks, first.normalized() ? "bel" : "b")) {
      d.columns.push_back(s);
    }
    for (const auto& v : cs.vertices) {
      std::vector<std::string> row{f.format(v.categorical)};
      for (double x : v.masses) row.push_back(io::format_number(x));
      for (double x : v.coordinates) row.push_back(io::format_number(x));
      d.rows.push_back(std::move(row));
    }
    emit(c, io::write_csv(d));
    return;
  }
  Json vs = Json::array();
  for (const auto& v : cs.vertices) {
    vs.push_back(Json{{"categorical", set_json(bel.frame(), v.categorical)},
                      {"combined", io::mass_payload(v.combined)},
                      {"masses", v.masses},
                      {"coordinates", v.coordinates}});
  }
  emit_report(c, "geometry-subspace",
              Json{{"rule", subspace_rule_name(cs.rule)}, {"vertices", vs}, {"notes", cs.notes}});
}

void run_geometric_condition(const Common& c, const std::string& on, const std::string& norm_text,
                             const std::string& file) {
  const MassFunction bel = io::parse_mass(read_file(file), c.parse());
  const Mask a = parse_subset(bel.frame(), on);
  const auto norm = parse_conditioning_norm(norm_text);
  const auto g = geometric_condition(bel, a, norm);
  emit_report(c, "geometry-condition",
              Json{{"on", set_json(bel.frame(), a)},
                   {"norm", conditioning_norm_name(norm)},
                   {"result", io::mass_payload(g.result)},
                   {"distance", g.distance}});
}

void run_likelihood(const Common& c, const std::string& data_file, const std::string& model_file,
                    const std::string& rule_text, bool surface, double step) {
  const MassFunction model = io::parse_mass(read_file(model_file), c.parse());
  const auto outcomes = io::outcome_sequence(io::read_dataset_text(read_file(data_file), c.parse()));
  if (outcomes.empty()) throw DomainError("no observations in " + data_file);
  const Frame& f = model.frame();
  std::vector<std::size_t> sample;
  for (const auto& o : outcomes) {
    if (!f.has_label(o)) throw DomainError("observation '" + o + "' is not in the model frame");
    sample.push_back(f.index_of(o));
  }
  if (surface) {
    if (f.size() != 2) throw DomainError("the likelihood surface needs a binary frame");
    std::size_t k = 0;
    for (std::size_t s : sample) k += s == 0;
    const auto surf = bernoulli_likelihood_surface(k, sample.size(), step);
    if (c.format == "csv") {
      io::Dataset d{{"p", "q", "lower", "upper"}, {}};
      for (const auto& p : surf.points) {
        d.rows.push_back({io::format_number(p.p), io::format_number(p.q), io::format_number(p.lower),
                          io::format_number(p.upper)});
      }
      emit(c, io::write_csv(d));
      return;
    }
    auto point = [](const SurfacePoint& p) {
      return Json{{"p", p.p}, {"q", p.q}, {"lower", p.lower}, {"upper", p.upper}};
    };
    emit_report(c, "likelihood-surface",
                Json{{"k", surf.k}, {"n", surf.n}, {"step", surf.step},
                     {"lower_argmax", point(surf.lower_argmax)},
                     {"upper_argmax", point(surf.upper_argmax)}});
    return;
  }
  const std::vector<MassFunction> trials(sample.size(), model);
  const auto lu = lower_upper_likelihood(trials, sample);
  ProductFocalElement event;
  for (std::size_t s : sample) event.factors.push_back(Mask{1} << s);
  const double bel = belief_likelihood(trials, parse_likelihood_rule(rule_text), event);
  emit_report(c, "likelihood",
              Json{{"rule", rule_text}, {"n", sample.size()}, {"lower", lu.lower},
                   {"upper", lu.upper}, {"conjectural", lu.conjectural}, {"belief", bel}});
}

void run_fit_logistic(const Common& c, const std::string& data_file, const std::string& target,
                      bool fix_beta2) {
  const auto data = io::regression_samples(io::read_dataset_text(read_file(data_file), c.parse()));
  FitConfig cfg;
  cfg.target = parse_fit_target(target);
  cfg.fix_beta2 = fix_beta2;
  const auto fit = fit_logistic(data, cfg);
  emit_report(c, "fit-logistic",
              Json{{"target", target},
                   {"beta0", fit.params.beta0},
                   {"beta1", fit.params.beta1},
                   {"beta2", fit.params.beta2},
                   {"objective", fit.objective},
                   {"kkt_residual", fit.kkt_residual},
                   {"converged", fit.converged},
                   {"iterations", fit.iterations},
                   {"diagnostics", fit.diagnostics}});
}

void run_total_belief(const Common& c, const std::string& file, bool enumerate, std::size_t limit,
                      bool alternative) {
  const auto problem = io::parse_total_belief_problem(read_file(file), c.parse());
  double conflict = 0.0;
  const auto total = construct_total(problem, &conflict);
  const auto v = verify_total(problem, total);
  const auto sys = build_constraint_system(problem);
  Json result{{"total", io::mass_payload(total)},
              {"conflict", conflict},
              {"verification", Json{{"p1_ok", v.p1_ok}, {"p2_ok", v.p2_ok},
                                    {"p1_residual", v.p1_residual},
                                    {"p2_residual", v.p2_residual}}},
              {"admissible_elements", sys.unknown_count()},
              {"constraints", Json{{"g1", sys.g1_count}, {"g2", sys.g2_count}, {"rank", sys.rank},
                                   {"rank_with_normalization", sys.rank_with_normalization}}}};
  if (alternative) result["alternative"] = io::mass_payload(alternative_total(problem));
  if (enumerate) {
    const Frame& coarse = problem.refining.coarse();
    Json per = Json::array();
    for (const auto& [e, w] : problem.prior.entries()) {
      const auto r = enumerate_minimal_solutions(problem, e, limit);
      per.push_back(Json{{"coarse", set_json(coarse, e)},
                         {"nonnegative", r.nonnegative.size()},
                         {"systems_checked", r.systems_checked},
                         {"singular_skipped", r.singular_skipped},
                         {"truncated", r.truncated}});
    }
    result["minimal_solutions"] = per;
    if (problem.prior.has_disjoint_focal_elements()) {
      Json totals = Json::array();
      for (const auto& t : enumerate_special_totals(problem, limit)) {
        totals.push_back(io::mass_payload(t));
      }
      result["totals"] = totals;
    }
  }
  emit_report(c, "total-belief", result);
}

void run_maxent(const Common& c, const std::string& data_file, const std::string& features_file,
                const std::string& entropy_text) {
  const auto fs = io::parse_features(read_file(features_file), c.parse());
  const auto pairs = io::training_pairs(io::read_dataset_text(read_file(data_file), c.parse()));
  const auto kind = parse_entropy_kind(entropy_text);
  const auto problem = make_maxent_problem(fs.x_values, fs.classes,
                                           histogram_from_samples(fs.x_values, fs.classes, pairs),
                                           fs.tables, kind);
  const auto fit = fit_maxent(problem);
  const auto classical = classical_maxent(problem);
  emit_report(c, "maxent-train",
              Json{{"entropy_kind", entropy_kind_name(kind)},
                   {"mass", io::mass_payload(fit.mass)},
                   {"entropy", fit.entropy},
                   {"kkt", Json{{"stationarity", fit.kkt.stationarity},
                                {"primal", fit.kkt.primal},
                                {"dual", fit.kkt.dual},
                                {"slackness", fit.kkt.slackness},
                                {"residual", fit.kkt.residual}}},
                   {"converged", fit.converged},
                   {"iterations", fit.iterations},
                   {"diagnostics", fit.diagnostics},
                   {"classical", Json{{"lambda", classical.lambda},
                                      {"converged", classical.converged},
                                      {"total_variation",
                                       total_variation(fit.mass, classical.joint(problem))}}}});
}

void run_limits(const Common& c, const std::string& mode, const std::string& file, std::size_t n,
                std::size_t trials, double epsilon) {
  const MassFunction m = io::parse_mass(read_file(file), c.parse());
  if (m.frame().size() != 2) throw DomainError("limit theorems need a binary frame");
  Rng rng(c.seed);
  if (mode == "lln") {
    const auto r = lln_band_check(m, n, trials, epsilon, rng);
    emit_report(c, "limits-lln",
                Json{{"n", r.n}, {"trials", r.trials}, {"epsilon", r.epsilon}, {"bel_t", r.bel_t},
                     {"pl_t", r.pl_t}, {"coverage", r.coverage}, {"mean_min", r.mean_min},
                     {"mean_max", r.mean_max}, {"ordered", r.ordered}, {"seed", c.seed}});
    return;
  }
  const auto r = clt_check(m, n, trials, default_alpha_grid(), rng);
  if (c.format == "csv") {
    io::Dataset d{{"alpha", "upper_estimate", "upper_reference", "lower_estimate", "lower_reference"},
                  {}};
    for (std::size_t i = 0; i < r.alpha.size(); ++i) {
      const double nc = normal_cdf(r.alpha[i]);
      d.rows.push_back({io::format_number(r.alpha[i]), io::format_number(r.upper_estimate[i]),
                        io::format_number(nc), io::format_number(r.lower_estimate[i]),
                        io::format_number(1.0 - nc)});
    }
    emit(c, io::write_csv(d));
    return;
  }
  emit_report(c, "limits-clt",
              Json{{"n", r.n}, {"samples", r.samples}, {"alpha", r.alpha},
                   {"upper_estimate", r.upper_estimate}, {"lower_estimate", r.lower_estimate},
                   {"upper_distance", r.upper_distance}, {"lower_distance", r.lower_distance},
                   {"seed", c.seed}});
}

void run_pac_bound(const Common& c, std::size_t h, double delta, std::size_t n, double epsilon) {
  Json result{{"h", h}, {"delta", delta}};
  if (n > 0) {
    result["n"] = n;
    result["epsilon_bound"] = risk_bound(h, n, delta);
  }
  if (epsilon > 0.0) {
    result["epsilon"] = epsilon;
    result["sample_complexity"] = sample_complexity(h, epsilon, delta);
  }
  if (n == 0 && epsilon <= 0.0) throw UsageError("pac bound needs --n or --epsilon");
  emit_report(c, "pac-bound", result);
}

void run_pac_simulate(const Common& c, const std::string& file) {
  const auto s = io::parse_pac_scenario(read_file(file), c.parse());
  const auto cls = threshold_class(s.points);
  Rng rng(c.seed);
  if (s.mode == io::PacScenario::Mode::realizable) {
    const std::size_t n = s.n ? *s.n : sample_complexity(cls.size(), s.epsilon, s.delta);
    const auto r = simulate_realizable(cls, labelled_distribution(cls, s.hypothesis, s.marginal), n,
                                       s.epsilon, s.delta, s.trials, rng);
    emit_report(c, "pac-realizable",
                Json{{"n", r.n}, {"trials", r.trials}, {"epsilon", r.epsilon}, {"delta", r.delta},
                     {"violations", r.violations}, {"frequency", r.frequency}, {"sigma", r.sigma},
                     {"within_bound", r.within_bound},
                     {"erm_always_consistent", r.erm_always_consistent}, {"seed", c.seed}});
    return;
  }
  std::vector<JointDistribution> vertices;
  for (const auto& [h, px] : s.vertices) vertices.push_back(labelled_distribution(cls, h, px));
  const auto r = simulate_credal(cls, vertices, s.ns, s.epsilon, s.trials, rng);
  Json tails = Json::array();
  for (const auto& t : r.tails) {
    tails.push_back(Json{{"n", t.n}, {"tail", t.tail}, {"mean_worst_risk", t.mean_worst_risk}});
  }
  std::vector<bool> vr(r.vertex_realizable.begin(), r.vertex_realizable.end());
  emit_report(c, "pac-credal",
              Json{{"vertex_realizable", vr}, {"uniform_realizable", r.uniform_realizable},
                   {"gap", r.gap}, {"tails", tails}, {"seed", c.seed}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-function toolkit"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  auto* combine = app.add_subcommand("combine", "Combine mass functions");
  std::string rule = "dempster";
  std::vector<std::string> files;
  combine->add_option("--rule", rule)->check(
      CLI::IsMember({"dempster", "conjunctive", "disjunctive", "yager", "dubois"}));
  combine->add_option("files", files, "Mass function documents")->required()->expected(2, -1);
  add_common(combine, common);
  combine->callback([&] {
    action = [&] {
      std::vector<MassFunction> ms;
      for (const auto& f : files) ms.push_back(io::parse_mass(read_file(f), common.parse()));
      emit_mass(common, combine_all(parse_rule(rule), ms));
      return 0;
    };
  });

  auto* condition = app.add_subcommand("condition", "Dempster conditioning");
  std::string on;
  std::string file;
  condition->add_option("--on", on, "Conditioning event, e.g. \"x,y\"")->required();
  condition->add_option("file", file)->required();
  add_common(condition, common);
  condition->callback([&] {
    action = [&] {
      const auto m = io::parse_mass(read_file(file), common.parse());
      emit_mass(common, dempster_condition(m, parse_subset(m.frame(), on)));
      return 0;
    };
  });

  auto* likelihood = app.add_subcommand("likelihood", "Belief likelihood of an observed sample");
  std::string trials_file, model_file, lrule = "conjunctive";
  bool surface = false;
  double step = 0.01;
  likelihood->add_option("--trials", trials_file, "Observed outcomes (CSV)")->required();
  likelihood->add_option("--model", model_file, "Per-trial mass function")->required();
  likelihood->add_option("--rule", lrule)->check(
      CLI::IsMember({"dempster", "conjunctive", "disjunctive"}));
  likelihood->add_flag("--surface", surface, "Emit the Bernoulli likelihood surface");
  likelihood->add_option("--step", step, "Grid step of the surface");
  add_common(likelihood, common);
  likelihood->callback([&] {
    action = [&] {
      run_likelihood(common, trials_file, model_file, lrule, surface, step);
      return 0;
    };
  });

  auto* fit = app.add_subcommand("fit-logistic", "Belief logistic regression");
  std::string data_file, target = "lower";
  bool fix_beta2 = false;
  fit->add_option("data", data_file, "CSV with columns x,y")->required();
  fit->add_option("--target", target)->check(CLI::IsMember({"lower", "upper"}));
  fit->add_flag("--fix-beta2", fix_beta2, "Hold beta2 at 1");
  add_common(fit, common);
  fit->callback([&] {
    action = [&] {
      run_fit_logistic(common, data_file, target, fix_beta2);
      return 0;
    };
  });

  auto* total = app.add_subcommand("total-belief", "Total belief construction");
  bool enumerate = false, alternative = false;
  std::size_t limit = 1000;
  total->add_option("problem", file)->required();
  total->add_flag("--enumerate", enumerate, "Enumerate minimal solutions");
  total->add_option("--limit", limit, "Largest number of solutions to report");
  total->add_flag("--alternative", alternative, "Also report a second nonnegative solution");
  add_common(total, common);
  total->callback([&] {
    action = [&] {
      run_total_belief(common, file, enumerate, limit, alternative);
      return 0;
    };
  });

  auto* geometry = app.add_subcommand("geometry", "Geometry of belief functions");
  geometry->require_subcommand(1);
  auto* subspace = geometry->add_subcommand("subspace", "Conditional subspace vertices");
  std::string srule = "dempster";
  subspace->add_option("--rule", srule)->check(CLI::IsMember(
      {"dempster", "yager", "disjunctive", "conjunctive_unnorm", "disjunctive_unnorm"}));
  subspace->add_option("file", file)->required();
  add_common(subspace, common);
  subspace->callback([&] {
    action = [&] {
      run_subspace(common, srule, file);
      return 0;
    };
  });
  auto* gcond = geometry->add_subcommand("condition", "Geometric conditioning");
  std::string norm = "L2";
  gcond->add_option("--on", on)->required();
  gcond->add_option("--norm", norm)->check(CLI::IsMember({"L1", "L2", "Linf"}));
  gcond->add_option("file", file)->required();
  add_common(gcond, common);
  gcond->callback([&] {
    action = [&] {
      run_geometric_condition(common, on, norm, file);
      return 0;
    };
  });

  auto* maxent = app.add_subcommand("maxent-train", "Maximum-entropy classifier");
  std::string features_file, entropy_text = "HBel";
  maxent->add_option("data", data_file, "CSV with columns x,class")->required();
  maxent->add_option("features", features_file)->required();
  maxent->add_option("--entropy", entropy_text)->check(
      CLI::IsMember({"Ht", "Hn", "Hd", "HBel", "HPl"}));
  add_common(maxent, common);
  maxent->callback([&] {
    action = [&] {
      run_maxent(common, data_file, features_file, entropy_text);
      return 0;
    };
  });

  auto* limits = app.add_subcommand("limits", "Limit theorems for random sets");
  std::string mode;
  std::size_t n = 10000, trials = 1000;
  double epsilon = 0.02;
  limits->add_option("mode", mode)->required()->check(CLI::IsMember({"lln", "clt"}));
  limits->add_option("model", file)->required();
  limits->add_option("--n", n, "Draws per trial");
  limits->add_option("--trials", trials, "Trials (LLN) or samples (CLT)");
  limits->add_option("--epsilon", epsilon, "LLN band half-width");
  add_common(limits, common);
  limits->callback([&] {
    action = [&] {
      run_limits(common, mode, file, n, trials, epsilon);
      return 0;
    };
  });

  auto* pac = app.add_subcommand("pac", "PAC bounds and simulations");
  pac->require_subcommand(1);
  auto* bound = pac->add_subcommand("bound", "Realizable finite-class bound");
  std::size_t h = 0, pac_n = 0;
  // --h is the class size, so help is long-form only here.
  bound->set_help_flag("--help", "Print this help message and exit");
  double delta = 0.05, pac_eps = 0.0;
  bound->add_option("--h", h, "Hypothesis class size")->required()->check(CLI::PositiveNumber);
  bound->add_option("--delta", delta)->check(CLI::Range(1e-300, 1.0));
  bound->add_option("--n", pac_n, "Training set size");
  bound->add_option("--epsilon", pac_eps, "Target risk, for the sample complexity");
  add_common(bound, common);
  bound->callback([&] {
    action = [&] {
      run_pac_bound(common, h, delta, pac_n, pac_eps);
      return 0;
    };
  });
  auto* simulate = pac->add_subcommand("simulate", "Simulate a PAC scenario");
  simulate->add_option("scenario", file)->required();
  add_common(simulate, common);
  simulate->callback([&] {
    action = [&] {
      run_pac_simulate(common, file);
      return 0;
    };
  });

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  std::size_t vn = 3, instances = 1000;
  verify->add_option("--suite", suite)->required()->check(
      CLI::IsMember({"factorization", "conjecture", "commutation", "concavity"}));
  verify->add_option("--n", vn, "Number of trials or frame size");
  verify->add_option("--instances", instances, "Random instances");
  add_common(verify, common);
  verify->callback([&] {
    action = [&] { return run_verify(common, suite, vn, instances); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
