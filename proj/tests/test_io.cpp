#include <algorithm>
#include <random>
#include <string>

#include "beliefkit/errors.hpp"
#include "beliefkit/io.hpp"
#include "beliefkit/random.hpp"
#include "doctest.h"

using namespace beliefkit;
using namespace beliefkit::io;

namespace {

bool identical(const MassFunction& a, const MassFunction& b) {
  return a.frame() == b.frame() && a.normalized() == b.normalized() && a.entries() == b.entries();
}

bool message_has(const std::exception& e, const std::string& s) {
  return std::string(e.what()).find(s) != std::string::npos;
}

}  // namespace

TEST_CASE("mass round trip is bit-identical") {
  Rng rng(21);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("w" + std::to_string(n - i));
    const Frame f(labels);
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t focal = std::min<std::size_t>(1 + rep % 4, (std::size_t{1} << n) - 1);
      const MassFunction m = rep % 2 ? random_full_mass(f, rng) : random_mass(f, rng, focal);
      const std::string text = write_mass(m);
      const MassFunction back = parse_mass(text, {true});
      CHECK(identical(m, back));
      CHECK(write_mass(back) == text);
    }
  }
  // Unnormalized functions keep their empty-set mass.
  const Frame f({"x", "y"});
  const MassFunction b_empty = MassFunction::categorical(f, 0);
  CHECK(identical(parse_mass(write_mass(b_empty)), b_empty));
}

TEST_CASE("serialized form") {
  const Frame f({"y", "x"});
  const MassFunction m(f, std::map<Mask, double>{{1, 0.1}, {3, 0.9}});
  const std::string text = write_mass(m);
  CHECK(text ==
        "{\n"
        "  \"frame\": [\"y\", \"x\"],\n"
        "  \"kind\": \"mass\",\n"
        "  \"masses\": [\n"
        "    {\n"
        "      \"m\": 0.10000000000000001,\n"
        "      \"set\": [\"y\"]\n"
        "    },\n"
        "    {\n"
        "      \"m\": 0.90000000000000002,\n"
        "      \"set\": [\"x\", \"y\"]\n"
        "    }\n"
        "  ],\n"
        "  \"normalized\": true,\n"
        "  \"schema_version\": \"1.0\"\n"
        "}\n");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("bare mass payload with reordered subsets") {
  const std::string text =
      R"({"frame": ["x","y"], "masses": [{"set": ["y","x"], "m": 0.7}, {"set": ["x"], "m": 0.3}], "normalized": true})";
  const MassFunction m = parse_mass(text);
  CHECK(m.mass(1) == 0.3);
  CHECK(m.mass(3) == 0.7);
  // The envelope is mandatory only in strict mode.
  CHECK_THROWS_AS(parse_mass(text, {true}), SchemaError);
}

TEST_CASE("mass validation") {
  const std::string bad_sum = R"({
  "frame": ["x", "y"],
  "masses": [
    {"set": ["x"], "m": 0.299},
    {"set": ["x", "y"], "m": 0.7}
  ]
})";
  CHECK_THROWS_AS(parse_mass(bad_sum), NormalizationError);
  try {
    parse_mass(bad_sum);
  } catch (const NormalizationError& e) {
    CHECK(message_has(e, "line 3"));
  }

  const std::string dup = R"({"frame": ["x","y"], "masses": [{"set": ["x"], "m": 0.5}, {"set": ["x"], "m": 0.5}]})";
  CHECK_THROWS_AS(parse_mass(dup), SchemaError);

  const std::string unknown_label = R"({
  "frame": ["x", "y"],
  "masses": [
    {"set": ["x"], "m": 0.5},
    {"set": ["z"], "m": 0.5}
  ]
})";
  try {
    parse_mass(unknown_label);
    FAIL("accepted an unknown label");
  } catch (const SchemaError& e) {
    CHECK(message_has(e, "line 5"));
    CHECK(message_has(e, "masses[1].set[0]"));
  }

  const std::string empty_normalized = R"({"frame": ["x"], "masses": [{"set": [], "m": 1}]})";
  CHECK_THROWS_AS(parse_mass(empty_normalized), NormalizationError);
  const std::string negative = R"({"frame": ["x","y"], "masses": [{"set": ["x"], "m": -0.5}, {"set": ["y"], "m": 1.5}]})";
  CHECK_THROWS_AS(parse_mass(negative), SchemaError);
}

TEST_CASE("strict mode rejects unknown fields") {
  const std::string extra = R"({
  "kind": "mass",
  "schema_version": "1.0",
  "frame": ["x", "y"],
  "masses": [{"set": ["x"], "m": 1, "note": "hi"}]
})";
  CHECK(parse_mass(extra).mass(1) == 1.0);
  try {
    parse_mass(extra, {true});
    FAIL("strict mode accepted an unknown field");
  } catch (const SchemaError& e) {
    CHECK(message_has(e, "masses[0].note"));
    CHECK(message_has(e, "line 5"));
  }
  const std::string top = R"({"kind": "mass", "schema_version": "1.0", "frame": ["x"], "masses": [{"set": ["x"], "m": 1}], "extra": 1})";
  CHECK_THROWS_AS(parse_mass(top, {true}), SchemaError);
}

TEST_CASE("envelope checks") {
  const std::string wrong_kind = R"({"kind": "refining", "frame": ["x"], "masses": [{"set": ["x"], "m": 1}]})";
  CHECK_THROWS_AS(parse_mass(wrong_kind), SchemaError);
  const std::string future = R"({"schema_version": "2.0", "frame": ["x"], "masses": [{"set": ["x"], "m": 1}]})";
  CHECK_THROWS_AS(parse_mass(future), SchemaError);
  const std::string dup_key = "{\"frame\": [\"x\"],\n\"frame\": [\"x\"], \"masses\": []}";
  try {
    parse_mass(dup_key);
    FAIL("duplicate key accepted");
  } catch (const SchemaError& e) {
    CHECK(message_has(e, "line 2"));
  }
  try {
    parse_mass("{\n  \"frame\": [\"x\",\n  ]\n}");
    FAIL("malformed JSON accepted");
  } catch (const SchemaError& e) {
    CHECK(message_has(e, "line 3"));
  }
  CHECK(parse_kind("total-belief-problem") == Kind::total_belief_problem);
  CHECK_THROWS_AS(parse_kind("bpa"), SchemaError);
}

TEST_CASE("refining") {
  const std::string text = R"({"coarse": ["w1","w2"], "fine": ["a","b","c"], "cells": {"w1": ["a"], "w2": ["c","b"]}})";
  const Refining r = parse_refining(text);
  CHECK(r.cell(0) == 1);
  CHECK(r.cell(1) == 6);
  const std::string out = write_refining(r);
  CHECK(write_refining(parse_refining(out, {true})) == out);
  CHECK(out.find("\"w2\": [\"b\", \"c\"]") != std::string::npos);

  // Cell w1 = {a, b} and w2 = {b, c} share b, so this is not a partition.
  const std::string overlap = R"({
  "coarse": ["w1", "w2"],
  "fine": ["a", "b", "c"],
  "cells": {"w1": ["a", "b"], "w2": ["b", "c"]}
})";
  CHECK_THROWS_AS(parse_refining(overlap), InvalidRefining);
  try {
    parse_refining(overlap);
  } catch (const InvalidRefining& e) {
    CHECK(message_has(e, "line 4"));
  }
  const std::string missing = R"({"coarse": ["w1","w2"], "fine": ["a","b"], "cells": {"w1": ["a","b"]}})";
  CHECK_THROWS_AS(parse_refining(missing), SchemaError);
  const std::string uncovered = R"({"coarse": ["w1","w2"], "fine": ["a","b","c"], "cells": {"w1": ["a"], "w2": ["b"]}})";
  CHECK_THROWS_AS(parse_refining(uncovered), InvalidRefining);
}

TEST_CASE("total belief problem") {
  const std::string text = R"({
  "kind": "total-belief-problem",
  "refining": {"coarse": ["w1", "w2"], "fine": ["a", "b", "c"], "cells": {"w1": ["a"], "w2": ["b", "c"]}},
  "prior": {"masses": [{"set": ["w1"], "m": 0.4}, {"set": ["w1", "w2"], "m": 0.6}]},
  "conditionals": {
    "w1": {"masses": [{"set": ["a"], "m": 1}]},
    "w2": {"masses": [{"set": ["b"], "m": 0.25}, {"set": ["b", "c"], "m": 0.75}]}
  }
})";
  const TotalBeliefProblem p = parse_total_belief_problem(text);
  CHECK(p.prior.mass(1) == 0.4);
  CHECK(p.conditionals[1].mass(2) == 0.25);
  const std::string out = write_total_belief_problem(p);
  const TotalBeliefProblem q = parse_total_belief_problem(out, {true});
  CHECK(identical(p.prior, q.prior));
  CHECK(identical(p.conditionals[1], q.conditionals[1]));
  CHECK(write_total_belief_problem(q) == out);

  std::string outside = text;
  outside.replace(outside.find(R"({"set": ["b"], "m": 0.25})"), 26, R"({"set": ["a"], "m": 0.25})");
  CHECK_THROWS_AS(parse_total_belief_problem(outside), SchemaError);
}

TEST_CASE("datasets") {
  const std::string csv = "x,y\n0.5,1\n -1.25 , 0\n2,NA\n3,\n\n";
  const Dataset d = parse_csv(csv);
  REQUIRE(d.rows.size() == 4);
  const auto samples = regression_samples(d);
  CHECK(samples[0].x == 0.5);
  CHECK(*samples[0].y == 1);
  CHECK(samples[1].x == -1.25);
  CHECK(*samples[1].y == 0);
  CHECK_FALSE(samples[2].y.has_value());
  CHECK_FALSE(samples[3].y.has_value());
  CHECK(parse_csv(write_csv(d)) == d);
  CHECK(parse_dataset(write_dataset(d), {true}) == d);
  CHECK(read_dataset_text(write_dataset(d)) == d);
  CHECK(read_dataset_text(csv) == d);

  const Dataset quoted = parse_csv("x,class\n\"a,b\",\"say \"\"hi\"\"\"\n");
  CHECK(quoted.rows[0][0] == "a,b");
  CHECK(quoted.rows[0][1] == "say \"hi\"");
  CHECK(parse_csv(write_csv(quoted)) == quoted);

  CHECK_THROWS_AS(parse_csv("x,y\n1,2,3\n"), SchemaError);
  CHECK_THROWS_AS(regression_samples(parse_csv("x,y\n1,2\n")), SchemaError);
  CHECK_THROWS_AS(regression_samples(parse_csv("x,y\nabc,1\n")), SchemaError);
  CHECK_THROWS_AS(regression_samples(parse_csv("x,z\n1,1\n")), SchemaError);

  const Dataset j = parse_dataset(R"({"columns": ["x","y"], "rows": [[0.5, 1], [2, null]]})");
  CHECK(j.rows[0][0] == "0.5");
  CHECK(j.rows[1][1] == "NA");
  CHECK(outcome_sequence(parse_csv("outcome\nT\nF\n")) == std::vector<std::string>{"T", "F"});
  CHECK(training_pairs(parse_csv("x,class\nu,c1\n"))[0].second == "c1");
}

TEST_CASE("features") {
  const std::string text = R"({
  "x_values": ["u", "v"],
  "classes": ["c1", "c2"],
  "features": [
    {"name": "f", "table": {"u": {"c1": 1}, "v": {"c2": 0.5}}}
  ]
})";
  const FeatureSet fs = parse_features(text);
  CHECK(fs.tables[0] == std::vector<double>{1, 0, 0, 0.5});
  CHECK(parse_features(write_features(fs), {true}) == fs);
  std::string bad = text;
  bad.replace(bad.find("\"c2\": 0.5"), 4, "\"c3\"");
  try {
    parse_features(bad);
    FAIL("unknown class accepted");
  } catch (const SchemaError& e) {
    CHECK(message_has(e, "line 5"));
  }
}

TEST_CASE("reports and scenarios") {
  Report r{"demo", Json{{"value", 0.25}, {"list", {1, 2}}}};
  const std::string text = write_report(r);
  const Report back = parse_report(text, {true});
  CHECK(back.name == "demo");
  CHECK(back.result == r.result);
  CHECK(write_report(back) == text);

  PacScenario s;
  s.marginal.assign(8, 0.125);
  s.hypothesis = 3;
  s.n = 100;
  const std::string st = write_pac_scenario(s);
  const PacScenario s2 = parse_pac_scenario(st, {true});
  CHECK(s2.marginal == s.marginal);
  CHECK(*s2.n == 100);
  CHECK(write_pac_scenario(s2) == st);

  PacScenario c;
  c.mode = PacScenario::Mode::credal;
  c.vertices = {{2, std::vector<double>(8, 0.125)}, {6, std::vector<double>(8, 0.125)}};
  c.ns = {10, 100};
  const std::string ct = write_pac_scenario(c);
  CHECK(write_pac_scenario(parse_pac_scenario(ct, {true})) == ct);

  const std::string bad = R"({"mode": "realizable", "points": 2, "epsilon": 0.1, "delta": 0.05, "trials": 10, "hypothesis": 9, "marginal": [0.5, 0.5]})";
  CHECK_THROWS_AS(parse_pac_scenario(bad), SchemaError);
}
