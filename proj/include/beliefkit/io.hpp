#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "beliefkit/mass_function.hpp"
#include "beliefkit/multivariate.hpp"
#include "beliefkit/pac.hpp"
#include "beliefkit/regression.hpp"
#include "beliefkit/total_belief.hpp"

namespace beliefkit::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class Kind { mass, refining, total_belief_problem, dataset, features, report, pac_scenario };

std::string kind_name(Kind k);
Kind parse_kind(std::string_view name);

struct ParseOptions {
  /// Reject unknown fields and require the envelope fields.
  bool strict = false;
};

/// printf %.17g, which round-trips every finite double.
std::string format_number(double x);

/// Deterministic pretty-printer: keys sorted, two-space indent, arrays of
/// scalars kept on one line, floats with 17 significant digits.
std::string dump(const Json& j);

/// Parsed document with its envelope checked against `expected`. Syntax
/// errors and envelope violations throw SchemaError with the line.
struct Document {
  Json body;
  /// Line of every field, keyed by path ("masses[1].m").
  std::map<std::string, std::size_t> lines;
  bool strict = false;

  std::size_t line_of(const std::string& path) const;
  /// SchemaError "line L, field 'path': message".
  [[noreturn]] void fail(const std::string& path, const std::string& message) const;
};

Document parse_document(std::string_view text, Kind expected, const ParseOptions& opt = {});

// Mass functions: {"frame": [...], "masses": [{"set": [...], "m": 0.3}], "normalized": true}.

Json mass_payload(const MassFunction& m);
std::string write_mass(const MassFunction& m);
MassFunction parse_mass(std::string_view text, const ParseOptions& opt = {});
/// Payload at `path` inside an already parsed document. `frame` fixes the
/// frame when the payload omits it.
MassFunction mass_from(const Document& doc, const Json& j, const std::string& path,
                       const Frame* frame = nullptr);

// Refinings: {"coarse": [...], "fine": [...], "cells": {"w1": [...], ...}}.

Json refining_payload(const Refining& r);
std::string write_refining(const Refining& r);
Refining parse_refining(std::string_view text, const ParseOptions& opt = {});

// Total belief problems: {"refining": {...}, "prior": {...}, "conditionals": {"w1": {...}}}.

std::string write_total_belief_problem(const TotalBeliefProblem& p);
TotalBeliefProblem parse_total_belief_problem(std::string_view text, const ParseOptions& opt = {});

/// Table of string cells with a header. Read from CSV or from JSON
/// {"columns": [...], "rows": [[...], ...]}; JSON nulls become "NA".
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  bool operator==(const Dataset&) const = default;
};

Dataset parse_csv(std::string_view text);
std::string write_csv(const Dataset& d);
std::string write_dataset(const Dataset& d);
Dataset parse_dataset(std::string_view text, const ParseOptions& opt = {});
/// JSON when the first non-blank character is '{', CSV otherwise.
Dataset read_dataset_text(std::string_view text, const ParseOptions& opt = {});

/// Columns x and y, y ∈ {0, 1, NA}; an empty cell also counts as NA.
std::vector<RegressionSample> regression_samples(const Dataset& d);
/// Columns x and class.
std::vector<std::pair<std::string, std::string>> training_pairs(const Dataset& d);
/// First column, or column "outcome" when present.
std::vector<std::string> outcome_sequence(const Dataset& d);

/// Feature tables φ_m over (x, class); tables[m][x·|classes| + k].
struct FeatureSet {
  std::vector<std::string> x_values;
  std::vector<std::string> classes;
  std::vector<std::string> names;
  std::vector<std::vector<double>> tables;

  bool operator==(const FeatureSet&) const = default;
};

std::string write_features(const FeatureSet& f);
/// Tables are {"x": {"class": value}}; missing entries are 0.
FeatureSet parse_features(std::string_view text, const ParseOptions& opt = {});

struct Report {
  std::string name;
  Json result;
};

std::string write_report(const Report& r);
Report parse_report(std::string_view text, const ParseOptions& opt = {});

/// Hypothesis class of thresholds on `points` points with either one
/// labelled distribution or a set of credal vertices.
struct PacScenario {
  enum class Mode { realizable, credal };
  Mode mode = Mode::realizable;
  std::size_t points = 8;
  double epsilon = 0.1;
  double delta = 0.05;
  std::size_t trials = 1000;
  /// Realizable mode; n defaults to the sample complexity.
  std::optional<std::size_t> n;
  std::size_t hypothesis = 0;
  std::vector<double> marginal;
  /// Credal mode: (hypothesis, marginal) per vertex.
  std::vector<std::pair<std::size_t, std::vector<double>>> vertices;
  std::vector<std::size_t> ns;
};

std::string write_pac_scenario(const PacScenario& s);
PacScenario parse_pac_scenario(std::string_view text, const ParseOptions& opt = {});

}  // namespace beliefkit::io
