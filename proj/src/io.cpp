#include "beliefkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "beliefkit/errors.hpp"

namespace beliefkit::io {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

struct LineIndex {
  std::map<std::string, std::size_t> lines;
  std::string duplicate;
  std::size_t duplicate_line = 0;
};

// Walks well-formed JSON text and records the line on which every object
// member and array element starts.
LineIndex index_lines(std::string_view text) {
  struct Level {
    bool object = false;
    std::string path;
    std::size_t index = 0;
    std::string key;
    bool expect_key = true;
    std::set<std::string> seen;
  };
  LineIndex out;
  std::vector<Level> stack;
  std::size_t line = 1;
  auto child = [&]() -> std::string {
    if (stack.empty()) return "";
    const auto& t = stack.back();
    return t.object ? join(t.path, t.key) : indexed(t.path, t.index);
  };
  auto value_start = [&] {
    if (!stack.empty() && !stack.back().object) out.lines.emplace(child(), line);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) s += text[i++];
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && stack.back().expect_key) {
        auto& t = stack.back();
        t.key = s;
        t.expect_key = false;
        if (!t.seen.insert(s).second && out.duplicate.empty()) {
          out.duplicate = child();
          out.duplicate_line = line;
        }
        out.lines.emplace(child(), line);
      } else {
        value_start();
      }
    } else if (c == '{' || c == '[') {
      value_start();
      Level l;
      l.object = c == '{';
      l.path = child();
      stack.push_back(std::move(l));
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (c == ',') {
      if (stack.empty()) continue;
      if (stack.back().object) {
        stack.back().expect_key = true;
      } else {
        ++stack.back().index;
      }
    } else if (c == ':' || c == ' ' || c == '\t' || c == '\r') {
      continue;
    } else {
      value_start();
      while (i + 1 < text.size() && std::string_view(",]} \t\r\n").find(text[i + 1]) ==
                                        std::string_view::npos) {
        ++i;
      }
    }
  }
  return out;
}

/// Tracks which members of an object were read so strict mode can reject
/// the rest.
class Fields {
 public:
  Fields(const Document& doc, const Json& j, std::string path)
      : doc_(doc), j_(j), path_(std::move(path)) {
    if (!j_.is_object()) doc_.fail(path_, "expected an object");
    if (path_.empty()) {
      used_.insert("kind");
      used_.insert("schema_version");
    }
  }

  const Json* optional(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& required(const std::string& key) {
    const Json* v = optional(key);
    if (!v) doc_.fail(path_.empty() ? key : path_, "missing field '" + key + "'");
    return *v;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    if (!doc_.strict) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) doc_.fail(join(path_, it.key()), "unknown field");
    }
  }

 private:
  const Document& doc_;
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

std::string get_string(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_string()) doc.fail(path, "expected a string");
  return j.get<std::string>();
}

double get_number(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_number()) doc.fail(path, "expected a number");
  return j.get<double>();
}

bool get_bool(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_boolean()) doc.fail(path, "expected true or false");
  return j.get<bool>();
}

std::size_t get_count(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    doc.fail(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::string> get_strings(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_array()) doc.fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(doc, j[i], indexed(path, i)));
  return out;
}

std::vector<double> get_numbers(const Document& doc, const Json& j, const std::string& path) {
  if (!j.is_array()) doc.fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(doc, j[i], indexed(path, i)));
  return out;
}

Frame get_frame(const Document& doc, const Json& j, const std::string& path) {
  try {
    return Frame(get_strings(doc, j, path));
  } catch (const SchemaError&) {
    throw;
  } catch (const DomainError& e) {
    doc.fail(path, e.what());
  }
}

Mask get_set(const Document& doc, const Json& j, const std::string& path, const Frame& frame) {
  const auto labels = get_strings(doc, j, path);
  Mask a = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!frame.has_label(labels[i])) doc.fail(indexed(path, i), "unknown outcome '" + labels[i] + "'");
    const Mask bit = Mask{1} << frame.index_of(labels[i]);
    if (a & bit) doc.fail(indexed(path, i), "outcome '" + labels[i] + "' listed twice");
    a |= bit;
  }
  return a;
}

Json set_json(const Frame& frame, Mask a) { return Json(frame.sorted_labels_of(a)); }

Json envelope(Kind k) {
  Json j = Json::object();
  j["kind"] = kind_name(k);
  j["schema_version"] = kSchemaVersion;
  return j;
}

Json with_envelope(Kind k, const Json& payload) {
  Json j = envelope(k);
  for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
  return j;
}

void write_json(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      write_json(it.value(), indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
    out += flat ? "[" : "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += flat ? ", " : ",\n";
      if (!flat) out += pad;
      write_json(j[i], indent + 2, out);
    }
    out += flat ? "]" : "\n" + close + "]";
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    out += std::isfinite(x) ? format_number(x) : "null";
  } else {
    out += j.dump();
  }
}

std::size_t coarse_index(const Document& doc, const Frame& coarse, const std::string& label,
                         const std::string& path) {
  if (!coarse.has_label(label)) doc.fail(path, "unknown coarse outcome '" + label + "'");
  return coarse.index_of(label);
}

Refining refining_from(const Document& doc, const Json& j, const std::string& path) {
  Fields f(doc, j, path);
  const Frame coarse = get_frame(doc, f.required("coarse"), f.path("coarse"));
  const Frame fine = get_frame(doc, f.required("fine"), f.path("fine"));
  const Json& cells_json = f.required("cells");
  const std::string cells_path = f.path("cells");
  if (!cells_json.is_object()) doc.fail(cells_path, "expected an object keyed by coarse outcome");
  std::vector<Mask> cells(coarse.size(), 0);
  std::vector<bool> present(coarse.size(), false);
  for (auto it = cells_json.begin(); it != cells_json.end(); ++it) {
    const std::string p = join(cells_path, it.key());
    const std::size_t i = coarse_index(doc, coarse, it.key(), p);
    cells[i] = get_set(doc, it.value(), p, fine);
    present[i] = true;
  }
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (!present[i]) doc.fail(cells_path, "no cell for coarse outcome '" + coarse.label(i) + "'");
  }
  f.finish();
  try {
    return Refining(coarse, fine, cells);
  } catch (const InvalidRefining& e) {
    throw InvalidRefining("line " + std::to_string(doc.line_of(cells_path)) + ", field '" +
                          cells_path + "': " + e.what());
  }
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false, was_quoted = false;
  auto push = [&] {
    if (!was_quoted) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
    }
    out.push_back(cell);
    cell.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = was_quoted = true;
    } else if (c == ',') {
      push();
    } else {
      cell += c;
    }
  }
  if (quoted) throw SchemaError("line " + std::to_string(line_no) + ": unterminated quote");
  push();
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool is_missing(const std::string& s) { return s.empty() || s == "NA"; }

double parse_double(const std::string& s, std::size_t row, const std::string& column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw SchemaError("row " + std::to_string(row + 1) + ", column '" + column +
                      "': expected a number, got '" + s + "'");
  }
  return v;
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::mass: return "mass";
    case Kind::refining: return "refining";
    case Kind::total_belief_problem: return "total-belief-problem";
    case Kind::dataset: return "dataset";
    case Kind::features: return "features";
    case Kind::report: return "report";
    case Kind::pac_scenario: return "pac-scenario";
  }
  return "";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::mass, Kind::refining, Kind::total_belief_problem, Kind::dataset,
                 Kind::features, Kind::report, Kind::pac_scenario}) {
    if (kind_name(k) == name) return k;
  }
  throw SchemaError("unknown document kind '" + std::string(name) + "'");
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  write_json(j, 0, out);
  return out + "\n";
}

std::size_t Document::line_of(const std::string& path) const {
  std::string p = path;
  while (!p.empty()) {
    auto it = lines.find(p);
    if (it != lines.end()) return it->second;
    const auto cut = p.find_last_of(".[");
    p = cut == std::string::npos ? "" : p.substr(0, cut);
  }
  return 1;
}

void Document::fail(const std::string& path, const std::string& message) const {
  throw SchemaError("line " + std::to_string(line_of(path)) + ", field '" + path + "': " + message);
}

Document parse_document(std::string_view text, Kind expected, const ParseOptions& opt) {
  Document doc;
  doc.strict = opt.strict;
  try {
    doc.body = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": malformed JSON");
  }
  auto idx = index_lines(text);
  doc.lines = std::move(idx.lines);
  if (!idx.duplicate.empty()) {
    throw SchemaError("line " + std::to_string(idx.duplicate_line) + ", field '" + idx.duplicate +
                      "': duplicate key");
  }
  if (!doc.body.is_object()) throw SchemaError("line 1: document must be a JSON object");
  const auto kind = doc.body.find("kind");
  if (kind != doc.body.end()) {
    const std::string k = get_string(doc, *kind, "kind");
    if (k != kind_name(expected)) {
      doc.fail("kind", "expected a '" + kind_name(expected) + "' document, got '" + k + "'");
    }
  } else if (opt.strict) {
    doc.fail("kind", "missing field 'kind'");
  }
  const auto version = doc.body.find("schema_version");
  if (version != doc.body.end()) {
    const std::string v = get_string(doc, *version, "schema_version");
    if (v != "1" && v.rfind("1.", 0) != 0) doc.fail("schema_version", "unsupported version " + v);
  } else if (opt.strict) {
    doc.fail("schema_version", "missing field 'schema_version'");
  }
  return doc;
}

Json mass_payload(const MassFunction& m) {
  Json j = Json::object();
  j["frame"] = m.frame().labels();
  Json masses = Json::array();
  for (const auto& [a, v] : m.entries()) {
    masses.push_back(Json{{"m", v}, {"set", set_json(m.frame(), a)}});
  }
  j["masses"] = std::move(masses);
  j["normalized"] = m.normalized();
  return j;
}

std::string write_mass(const MassFunction& m) { return dump(with_envelope(Kind::mass, mass_payload(m))); }

MassFunction mass_from(const Document& doc, const Json& j, const std::string& path,
                       const Frame* frame) {
  Fields f(doc, j, path);
  Frame fr;
  if (const Json* fj = f.optional("frame")) {
    fr = get_frame(doc, *fj, f.path("frame"));
    if (frame && !(fr == *frame)) doc.fail(f.path("frame"), "frame differs from the enclosing one");
  } else if (frame) {
    fr = *frame;
  } else {
    doc.fail(path.empty() ? "frame" : path, "missing field 'frame'");
  }
  bool normalized = true;
  if (const Json* nj = f.optional("normalized")) normalized = get_bool(doc, *nj, f.path("normalized"));
  const Json& ms = f.required("masses");
  const std::string mp = f.path("masses");
  if (!ms.is_array()) doc.fail(mp, "expected an array");
  std::vector<MassFunction::Entry> entries;
  std::set<Mask> seen;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string ep = indexed(mp, i);
    Fields ef(doc, ms[i], ep);
    const Mask a = get_set(doc, ef.required("set"), ef.path("set"), fr);
    const double v = get_number(doc, ef.required("m"), ef.path("m"));
    ef.finish();
    if (!seen.insert(a).second) doc.fail(ep, "duplicate set " + fr.format(a));
    if (v < 0.0) doc.fail(ef.path("m"), "negative mass");
    entries.emplace_back(a, v);
  }
  f.finish();
  try {
    return MassFunction(fr, entries, normalized);
  } catch (const NormalizationError& e) {
    throw NormalizationError("line " + std::to_string(doc.line_of(mp)) + ", field '" + mp +
                             "': " + e.what());
  } catch (const DomainError& e) {
    doc.fail(mp, e.what());
  }
}

MassFunction parse_mass(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::mass, opt);
  return mass_from(doc, doc.body, "");
}

Json refining_payload(const Refining& r) {
  Json j = Json::object();
  j["coarse"] = r.coarse().labels();
  j["fine"] = r.fine().labels();
  Json cells = Json::object();
  for (std::size_t i = 0; i < r.coarse().size(); ++i) {
    cells[r.coarse().label(i)] = set_json(r.fine(), r.cell(i));
  }
  j["cells"] = std::move(cells);
  return j;
}

std::string write_refining(const Refining& r) {
  return dump(with_envelope(Kind::refining, refining_payload(r)));
}

Refining parse_refining(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::refining, opt);
  return refining_from(doc, doc.body, "");
}

std::string write_total_belief_problem(const TotalBeliefProblem& p) {
  Json j = envelope(Kind::total_belief_problem);
  j["refining"] = refining_payload(p.refining);
  j["prior"] = mass_payload(p.prior);
  Json conds = Json::object();
  for (std::size_t i = 0; i < p.conditionals.size(); ++i) {
    conds[p.refining.coarse().label(i)] = mass_payload(p.conditionals[i]);
  }
  j["conditionals"] = std::move(conds);
  return dump(j);
}

TotalBeliefProblem parse_total_belief_problem(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::total_belief_problem, opt);
  Fields f(doc, doc.body, "");
  Refining rho = refining_from(doc, f.required("refining"), "refining");
  MassFunction prior = mass_from(doc, f.required("prior"), "prior", &rho.coarse());
  const Json& cj = f.required("conditionals");
  if (!cj.is_object()) doc.fail("conditionals", "expected an object keyed by coarse outcome");
  std::vector<std::optional<MassFunction>> conds(rho.coarse().size());
  for (auto it = cj.begin(); it != cj.end(); ++it) {
    const std::string p = join("conditionals", it.key());
    const std::size_t i = coarse_index(doc, rho.coarse(), it.key(), p);
    conds[i] = mass_from(doc, it.value(), p, &rho.fine());
  }
  f.finish();
  TotalBeliefProblem problem{rho, prior, {}};
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (!conds[i]) {
      doc.fail("conditionals", "no conditional for coarse outcome '" + rho.coarse().label(i) + "'");
    }
    problem.conditionals.push_back(*conds[i]);
  }
  try {
    problem.validate();
  } catch (const DomainError& e) {
    doc.fail("conditionals", e.what());
  }
  return problem;
}

std::size_t Dataset::column(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw SchemaError("dataset has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

Dataset parse_csv(std::string_view text) {
  Dataset d;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    auto cells = split_csv_line(line, line_no);
    if (d.columns.empty()) {
      d.columns = std::move(cells);
      continue;
    }
    if (cells.size() != d.columns.size()) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(d.columns.size()) + " fields, found " +
                        std::to_string(cells.size()));
    }
    d.rows.push_back(std::move(cells));
  }
  if (d.columns.empty()) throw SchemaError("line 1: CSV header missing");
  return d;
}

std::string write_csv(const Dataset& d) {
  std::string out;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cells[i]);
    }
    out += '\n';
  };
  row(d.columns);
  for (const auto& r : d.rows) row(r);
  return out;
}

std::string write_dataset(const Dataset& d) {
  Json j = envelope(Kind::dataset);
  j["columns"] = d.columns;
  j["rows"] = d.rows;
  return dump(j);
}

Dataset parse_dataset(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::dataset, opt);
  Fields f(doc, doc.body, "");
  Dataset d;
  d.columns = get_strings(doc, f.required("columns"), "columns");
  if (d.columns.empty()) doc.fail("columns", "no columns");
  const Json& rows = f.required("rows");
  if (!rows.is_array()) doc.fail("rows", "expected an array of rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = indexed("rows", i);
    if (!rows[i].is_array() || rows[i].size() != d.columns.size()) {
      doc.fail(rp, "expected an array of " + std::to_string(d.columns.size()) + " cells");
    }
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      const Json& v = rows[i][c];
      if (v.is_null()) {
        cells.push_back("NA");
      } else if (v.is_string()) {
        cells.push_back(v.get<std::string>());
      } else if (v.is_number_float()) {
        cells.push_back(format_number(v.get<double>()));
      } else if (v.is_number()) {
        cells.push_back(v.dump());
      } else {
        doc.fail(indexed(rp, c), "expected a string, number or null");
      }
    }
    d.rows.push_back(std::move(cells));
  }
  f.finish();
  return d;
}

Dataset read_dataset_text(std::string_view text, const ParseOptions& opt) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_dataset(text, opt);
  return parse_csv(text);
}

std::vector<RegressionSample> regression_samples(const Dataset& d) {
  const std::size_t cx = d.column("x"), cy = d.column("y");
  std::vector<RegressionSample> out;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    RegressionSample s;
    s.x = parse_double(d.rows[r][cx], r, "x");
    const std::string& y = d.rows[r][cy];
    if (y == "0" || y == "1") {
      s.y = y == "1" ? 1 : 0;
    } else if (!is_missing(y)) {
      throw SchemaError("row " + std::to_string(r + 1) + ", column 'y': expected 0, 1 or NA, got '" +
                        y + "'");
    }
    out.push_back(s);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> training_pairs(const Dataset& d) {
  const std::size_t cx = d.column("x"), cc = d.column("class");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : d.rows) out.emplace_back(r[cx], r[cc]);
  return out;
}

std::vector<std::string> outcome_sequence(const Dataset& d) {
  const auto it = std::find(d.columns.begin(), d.columns.end(), "outcome");
  const std::size_t c = it == d.columns.end() ? 0 : static_cast<std::size_t>(it - d.columns.begin());
  std::vector<std::string> out;
  for (const auto& r : d.rows) out.push_back(r[c]);
  return out;
}

std::string write_features(const FeatureSet& fs) {
  Json j = envelope(Kind::features);
  j["x_values"] = fs.x_values;
  j["classes"] = fs.classes;
  Json feats = Json::array();
  const std::size_t k = fs.classes.size();
  for (std::size_t m = 0; m < fs.tables.size(); ++m) {
    Json table = Json::object();
    for (std::size_t x = 0; x < fs.x_values.size(); ++x) {
      Json row = Json::object();
      for (std::size_t c = 0; c < k; ++c) row[fs.classes[c]] = fs.tables[m][x * k + c];
      table[fs.x_values[x]] = std::move(row);
    }
    feats.push_back(Json{{"name", fs.names[m]}, {"table", std::move(table)}});
  }
  j["features"] = std::move(feats);
  return dump(j);
}

FeatureSet parse_features(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::features, opt);
  Fields f(doc, doc.body, "");
  FeatureSet fs;
  fs.x_values = get_strings(doc, f.required("x_values"), "x_values");
  fs.classes = get_strings(doc, f.required("classes"), "classes");
  auto lookup = [&](const std::vector<std::string>& v, const std::string& s, const std::string& p) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) doc.fail(p, "unknown label '" + s + "'");
    return static_cast<std::size_t>(it - v.begin());
  };
  for (const auto* v : {&fs.x_values, &fs.classes}) {
    std::set<std::string> u(v->begin(), v->end());
    if (u.size() != v->size()) doc.fail(v == &fs.x_values ? "x_values" : "classes", "duplicate label");
  }
  const Json& feats = f.required("features");
  if (!feats.is_array()) doc.fail("features", "expected an array");
  const std::size_t k = fs.classes.size();
  for (std::size_t m = 0; m < feats.size(); ++m) {
    const std::string fp = indexed("features", m);
    Fields ff(doc, feats[m], fp);
    fs.names.push_back(get_string(doc, ff.required("name"), ff.path("name")));
    const Json& table = ff.required("table");
    const std::string tp = ff.path("table");
    if (!table.is_object()) doc.fail(tp, "expected an object keyed by x value");
    std::vector<double> values(fs.x_values.size() * k, 0.0);
    for (auto xi = table.begin(); xi != table.end(); ++xi) {
      const std::string xp = join(tp, xi.key());
      const std::size_t x = lookup(fs.x_values, xi.key(), xp);
      if (!xi.value().is_object()) doc.fail(xp, "expected an object keyed by class");
      for (auto ci = xi.value().begin(); ci != xi.value().end(); ++ci) {
        const std::string cp = join(xp, ci.key());
        values[x * k + lookup(fs.classes, ci.key(), cp)] = get_number(doc, ci.value(), cp);
      }
    }
    ff.finish();
    fs.tables.push_back(std::move(values));
  }
  f.finish();
  return fs;
}

std::string write_report(const Report& r) {
  Json j = envelope(Kind::report);
  j["report"] = r.name;
  j["result"] = r.result;
  return dump(j);
}

Report parse_report(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::report, opt);
  Fields f(doc, doc.body, "");
  Report r;
  r.name = get_string(doc, f.required("report"), "report");
  r.result = f.required("result");
  f.finish();
  return r;
}

std::string write_pac_scenario(const PacScenario& s) {
  Json j = envelope(Kind::pac_scenario);
  j["mode"] = s.mode == PacScenario::Mode::realizable ? "realizable" : "credal";
  j["points"] = s.points;
  j["epsilon"] = s.epsilon;
  j["delta"] = s.delta;
  j["trials"] = s.trials;
  if (s.mode == PacScenario::Mode::realizable) {
    if (s.n) j["n"] = *s.n;
    j["hypothesis"] = s.hypothesis;
    j["marginal"] = s.marginal;
  } else {
    Json vs = Json::array();
    for (const auto& [h, px] : s.vertices) vs.push_back(Json{{"hypothesis", h}, {"marginal", px}});
    j["vertices"] = std::move(vs);
    j["ns"] = s.ns;
  }
  return dump(j);
}

PacScenario parse_pac_scenario(std::string_view text, const ParseOptions& opt) {
  const Document doc = parse_document(text, Kind::pac_scenario, opt);
  Fields f(doc, doc.body, "");
  PacScenario s;
  const std::string mode = get_string(doc, f.required("mode"), "mode");
  if (mode == "realizable") {
    s.mode = PacScenario::Mode::realizable;
  } else if (mode == "credal") {
    s.mode = PacScenario::Mode::credal;
  } else {
    doc.fail("mode", "expected 'realizable' or 'credal'");
  }
  s.points = get_count(doc, f.required("points"), "points");
  if (s.points == 0 || s.points > 64) doc.fail("points", "expected 1..64 points");
  s.epsilon = get_number(doc, f.required("epsilon"), "epsilon");
  if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) doc.fail("epsilon", "expected a value in (0, 1)");
  s.delta = get_number(doc, f.required("delta"), "delta");
  if (!(s.delta > 0.0 && s.delta < 1.0)) doc.fail("delta", "expected a value in (0, 1)");
  s.trials = get_count(doc, f.required("trials"), "trials");
  if (s.trials == 0) doc.fail("trials", "expected at least one trial");
  const std::size_t classes = 2 * s.points;
  auto check_marginal = [&](const std::vector<double>& px, const std::string& p) {
    if (px.size() != s.points) doc.fail(p, "expected one probability per point");
    double sum = 0.0;
    for (double v : px) {
      if (!(v >= 0.0)) doc.fail(p, "negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRenormalizeTol) doc.fail(p, "probabilities do not sum to 1");
  };
  auto check_hypothesis = [&](std::size_t h, const std::string& p) {
    if (h >= classes) doc.fail(p, "hypothesis index beyond the " + std::to_string(classes) + " thresholds");
  };
  if (s.mode == PacScenario::Mode::realizable) {
    if (const Json* nj = f.optional("n")) s.n = get_count(doc, *nj, "n");
    s.hypothesis = get_count(doc, f.required("hypothesis"), "hypothesis");
    check_hypothesis(s.hypothesis, "hypothesis");
    s.marginal = get_numbers(doc, f.required("marginal"), "marginal");
    check_marginal(s.marginal, "marginal");
  } else {
    const Json& vs = f.required("vertices");
    if (!vs.is_array() || vs.empty()) doc.fail("vertices", "expected a nonempty array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string vp = indexed("vertices", i);
      Fields vf(doc, vs[i], vp);
      const std::size_t h = get_count(doc, vf.required("hypothesis"), vf.path("hypothesis"));
      check_hypothesis(h, vf.path("hypothesis"));
      auto px = get_numbers(doc, vf.required("marginal"), vf.path("marginal"));
      check_marginal(px, vf.path("marginal"));
      vf.finish();
      s.vertices.emplace_back(h, std::move(px));
    }
    const Json& ns = f.required("ns");
    if (!ns.is_array() || ns.empty()) doc.fail("ns", "expected a nonempty array");
    for (std::size_t i = 0; i < ns.size(); ++i) s.ns.push_back(get_count(doc, ns[i], indexed("ns", i)));
  }
  f.finish();
  return s;
}

}  // namespace beliefkit::io
