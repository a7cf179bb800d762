#include "beliefkit/total_belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "beliefkit/combination.hpp"
#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

std::vector<std::size_t> cells_of(Mask coarse) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; coarse >> i; ++i) {
    if (coarse >> i & 1) out.push_back(i);
  }
  return out;
}

std::size_t rank_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<std::size_t>(lu.rank());
}

// Advances `idx` to the next k-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

MassFunction from_clipped(const Frame& frame, const std::map<Mask, double>& raw) {
  std::map<Mask, double> clean;
  for (const auto& [a, v] : raw) {
    if (v < -1e-10) throw DomainError("solution has a negative mass");
    if (v > 1e-14) clean[a] = v;
  }
  return MassFunction(frame, clean);
}

void solve_square(SolutionSystem& sys) {
  const auto n = sys.a.cols();
  if (sys.a.rows() != n) {
    sys.singular = true;
    return;
  }
  if (rank_of(sys.a) < static_cast<std::size_t>(n)) {
    sys.singular = true;
    return;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.a);
  Eigen::VectorXd x = lu.solve(sys.b);
  x += lu.solve(sys.b - sys.a * x);
  sys.x = x;
  sys.singular = false;
}

}  // namespace

void TotalBeliefProblem::validate() const {
  const Frame& coarse = refining.coarse();
  const Frame& fine = refining.fine();
  if (!(prior.frame() == coarse)) throw FrameMismatch("prior must live on the coarse frame");
  if (!prior.normalized()) throw DomainError("prior must be normalized");
  if (conditionals.size() != coarse.size()) {
    throw DomainError("one conditional per coarse outcome is required");
  }
  for (std::size_t i = 0; i < conditionals.size(); ++i) {
    const auto& m = conditionals[i];
    if (!(m.frame() == fine)) throw FrameMismatch("conditionals must live on the fine frame");
    if (!m.normalized()) throw DomainError("conditionals must be normalized");
    for (const auto& [e, v] : m.entries()) {
      if (!is_subset(e, refining.cell(i))) {
        throw DomainError("conditional " + std::to_string(i) + " has a focal element outside its cell");
      }
    }
  }
}

MassFunction construct_total(const TotalBeliefProblem& problem, double* conflict) {
  problem.validate();
  MassFunction acc = refine_mass(problem.prior, problem.refining);
  for (std::size_t i = 0; i < problem.conditionals.size(); ++i) {
    acc = conjunctive_combine(
        acc, conditional_embedding(problem.conditionals[i], problem.refining.cell(i)));
  }
  const double k = acc.mass(0);
  if (conflict) *conflict = k;
  if (k >= kTotalConflict) throw TotalConflict("total belief construction is totally conflicting");
  std::map<Mask, double> out;
  for (const auto& [a, v] : acc.entries()) {
    if (a) out[a] = v / (1.0 - k);
  }
  return MassFunction(problem.refining.fine(), out);
}

TotalVerification verify_total(const TotalBeliefProblem& problem, const MassFunction& candidate,
                               double tol) {
  problem.validate();
  if (!(candidate.frame() == problem.refining.fine())) {
    throw FrameMismatch("candidate must live on the fine frame");
  }
  TotalVerification v;
  v.p1_residual = max_abs_diff(coarsen_mass(candidate, problem.refining), problem.prior);
  for (std::size_t i = 0; i < problem.conditionals.size(); ++i) {
    const Mask cell = problem.refining.cell(i);
    if (candidate.plausibility(cell) <= 1e-12) {
      // Conditioning on a cell the prior also rules out is undefined, not violated.
      if (problem.prior.plausibility(Mask{1} << i) > 1e-12) v.p2_residual = 1.0;
      continue;
    }
    v.p2_residual = std::max(v.p2_residual, max_abs_diff(dempster_condition(candidate, cell),
                                                         problem.conditionals[i]));
  }
  v.p1_ok = v.p1_residual <= tol;
  v.p2_ok = v.p2_residual <= tol;
  return v;
}

std::vector<AdmissibleElement> admissible_focal_elements(const TotalBeliefProblem& problem,
                                                         Mask coarse_focal) {
  problem.validate();
  if (problem.prior.mass(coarse_focal) <= 0.0) {
    throw DomainError("not a focal element of the prior");
  }
  const auto cells = cells_of(coarse_focal);
  std::vector<AdmissibleElement> out;
  std::vector<std::size_t> tuple(cells.size(), 0);
  while (true) {
    AdmissibleElement e;
    e.coarse = coarse_focal;
    e.tuple = tuple;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      e.set |= problem.conditionals[cells[k]].entries()[tuple[k]].first;
    }
    out.push_back(std::move(e));
    std::size_t k = 0;
    while (k < cells.size() && ++tuple[k] == problem.conditionals[cells[k]].focal_count()) {
      tuple[k++] = 0;
    }
    if (k == cells.size()) break;
  }
  return out;
}

std::vector<AdmissibleElement> admissible_focal_elements(const TotalBeliefProblem& problem) {
  std::vector<AdmissibleElement> out;
  for (const auto& [E, v] : problem.prior.entries()) {
    auto part = admissible_focal_elements(problem, E);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Eigen::MatrixXd ConstraintSystem::matrix() const {
  Eigen::MatrixXd m(g1.rows() + g2.rows() + 1, static_cast<Eigen::Index>(columns.size()));
  m << g1, g2, normalization;
  return m;
}

Eigen::VectorXd ConstraintSystem::rhs() const {
  Eigen::VectorXd b(b1.size() + b2.size() + 1);
  b << b1, b2, 1.0;
  return b;
}

Eigen::VectorXd ConstraintSystem::to_vector(const MassFunction& m) const {
  std::map<Mask, std::size_t> index;
  for (std::size_t j = 0; j < columns.size(); ++j) index[columns[j].set] = j;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns.size()));
  for (const auto& [a, v] : m.entries()) {
    const auto it = index.find(a);
    if (it == index.end()) {
      throw DomainError("focal element " + m.frame().format(a) + " is not admissible");
    }
    x[static_cast<Eigen::Index>(it->second)] = v;
  }
  return x;
}

MassFunction ConstraintSystem::to_mass(const Frame& fine, const Eigen::VectorXd& x) const {
  std::map<Mask, double> raw;
  for (std::size_t j = 0; j < columns.size(); ++j) raw[columns[j].set] += x[static_cast<Eigen::Index>(j)];
  return from_clipped(fine, raw);
}

double ConstraintSystem::residual(const Eigen::VectorXd& x) const {
  return (matrix() * x - rhs()).cwiseAbs().maxCoeff();
}

ConstraintSystem build_constraint_system(const TotalBeliefProblem& problem) {
  problem.validate();
  const std::size_t omega = problem.refining.coarse().size();
  if (omega > 16) throw IntractableInstance("constraint system limited to 16 coarse outcomes");
  ConstraintSystem sys;
  sys.columns = admissible_focal_elements(problem);
  const auto cols = static_cast<Eigen::Index>(sys.columns.size());

  std::vector<Eigen::RowVectorXd> rows1;
  std::vector<double> rhs1;
  std::size_t total_focal = 0;
  for (std::size_t i = 0; i < omega; ++i) {
    const auto& m = problem.conditionals[i];
    total_focal += m.focal_count();
    const double pl0 = problem.prior.plausibility(Mask{1} << i);
    for (std::size_t j = 0; j + 1 < m.focal_count(); ++j) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(cols);
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& col = sys.columns[static_cast<std::size_t>(c)];
        if (!(col.coarse >> i & 1)) continue;
        const auto cells = cells_of(col.coarse);
        const auto pos = std::find(cells.begin(), cells.end(), i) - cells.begin();
        if (col.tuple[static_cast<std::size_t>(pos)] == j) row[c] = 1.0;
      }
      rows1.push_back(row);
      rhs1.push_back(m.entries()[j].second * pl0);
    }
  }
  sys.g1.resize(static_cast<Eigen::Index>(rows1.size()), cols);
  sys.b1.resize(static_cast<Eigen::Index>(rows1.size()));
  for (std::size_t r = 0; r < rows1.size(); ++r) {
    sys.g1.row(static_cast<Eigen::Index>(r)) = rows1[r];
    sys.b1[static_cast<Eigen::Index>(r)] = rhs1[r];
  }

  const Mask full = problem.refining.coarse().full();
  const auto n2 = static_cast<Eigen::Index>(full - 1);
  sys.g2 = Eigen::MatrixXd::Zero(n2, cols);
  sys.b2.resize(n2);
  for (Mask C = 1; C < full; ++C) {
    const auto r = static_cast<Eigen::Index>(C - 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (sys.columns[static_cast<std::size_t>(c)].coarse == C) sys.g2(r, c) = 1.0;
    }
    sys.b2[r] = problem.prior.mass(C);
  }
  sys.normalization = Eigen::RowVectorXd::Ones(cols);
  sys.g1_count = total_focal - omega;
  sys.g2_count = static_cast<std::size_t>(full) - 1;
  Eigen::MatrixXd g(sys.g1.rows() + sys.g2.rows(), cols);
  g << sys.g1, sys.g2;
  sys.rank = rank_of(g);
  sys.rank_with_normalization = rank_of(sys.matrix());
  return sys;
}

MassFunction alternative_total(const TotalBeliefProblem& problem, std::size_t kernel_index) {
  const MassFunction canonical = construct_total(problem);
  const ConstraintSystem sys = build_constraint_system(problem);
  const Eigen::VectorXd x = sys.to_vector(canonical);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.matrix());
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (lu.rank() == sys.matrix().cols() || kernel_index >= static_cast<std::size_t>(kernel.cols())) {
    throw DomainError("the constraint system has no free direction");
  }
  Eigen::VectorXd d = kernel.col(static_cast<Eigen::Index>(kernel_index));
  d /= d.cwiseAbs().maxCoeff();
  if ((d.array() < 0).count() == 0) d = -d;
  double t_max = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (d[j] < 0) t_max = std::min(t_max, x[j] / -d[j]);
  }
  if (!(t_max > 0.0)) throw DomainError("canonical solution sits on the boundary along this direction");
  return sys.to_mass(problem.refining.fine(), x + 0.5 * t_max * d);
}

double SolutionSystem::most_negative() const { return x.size() ? std::min(0.0, x.minCoeff()) : 0.0; }

std::size_t minimal_column_count(const TotalBeliefProblem& problem, Mask coarse_focal) {
  std::size_t n = 1;
  for (std::size_t i : cells_of(coarse_focal)) n += problem.conditionals[i].focal_count() - 1;
  return n;
}

SolutionSystem make_solution_system(const TotalBeliefProblem& problem, Mask coarse_focal,
                                    const std::vector<std::vector<std::size_t>>& columns) {
  SolutionSystem sys;
  sys.coarse = coarse_focal;
  sys.cells = cells_of(coarse_focal);
  for (std::size_t i : sys.cells) sys.focal_counts.push_back(problem.conditionals[i].focal_count());
  sys.columns = columns;
  const auto rows = static_cast<Eigen::Index>(minimal_column_count(problem, coarse_focal));
  const auto cols = static_cast<Eigen::Index>(columns.size());
  sys.a = Eigen::MatrixXd::Zero(rows, cols);
  sys.b.resize(rows);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < sys.cells.size(); ++k) {
    const auto& m = problem.conditionals[sys.cells[k]];
    for (std::size_t j = 0; j + 1 < m.focal_count(); ++j, ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& t = columns[static_cast<std::size_t>(c)];
        if (t.size() != sys.cells.size()) throw DomainError("column tuple has the wrong arity");
        if (t[k] == j) sys.a(r, c) = 1.0;
      }
      sys.b[r] = m.entries()[j].second;
    }
  }
  sys.a.row(r).setOnes();
  sys.b[r] = 1.0;
  solve_square(sys);
  return sys;
}

EnumerationResult enumerate_minimal_solutions(const TotalBeliefProblem& problem, Mask coarse_focal,
                                              std::size_t limit, double tol) {
  const auto elements = admissible_focal_elements(problem, coarse_focal);
  const std::size_t n_max = elements.size();
  const std::size_t n_min = minimal_column_count(problem, coarse_focal);
  if (binomial(n_max, n_min) > static_cast<double>(kMaxEnumeratedSystems)) {
    throw IntractableInstance("more than 2^20 candidate systems");
  }
  EnumerationResult res;
  auto idx = first_combination(n_min);
  do {
    std::vector<std::vector<std::size_t>> cols;
    for (std::size_t i : idx) cols.push_back(elements[i].tuple);
    SolutionSystem sys = make_solution_system(problem, coarse_focal, cols);
    ++res.systems_checked;
    if (sys.singular) {
      ++res.singular_skipped;
      continue;
    }
    if (sys.x.minCoeff() >= -tol) {
      if (res.nonnegative.size() == limit) {
        res.truncated = true;
        break;
      }
      res.nonnegative.push_back(std::move(sys));
    }
  } while (next_combination(idx, n_max));
  return res;
}

MassFunction assemble_special_total(const TotalBeliefProblem& problem,
                                    const std::vector<SolutionSystem>& per_focal) {
  problem.validate();
  std::map<Mask, double> raw;
  for (const auto& sys : per_focal) {
    const double w = problem.prior.mass(sys.coarse);
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
      Mask set = 0;
      for (std::size_t k = 0; k < sys.cells.size(); ++k) {
        set |= problem.conditionals[sys.cells[k]].entries()[sys.columns[c][k]].first;
      }
      raw[set] += w * sys.x[static_cast<Eigen::Index>(c)];
    }
  }
  return from_clipped(problem.refining.fine(), raw);
}

std::vector<MassFunction> enumerate_special_totals(const TotalBeliefProblem& problem,
                                                   std::size_t limit, double tol) {
  problem.validate();
  if (!problem.prior.has_disjoint_focal_elements()) {
    throw DomainError("special enumeration needs a prior with disjoint focal elements");
  }
  std::vector<std::vector<SolutionSystem>> lists;
  for (const auto& [E, v] : problem.prior.entries()) {
    lists.push_back(enumerate_minimal_solutions(problem, E, limit, tol).nonnegative);
    if (lists.back().empty()) return {};
  }
  std::vector<MassFunction> out;
  std::vector<std::size_t> pick(lists.size(), 0);
  while (out.size() < limit) {
    std::vector<SolutionSystem> chosen;
    for (std::size_t k = 0; k < lists.size(); ++k) chosen.push_back(lists[k][pick[k]]);
    out.push_back(assemble_special_total(problem, chosen));
    std::size_t k = 0;
    while (k < lists.size() && ++pick[k] == lists[k].size()) pick[k++] = 0;
    if (k == lists.size()) break;
  }
  return out;
}

SubstitutionReport column_substitution(const TotalBeliefProblem& problem,
                                       const SolutionSystem& system, std::size_t column) {
  if (system.singular || system.x.size() == 0) throw DomainError("system has no solution");
  if (column >= system.columns.size()) throw DomainError("column index out of range");
  const double s = system.x[static_cast<Eigen::Index>(column)];
  if (!(s < 0.0)) throw DomainError("column substitution needs a negative solution component");
  const std::size_t N = system.cells.size();
  const auto& e = system.columns[column];
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < system.columns.size(); ++j) {
    if (j != column) others.push_back(j);
  }

  for (std::size_t csize = 2; csize <= std::min(N, others.size()); ++csize) {
    auto ci = first_combination(csize);
    do {
      std::vector<std::size_t> comp;
      for (std::size_t i : ci) comp.push_back(others[i]);
      bool covers = true;
      for (std::size_t k = 0; k < N && covers; ++k) {
        covers = std::any_of(comp.begin(), comp.end(),
                             [&](std::size_t c) { return system.columns[c][k] == e[k]; });
      }
      if (!covers) continue;
      std::vector<std::size_t> rest;
      for (std::size_t j : others) {
        if (std::find(comp.begin(), comp.end(), j) == comp.end()) rest.push_back(j);
      }
      const std::size_t ssize = csize - 2;
      if (ssize > rest.size()) continue;
      auto si = first_combination(ssize);
      do {
        std::vector<std::size_t> sel;
        for (std::size_t i : si) sel.push_back(rest[i]);
        // Per cell, the formal sum must leave exactly one focal index.
        std::vector<std::size_t> e_new(N);
        bool ok = true;
        for (std::size_t k = 0; k < N && ok; ++k) {
          std::vector<int> count(system.focal_counts[k], 0);
          --count[e[k]];
          for (std::size_t c : comp) ++count[system.columns[c][k]];
          for (std::size_t c : sel) --count[system.columns[c][k]];
          int ones = 0;
          for (std::size_t j = 0; j < count.size(); ++j) {
            if (count[j] < 0 || count[j] > 1) ok = false;
            if (count[j] == 1) {
              ++ones;
              e_new[k] = j;
            }
          }
          ok = ok && ones == 1;
        }
        if (!ok) continue;
        if (std::find(system.columns.begin(), system.columns.end(), e_new) != system.columns.end()) {
          continue;
        }
        auto cols = system.columns;
        cols[column] = e_new;
        SolutionSystem next = make_solution_system(problem, system.coarse, cols);
        if (next.singular) continue;

        SubstitutionReport rep;
        rep.column = column;
        rep.s = s;
        rep.companions = comp;
        rep.selections = sel;
        rep.new_column = e_new;
        rep.predicted = system.x;
        rep.predicted[static_cast<Eigen::Index>(column)] = -s;
        for (std::size_t c : comp) rep.predicted[static_cast<Eigen::Index>(c)] += s;
        for (std::size_t c : sel) rep.predicted[static_cast<Eigen::Index>(c)] -= s;
        rep.bookkeeping_error = (rep.predicted - next.x).cwiseAbs().maxCoeff();
        rep.most_negative_before = system.most_negative();
        rep.most_negative_after = next.most_negative();
        rep.result = std::move(next);
        return rep;
      } while (ssize > 0 && next_combination(si, rest.size()));
    } while (next_combination(ci, others.size()));
  }
  throw NoAdmissibleSubstitution("no companion cover with a complete set of selection columns");
}

}  // namespace beliefkit
