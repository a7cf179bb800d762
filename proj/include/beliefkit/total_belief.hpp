#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "beliefkit/mass_function.hpp"
#include "beliefkit/multivariate.hpp"

namespace beliefkit {

/// Prior on the coarse frame Ω plus one conditional per cell. Conditionals
/// live on the fine frame with every focal element inside their cell.
struct TotalBeliefProblem {
  Refining refining;
  MassFunction prior;
  std::vector<MassFunction> conditionals;

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
};

/// Dempster sum of the vacuously extended prior with the conditional
/// embeddings. `conflict`, when given, receives the conflict of that sum.
MassFunction construct_total(const TotalBeliefProblem& problem, double* conflict = nullptr);

struct TotalVerification {
  bool p1_ok = false;
  bool p2_ok = false;
  /// Max |marginal − prior| over coarse subsets.
  double p1_residual = 0.0;
  /// Max |conditioned − conditional| over cells and fine subsets.
  double p2_residual = 0.0;
};

TotalVerification verify_total(const TotalBeliefProblem& problem, const MassFunction& candidate,
                               double tol = 1e-10);

struct AdmissibleElement {
  Mask set = 0;
  /// Prior focal element the element belongs to (its outer reduction).
  Mask coarse = 0;
  /// Index into conditionals[cell].entries() for each cell of `coarse`, in
  /// increasing cell order.
  std::vector<std::size_t> tuple;
};

/// Unions of one conditional focal element per cell covered by E, in
/// mixed-radix order with the first cell varying fastest.
std::vector<AdmissibleElement> admissible_focal_elements(const TotalBeliefProblem& problem,
                                                         Mask coarse_focal);
/// Admissible elements for every prior focal element, grouped by prior
/// focal element in mask order.
std::vector<AdmissibleElement> admissible_focal_elements(const TotalBeliefProblem& problem);

struct ConstraintSystem {
  std::vector<AdmissibleElement> columns;
  /// Conditional rows: one per cell and conditional focal element except the
  /// last of each cell.
  Eigen::MatrixXd g1;
  Eigen::VectorXd b1;
  /// Marginal rows: one per nonempty proper subset C of Ω.
  Eigen::MatrixXd g2;
  Eigen::VectorXd b2;
  /// Σ m(e) = 1.
  Eigen::RowVectorXd normalization;

  /// Σ|ℰ_j| − |Ω| and 2^|Ω| − 2.
  std::size_t g1_count = 0;
  std::size_t g2_count = 0;
  /// Numerical rank of [G1; G2], and of [G1; G2; normalization].
  std::size_t rank = 0;
  std::size_t rank_with_normalization = 0;

  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd rhs() const;
  std::size_t unknown_count() const { return columns.size(); }
  /// Mass vector of `m` in column order; throws if m has focal elements
  /// outside the columns.
  Eigen::VectorXd to_vector(const MassFunction& m) const;
  MassFunction to_mass(const Frame& fine, const Eigen::VectorXd& x) const;
  double residual(const Eigen::VectorXd& x) const;
};

ConstraintSystem build_constraint_system(const TotalBeliefProblem& problem);

/// Another nonnegative solution of the constraint system, obtained by
/// moving from the canonical solution along a kernel direction by half the
/// largest step that keeps every mass nonnegative.
MassFunction alternative_total(const TotalBeliefProblem& problem, std::size_t kernel_index = 0);

/// Square candidate system for one prior focal element E: rows are the
/// conditional constraints of the cells in E (last focal element of each
/// cell dropped) plus normalization; columns are tuples.
struct SolutionSystem {
  Mask coarse = 0;
  std::vector<std::size_t> cells;
  std::vector<std::size_t> focal_counts;
  std::vector<std::vector<std::size_t>> columns;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd x;
  bool singular = false;

  double most_negative() const;
};

std::size_t minimal_column_count(const TotalBeliefProblem& problem, Mask coarse_focal);

SolutionSystem make_solution_system(const TotalBeliefProblem& problem, Mask coarse_focal,
                                    const std::vector<std::vector<std::size_t>>& columns);

struct EnumerationResult {
  std::vector<SolutionSystem> nonnegative;
  std::size_t systems_checked = 0;
  std::size_t singular_skipped = 0;
  bool truncated = false;
};

inline constexpr std::uint64_t kMaxEnumeratedSystems = std::uint64_t{1} << 20;

/// All n_min-column subsets of the admissible columns for E whose square
/// system is nonsingular with every component ≥ −tol. Stops after `limit`
/// solutions; throws IntractableInstance beyond 2^20 subsets.
EnumerationResult enumerate_minimal_solutions(const TotalBeliefProblem& problem, Mask coarse_focal,
                                              std::size_t limit = 1000, double tol = 1e-10);

/// Special case (disjoint prior focal elements): every combination of one
/// minimal solution per prior focal element, weighted by m₀(E). Stops
/// after `limit` totals.
std::vector<MassFunction> enumerate_special_totals(const TotalBeliefProblem& problem,
                                                   std::size_t limit = 1000,
                                                   double tol = 1e-10);

MassFunction assemble_special_total(const TotalBeliefProblem& problem,
                                    const std::vector<SolutionSystem>& per_focal);

struct SubstitutionReport {
  std::size_t column = 0;
  double s = 0.0;
  std::vector<std::size_t> companions;
  std::vector<std::size_t> selections;
  std::vector<std::size_t> new_column;
  /// Solution predicted by the bookkeeping rules.
  Eigen::VectorXd predicted;
  SolutionSystem result;
  /// Max |predicted − re-solved| component.
  double bookkeeping_error = 0.0;
  double most_negative_before = 0.0;
  double most_negative_after = 0.0;
};

/// Replaces column `column` (negative component s) by e' = −e + Σ_C e_i −
/// Σ_S e_j. Companions C are searched by increasing size up to the number
/// of cells, selections S have |C| − 2 members; the first combination
/// yielding a new admissible column with a nonsingular system is used.
SubstitutionReport column_substitution(const TotalBeliefProblem& problem,
                                       const SolutionSystem& system, std::size_t column);

}  // namespace beliefkit
