#include "beliefkit/simplex_lp.hpp"

#include <limits>
#include <vector>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

struct Tableau {
  // Rows 0..m-1 are constraints [A | b]; row m holds reduced costs and −z.
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;
  Eigen::Index m = 0;
  Eigen::Index cols = 0;

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[r] = c;
  }

  void price_out(const Eigen::VectorXd& cost) {
    t.row(m).setZero();
    t.row(m).head(cols) = cost.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double cb = cost(basis[i]);
      if (cb != 0.0) t.row(m) -= cb * t.row(i);
    }
  }

  /// Simplex iterations restricted to columns with allowed[j].
  LpStatus run(const std::vector<bool>& allowed, std::size_t& pivots, std::size_t max_pivots,
               double tol) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (allowed[j] && t(m, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, enter) > tol) {
          const double ratio = t(i, cols) / t(i, enter);
          if (ratio < best - 1e-14 ||
              (ratio <= best + 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
            best = std::min(best, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      if (++pivots > max_pivots) return LpStatus::iteration_limit;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, std::size_t max_pivots, double tol) {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index mu = lp.a_ub.rows();
  const Eigen::Index me = lp.a_eq.rows();
  if ((mu > 0 && (lp.a_ub.cols() != n || lp.b_ub.size() != mu)) ||
      (me > 0 && (lp.a_eq.cols() != n || lp.b_eq.size() != me))) {
    throw DomainError("linear program dimensions do not match");
  }
  const Eigen::Index m = mu + me;
  // Columns: x, one slack per inequality, one artificial per row.
  const Eigen::Index slack0 = n, art0 = n + mu, cols = n + mu + m;
  Tableau tab;
  tab.m = m;
  tab.cols = cols;
  tab.t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  tab.basis.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool ub = i < mu;
    Eigen::RowVectorXd row = ub ? lp.a_ub.row(i) : lp.a_eq.row(i - mu);
    double rhs = ub ? lp.b_ub(i) : lp.b_eq(i - mu);
    double slack = ub ? 1.0 : 0.0;
    const double sign = rhs < 0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * row;
    if (ub) tab.t(i, slack0 + i) = sign * slack;
    tab.t(i, art0 + i) = 1.0;
    tab.t(i, cols) = sign * rhs;
    tab.basis[i] = art0 + i;
  }

  LpResult out;
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
  phase1.tail(m).setOnes();
  tab.price_out(phase1);
  std::vector<bool> allowed(cols, true);
  out.status = tab.run(allowed, out.pivots, max_pivots, tol);
  if (out.status == LpStatus::iteration_limit) return out;
  const double infeasibility = -tab.t(m, cols);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(tab.t(i, cols)));
  if (infeasibility > 1e-9 * scale) {
    out.status = LpStatus::infeasible;
    return out;
  }
  // Drive remaining artificials out of the basis where possible; rows where
  // that fails are redundant and keep a zero-valued artificial.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[i] < art0) continue;
    for (Eigen::Index j = 0; j < art0; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  for (Eigen::Index j = art0; j < cols; ++j) allowed[j] = false;
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  phase2.head(n) = lp.c;
  tab.price_out(phase2);
  out.status = tab.run(allowed, out.pivots, max_pivots, tol);
  if (out.status != LpStatus::optimal) return out;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[i] < n) out.x(tab.basis[i]) = std::max(0.0, tab.t(i, cols));
  }
  out.objective = lp.c.dot(out.x);
  return out;
}

}  // namespace beliefkit
