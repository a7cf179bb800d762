#include "beliefkit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

double clamp_eta(double eta) { return std::clamp(eta, -kExponentClamp, kExponentClamp); }

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Value and derivatives of one term in (η, β₂).
struct Term {
  double f = 0.0;
  double fe = 0.0;
  double fb = 0.0;
  double fee = 0.0;
  double feb = 0.0;
  double fbb = 0.0;

  Term& operator+=(const Term& o) {
    f += o.f;
    fe += o.fe;
    fb += o.fb;
    fee += o.fee;
    feb += o.feb;
    fbb += o.fbb;
    return *this;
  }
};

// `om` is 1 − β₂, passed separately so it keeps full precision near β₂ = 1.
Term sample_term(FitTarget target, int y, double eta, double b2, double om) {
  Term t;
  const double s = sigmoid(eta);
  const double u = sigmoid(-eta);
  const double g = s * u;
  if (target == FitTarget::lower) {
    if (y == 1) {
      t.f = -std::log1p(std::exp(-eta));
      t.fe = u;
    } else {
      if (!(b2 > 0.0)) throw DomainError("beta2 must be positive when some outcome is 0");
      t.f = std::log(b2) - std::log1p(std::exp(eta));
      t.fe = -s;
      t.fb = 1.0 / b2;
      t.fbb = -1.0 / (b2 * b2);
    }
    t.fee = -g;
    return t;
  }
  if (y == 1) {
    const double d = om + b2 * s;  // 1 − β₂u
    t.f = std::log(d);
    t.fe = b2 * g / d;
    t.fee = b2 * g * ((1.0 - 2.0 * s) * d - b2 * g) / (d * d);
    t.feb = g / (d * d);
    t.fb = -u / d;
    t.fbb = -u * u / (d * d);
  } else {
    t.f = -std::log1p(std::exp(eta));
    t.fe = -s;
    t.fee = -g;
  }
  return t;
}

Term objective_terms(FitTarget target, double b0, double b1, double b2, double om,
                     const std::vector<RegressionSample>& data, std::array<double, 3>* grad,
                     Eigen::Matrix3d* hess) {
  Term total;
  if (grad) grad->fill(0.0);
  if (hess) hess->setZero();
  for (const auto& smp : data) {
    if (!smp.y) continue;
    const double raw = b0 + b1 * smp.x;
    const double eta = clamp_eta(raw);
    Term t = sample_term(target, *smp.y, eta, b2, om);
    if (eta != raw) t.fe = t.fee = t.feb = 0.0;
    total += t;
    if (grad) {
      (*grad)[0] += t.fe;
      (*grad)[1] += t.fe * smp.x;
      (*grad)[2] += t.fb;
    }
    if (hess) {
      const double x = smp.x;
      Eigen::Matrix3d h;
      h << t.fee, t.fee * x, t.feb, t.fee * x, t.fee * x * x, t.feb * x, t.feb, t.feb * x, t.fbb;
      *hess += h;
    }
  }
  return total;
}

void require_outcomes(const std::vector<RegressionSample>& data) {
  if (data.empty()) throw DomainError("regression data is empty");
  for (const auto& s : data) {
    if (!std::isfinite(s.x)) throw DomainError("covariate must be finite");
    if (s.y && *s.y != 0 && *s.y != 1) throw DomainError("outcome must be 0, 1 or missing");
  }
}

// Barrier-augmented objective in the optimizer's coordinates. β₂ = σ(t), so
// both β₂ and 1 − β₂ stay exact near the ends of (0, 1).
struct Evaluation {
  double F = 0.0;
  double f = 0.0;
  Eigen::VectorXd g;       // gradient in optimizer coordinates
  Eigen::MatrixXd H;       // Hessian in optimizer coordinates
  Eigen::Vector3d g_nat;   // gradient of F in (β₀, β₁, β₂)
};

class BarrierProblem {
 public:
  BarrierProblem(const std::vector<RegressionSample>& data, const FitConfig& cfg)
      : data_(data), cfg_(cfg), dim_(cfg.fix_beta2 ? 2 : 3) {}

  std::size_t dim() const { return dim_; }

  double beta2(const Eigen::VectorXd& v) const { return dim_ == 2 ? 1.0 : sigmoid(v[2]); }
  double one_minus_beta2(const Eigen::VectorXd& v) const {
    return dim_ == 2 ? 0.0 : sigmoid(-v[2]);
  }

  Evaluation evaluate(const Eigen::VectorXd& v, double tau) const {
    const double b2 = beta2(v);
    const double om = one_minus_beta2(v);
    Evaluation e;
    if (dim_ == 3 && !(b2 > 0.0 && om > 0.0)) {
      e.F = e.f = -std::numeric_limits<double>::infinity();
      return e;
    }
    std::array<double, 3> grad;
    Eigen::Matrix3d hess;
    const Term obj = objective_terms(cfg_.target, v[0], v[1], b2, om, data_, &grad, &hess);
    e.f = obj.f;
    double F = obj.f;
    Eigen::Vector3d g(grad[0], grad[1], grad[2]);
    Eigen::Matrix3d H = hess;
    if (dim_ == 3) {
      F += tau * (std::log(om) + std::log(b2));
      g[2] += tau * (1.0 / b2 - 1.0 / om);
      H(2, 2) += tau * (-1.0 / (b2 * b2) - 1.0 / (om * om));
    }
    e.F = F;
    e.g_nat = g;
    if (dim_ == 2) {
      e.g = g.head<2>();
      e.H = H.topLeftCorner<2, 2>();
      return e;
    }
    // Chain rule to t with dβ₂/dt = β₂(1 − β₂).
    const double h1 = b2 * om;
    const double h2 = h1 * (om - b2);
    e.g = g;
    e.g[2] = g[2] * h1;
    e.H = H;
    e.H(0, 2) = e.H(2, 0) = H(0, 2) * h1;
    e.H(1, 2) = e.H(2, 1) = H(1, 2) * h1;
    e.H(2, 2) = H(2, 2) * h1 * h1 + g[2] * h2;
    return e;
  }

 private:
  const std::vector<RegressionSample>& data_;
  const FitConfig& cfg_;
  std::size_t dim_;
};

Eigen::VectorXd ascent_direction(const Evaluation& e) {
  const std::size_t n = static_cast<std::size_t>(e.g.size());
  Eigen::MatrixXd A = -e.H;
  double lambda = 0.0;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 60; ++attempt) {
    Eigen::MatrixXd M = A + lambda * Eigen::MatrixXd::Identity(n, n);
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd d = llt.solve(e.g);
      if (d.allFinite()) return d;
    }
    lambda = lambda == 0.0 ? 1e-10 * scale : lambda * 10.0;
  }
  return e.g;
}

}  // namespace

FitTarget parse_fit_target(std::string_view name) {
  if (name == "lower") return FitTarget::lower;
  if (name == "upper") return FitTarget::upper;
  throw DomainError("target must be 'lower' or 'upper'");
}

LogitLinks logit_links(const BetaParams& params, double x) {
  const double eta = clamp_eta(params.beta0 + params.beta1 * x);
  const double p = sigmoid(eta);
  return {p, params.beta2 * sigmoid(-eta)};
}

double log_likelihood(FitTarget target, const BetaParams& params,
                      const std::vector<RegressionSample>& data) {
  require_outcomes(data);
  return objective_terms(target, params.beta0, params.beta1, params.beta2, 1.0 - params.beta2,
                         data, nullptr, nullptr)
      .f;
}

double lower_log_likelihood(const BetaParams& params, const std::vector<RegressionSample>& data) {
  return log_likelihood(FitTarget::lower, params, data);
}

double upper_log_likelihood(const BetaParams& params, const std::vector<RegressionSample>& data) {
  return log_likelihood(FitTarget::upper, params, data);
}

std::array<double, 3> log_likelihood_gradient(FitTarget target, const BetaParams& params,
                                              const std::vector<RegressionSample>& data) {
  require_outcomes(data);
  std::array<double, 3> g;
  objective_terms(target, params.beta0, params.beta1, params.beta2, 1.0 - params.beta2, data, &g,
                  nullptr);
  return g;
}

KktReport kkt_residuals(FitTarget target, const BetaParams& params, const KktMultipliers& mult,
                        const std::vector<RegressionSample>& data) {
  if (mult.mu.size() != data.size()) throw DomainError("one multiplier per sample is required");
  const auto grad = log_likelihood_gradient(target, params, data);
  KktReport r;
  // Stationarity: ∇f = Σ μ_j ∇g_j for constraints g_j ≤ 0.
  r.stationarity = grad;
  r.stationarity[2] -= mult.mu0 - mult.mu_positive;
  double slack = std::max(std::abs(mult.mu0 * (params.beta2 - 1.0)),
                   std::abs(mult.mu_positive * params.beta2));
  double primal = std::max({0.0, params.beta2 - 1.0, -params.beta2});
  double dual = std::max({0.0, -mult.mu0, -mult.mu_positive});
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double raw = params.beta0 + params.beta1 * data[i].x;
    const double eta = clamp_eta(raw);
    const double ee = std::exp(eta);
    const double mu = mult.mu[i];
    const double de = eta == raw ? ee : 0.0;
    r.stationarity[0] += mu * de;
    r.stationarity[1] += mu * de * data[i].x;
    r.stationarity[2] += mu;
    const double gi = -params.beta2 - ee;
    primal = std::max(primal, gi);
    dual = std::max(dual, -mu);
    slack = std::max(slack, std::abs(mu * gi));
  }
  r.primal = primal;
  r.dual = dual;
  r.slackness = slack;
  r.residual = std::max({std::abs(r.stationarity[0]), std::abs(r.stationarity[1]),
                         std::abs(r.stationarity[2]), primal, dual, slack});
  return r;
}

std::array<double, 2> classical_logistic(const std::vector<RegressionSample>& data,
                                         std::size_t max_iterations) {
  require_outcomes(data);
  Eigen::Vector2d b(0.0, 0.0);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
    for (const auto& s : data) {
      if (!s.y) continue;
      const double p = sigmoid(clamp_eta(b[0] + b[1] * s.x));
      const Eigen::Vector2d z(1.0, s.x);
      g += (*s.y - p) * z;
      H += p * (1.0 - p) * z * z.transpose();
    }
    if (g.cwiseAbs().maxCoeff() <= 1e-11) break;
    H += 1e-12 * Eigen::Matrix2d::Identity();
    Eigen::Vector2d step = H.ldlt().solve(g);
    if (!step.allFinite()) break;
    const double len = step.norm();
    if (len > 10.0) step *= 10.0 / len;
    b += step;
    if (std::abs(b[0]) > kExponentClamp || std::abs(b[1]) > kExponentClamp) break;
  }
  return {b[0], b[1]};
}

FitResult fit_logistic(const std::vector<RegressionSample>& data, const FitConfig& config) {
  require_outcomes(data);
  std::set<double> xs;
  std::size_t zeros = 0;
  std::size_t observed = 0;
  for (const auto& s : data) {
    if (!s.y) continue;
    ++observed;
    xs.insert(s.x);
    if (*s.y == 0) ++zeros;
  }
  if (observed == 0) throw DomainError("no observed outcomes to fit");

  FitResult res;
  if (xs.size() < 2) {
    res.diagnostics.push_back("single distinct covariate value: beta0 and beta1 not separately identified");
  }

  BarrierProblem prob(data, config);
  const std::size_t dim = prob.dim();
  const auto init = classical_logistic(data);
  Eigen::VectorXd v(dim);
  v[0] = init[0];
  v[1] = init[1];
  if (dim == 3) v[2] = std::log((1.0 - 1e-3) / 1e-3);

  bool all_phases_converged = true;
  double tau = config.tau_initial;
  Evaluation cur;
  while (true) {
    cur = prob.evaluate(v, tau);
    bool phase_ok = false;
    while (res.iterations < config.max_iterations) {
      if (cur.g_nat.head(dim).cwiseAbs().maxCoeff() <= config.gradient_tol) {
        phase_ok = true;
        break;
      }
      const Eigen::VectorXd d = ascent_direction(cur);
      const double slope = cur.g.dot(d);
      double alpha = 1.0;
      bool accepted = false;
      Evaluation next;
      for (int k = 0; k < 80; ++k, alpha *= 0.5) {
        const Eigen::VectorXd trial = v + alpha * d;
        if (!trial.allFinite()) continue;
        next = prob.evaluate(trial, tau);
        if (!std::isfinite(next.F)) continue;
        // Accepted iterates never lower the likelihood itself.
        if (next.f < cur.f - 1e-12 * (1.0 + std::abs(cur.f))) continue;
        const bool armijo = next.F >= cur.F + 1e-4 * alpha * slope;
        // At round-off level F cannot resolve progress; fall back to the gradient.
        const bool flat = next.F >= cur.F - 1e-13 * (1.0 + std::abs(cur.F)) &&
                          next.g_nat.cwiseAbs().maxCoeff() < cur.g_nat.cwiseAbs().maxCoeff();
        if (armijo || flat) {
          v = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      cur = next;
      ++res.iterations;
      res.objective_trace.push_back(cur.f);
    }
    if (!phase_ok) all_phases_converged = false;
    if (tau <= config.tau_final * (1.0 + 1e-12) || res.iterations >= config.max_iterations) break;
    tau = std::max(config.tau_final, tau * config.tau_factor);
  }

  const double b2 = prob.beta2(v);
  const double om = prob.one_minus_beta2(v);
  res.params = {v[0], v[1], b2};
  res.objective = cur.f;
  // −β₂ − e^η ≤ 0 holds strictly whenever β₂ > 0, so those constraints are
  // never active and carry no barrier; their multipliers are exactly zero.
  res.multipliers.mu.assign(data.size(), 0.0);
  if (dim == 3) {
    res.multipliers.mu0 = tau / om;
    res.multipliers.mu_positive = tau / b2;
  } else {
    // β₂ held on its upper bound: μ₀ absorbs the β₂ stationarity equation.
    res.multipliers.mu0 = log_likelihood_gradient(config.target, res.params, data)[2];
  }
  res.kkt = kkt_residuals(config.target, res.params, res.multipliers, data);
  res.kkt_residual = res.kkt.residual;
  res.converged = all_phases_converged && res.kkt_residual <= config.kkt_tol;
  if (!all_phases_converged) {
    res.diagnostics.push_back(res.iterations >= config.max_iterations
                                  ? "iteration limit reached"
                                  : "line search stalled before the gradient tolerance");
  }
  if (config.target == FitTarget::lower && zeros == 0 && dim == 3) {
    res.diagnostics.push_back("no zero outcomes: beta2 does not enter the objective and is unidentified");
  }
  if (config.target == FitTarget::upper && dim == 3 && b2 < 1e-6) {
    res.converged = false;
    res.diagnostics.push_back(
        "upper likelihood increases toward the vacuous limit beta2 -> 0, p -> 0; no interior maximizer");
  }
  return res;
}

IntervalPrediction predict_interval(const FitResult& lower_fit, const FitResult& upper_fit,
                                    double x) {
  IntervalPrediction out;
  const auto lo = logit_links(lower_fit.params, x);
  const auto up = logit_links(upper_fit.params, x);
  out.lower = {lo.p, 1.0 - lo.q, lower_fit.converged};
  out.upper = {up.p, 1.0 - up.q, upper_fit.converged};
  return out;
}

}  // namespace beliefkit
