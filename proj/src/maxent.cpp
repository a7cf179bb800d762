#include "beliefkit/maxent.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "beliefkit/errors.hpp"
#include "beliefkit/transforms.hpp"

namespace beliefkit {

namespace {

double flog(double v) { return std::log(std::max(v, kLogFloor)); }
double finv(double v) { return 1.0 / std::max(v, kLogFloor); }

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

struct EntropyEval {
  double value = 0.0;
  /// Indexed by mask − 1.
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

// `m` is dense over the power set with m[0] ignored.
EntropyEval evaluate(EntropyKind kind, std::vector<double> m, std::size_t n, bool want_hess) {
  const std::size_t size = std::size_t{1} << n;
  const Mask full = static_cast<Mask>(size - 1);
  const Eigen::Index count = static_cast<Eigen::Index>(size - 1);
  m[0] = 0.0;
  EntropyEval e;
  e.grad = Eigen::VectorXd::Zero(count);
  if (want_hess) e.hess = Eigen::MatrixXd::Zero(count, count);
  auto g = [](Mask a) { return static_cast<Eigen::Index>(a - 1); };

  switch (kind) {
    case EntropyKind::Hn:
      for (Mask a = 1; a <= full; ++a) {
        e.value -= xlogx(m[a]);
        e.grad(g(a)) = -(1.0 + flog(m[a]));
        if (want_hess) e.hess(g(a), g(a)) = -finv(m[a]);
      }
      break;
    case EntropyKind::Hd:
      for (Mask a = 1; a <= full; ++a) {
        const double l = std::log(static_cast<double>(cardinality(a)));
        e.value += m[a] * l;
        e.grad(g(a)) = l;
      }
      break;
    case EntropyKind::HBel: {
      std::vector<double> bel = m;
      zeta_subset(bel, n);
      std::vector<double> u(size, 0.0), w(size, 0.0);
      for (Mask a = 1; a <= full; ++a) {
        e.value -= xlogx(bel[a]);
        u[a] = -(1.0 + flog(bel[a]));
        w[a] = finv(bel[a]);
      }
      zeta_superset(u, n);
      for (Mask b = 1; b <= full; ++b) e.grad(g(b)) = u[b];
      if (want_hess) {
        zeta_superset(w, n);
        for (Mask b = 1; b <= full; ++b) {
          for (Mask c = 1; c <= full; ++c) e.hess(g(b), g(c)) = -w[b | c];
        }
      }
      break;
    }
    case EntropyKind::HPl: {
      std::vector<double> below = m;
      zeta_subset(below, n);
      const double total = below[full];
      std::vector<double> u(size, 0.0), w(size, 0.0);
      double usum = 0.0, wsum = 0.0;
      for (Mask a = 1; a <= full; ++a) {
        const double pl = total - below[full & ~a];
        e.value -= xlogx(pl);
        u[a] = -(1.0 + flog(pl));
        w[a] = finv(pl);
        usum += u[a];
        wsum += w[a];
      }
      zeta_subset(u, n);
      for (Mask b = 1; b <= full; ++b) e.grad(g(b)) = usum - u[full & ~b];
      if (want_hess) {
        zeta_subset(w, n);
        for (Mask b = 1; b <= full; ++b) {
          for (Mask c = 1; c <= full; ++c) {
            e.hess(g(b), g(c)) =
                -(wsum - w[full & ~b] - w[full & ~c] + w[full & ~(b | c)]);
          }
        }
      }
      break;
    }
    case EntropyKind::Ht: {
      std::vector<double> q = m;
      zeta_superset(q, n);
      std::vector<double> v(size, 0.0), v2(size, 0.0);
      for (Mask a = 1; a <= full; ++a) {
        e.value -= flog(q[a]);
        v[a] = finv(q[a]);
        v2[a] = v[a] * v[a];
      }
      zeta_subset(v, n);
      for (Mask b = 1; b <= full; ++b) e.grad(g(b)) = -v[b];
      if (want_hess) {
        zeta_subset(v2, n);
        for (Mask b = 1; b <= full; ++b) {
          for (Mask c = 1; c <= full; ++c) e.hess(g(b), g(c)) = v2[b & c];
        }
      }
      break;
    }
  }
  return e;
}

std::vector<double> dense_of(const MassFunction& m) {
  m.frame().power_set_size();
  return m.dense();
}

struct LinearConstraints {
  // g(m) = C m − d ≤ 0; rows 0..M−1 are g¹, rows M..2M−1 are g².
  Eigen::MatrixXd c;
  Eigen::VectorXd d;
};

LinearConstraints build_constraints(const MaxentProblem& p) {
  const std::size_t n = p.frame.size();
  const Mask full = p.frame.full();
  const Eigen::Index mcount = static_cast<Eigen::Index>(p.features.size());
  LinearConstraints lc;
  lc.c = Eigen::MatrixXd::Zero(2 * mcount, static_cast<Eigen::Index>(full));
  lc.d = Eigen::VectorXd::Zero(2 * mcount);
  for (Eigen::Index j = 0; j < mcount; ++j) {
    const auto& phi = p.features[static_cast<std::size_t>(j)];
    const double e = empirical_expectation(p, static_cast<std::size_t>(j));
    for (Mask a = 1; a <= full; ++a) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        if (a & (Mask{1} << t)) s += phi[t];
      }
      if (cardinality(a) == 1) lc.c(j, static_cast<Eigen::Index>(a - 1)) = s;
      lc.c(mcount + j, static_cast<Eigen::Index>(a - 1)) = -s;
    }
    lc.d(j) = e;
    lc.d(mcount + j) = -e;
  }
  return lc;
}

}  // namespace

EntropyKind parse_entropy_kind(std::string_view name) {
  if (name == "Ht") return EntropyKind::Ht;
  if (name == "Hn") return EntropyKind::Hn;
  if (name == "Hd") return EntropyKind::Hd;
  if (name == "HBel") return EntropyKind::HBel;
  if (name == "HPl") return EntropyKind::HPl;
  throw DomainError("unsupported entropy kind: " + std::string(name));
}

std::string entropy_kind_name(EntropyKind k) {
  switch (k) {
    case EntropyKind::Ht: return "Ht";
    case EntropyKind::Hn: return "Hn";
    case EntropyKind::Hd: return "Hd";
    case EntropyKind::HBel: return "HBel";
    case EntropyKind::HPl: return "HPl";
  }
  return "?";
}

double entropy(const MassFunction& m, EntropyKind kind) {
  return evaluate(kind, dense_of(m), m.frame().size(), false).value;
}

std::vector<double> entropy_gradient(const MassFunction& m, EntropyKind kind) {
  const auto e = evaluate(kind, dense_of(m), m.frame().size(), false);
  return std::vector<double>(e.grad.data(), e.grad.data() + e.grad.size());
}

ConcavityReport concavity_check(EntropyKind kind, const Frame& frame, std::size_t pairs, Rng& rng) {
  ConcavityReport rep;
  rep.pairs = pairs;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = frame.size();
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto a = dense_of(random_full_mass(frame, rng));
    const auto b = dense_of(random_full_mass(frame, rng));
    const double alpha = u(rng);
    std::vector<double> mix(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mix[k] = alpha * a[k] + (1 - alpha) * b[k];
    const double chord = alpha * evaluate(kind, a, n, false).value +
                         (1 - alpha) * evaluate(kind, b, n, false).value;
    rep.max_violation = std::max(rep.max_violation, chord - evaluate(kind, mix, n, false).value);
  }
  return rep;
}

void MaxentProblem::validate() const {
  const std::size_t size = x_values.size() * classes.size();
  if (x_values.empty() || classes.empty()) throw DomainError("maxent needs observations and classes");
  if (size > kMaxMaxentFrame) throw FrameTooLarge("maxent joint frame exceeds 16 outcomes");
  if (frame.size() != size || histogram.size() != size) {
    throw DomainError("maxent histogram size does not match X × C");
  }
  double s = 0.0;
  for (double h : histogram) {
    if (!(h >= 0.0)) throw DomainError("histogram entries must be nonnegative");
    s += h;
  }
  if (std::abs(s - 1.0) > 1e-9) throw NormalizationError("histogram must sum to one");
  for (const auto& f : features) {
    if (f.size() != size) throw DomainError("feature table size does not match X × C");
    for (double v : f) {
      if (!std::isfinite(v)) throw DomainError("feature values must be finite");
    }
  }
}

MaxentProblem make_maxent_problem(std::vector<std::string> x_values,
                                  std::vector<std::string> classes, std::vector<double> histogram,
                                  std::vector<std::vector<double>> features, EntropyKind entropy) {
  MaxentProblem p;
  std::vector<std::string> labels;
  for (const auto& x : x_values) {
    for (const auto& c : classes) labels.push_back(x + "|" + c);
  }
  if (labels.size() > kMaxMaxentFrame) throw FrameTooLarge("maxent joint frame exceeds 16 outcomes");
  p.frame = Frame(labels);
  p.x_values = std::move(x_values);
  p.classes = std::move(classes);
  p.histogram = std::move(histogram);
  p.features = std::move(features);
  p.entropy = entropy;
  p.validate();
  return p;
}

std::vector<double> histogram_from_samples(const std::vector<std::string>& x_values,
                                           const std::vector<std::string>& classes,
                                           const std::vector<std::pair<std::string, std::string>>& samples) {
  if (samples.empty()) throw DomainError("empty training set");
  std::vector<double> h(x_values.size() * classes.size(), 0.0);
  for (const auto& [x, c] : samples) {
    const auto xi = std::find(x_values.begin(), x_values.end(), x);
    const auto ci = std::find(classes.begin(), classes.end(), c);
    if (xi == x_values.end() || ci == classes.end()) {
      throw DomainError("sample (" + x + ", " + c + ") outside the declared values");
    }
    h[static_cast<std::size_t>(xi - x_values.begin()) * classes.size() +
      static_cast<std::size_t>(ci - classes.begin())] += 1.0;
  }
  for (double& v : h) v /= static_cast<double>(samples.size());
  return h;
}

double empirical_expectation(const MaxentProblem& problem, std::size_t m_index) {
  const auto& phi = problem.features.at(m_index);
  double s = 0.0;
  for (std::size_t t = 0; t < phi.size(); ++t) s += problem.histogram[t] * phi[t];
  return s;
}

std::vector<ConstraintValue> constraint_values(const MaxentProblem& problem, const MassFunction& m) {
  if (!(m.frame() == problem.frame)) throw FrameMismatch("BPA is not on the joint frame");
  std::vector<ConstraintValue> out;
  const std::size_t n = problem.frame.size();
  for (std::size_t j = 0; j < problem.features.size(); ++j) {
    const auto& phi = problem.features[j];
    double lower = 0.0, upper = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      lower += m.belief(Mask{1} << t) * phi[t];
      upper += phi[t] * (problem.histogram[t] - m.plausibility(Mask{1} << t));
    }
    out.push_back({lower - empirical_expectation(problem, j), upper});
  }
  return out;
}

MassFunction histogram_bpa(const MaxentProblem& problem) {
  return MassFunction::bayesian(problem.frame, problem.histogram);
}

MaxentFit fit_maxent(const MaxentProblem& problem, const MaxentConfig& config) {
  problem.validate();
  const std::size_t n = problem.frame.size();
  if (n > kMaxMaxentFitFrame) {
    throw IntractableInstance("maxent fitting is limited to 10 joint outcomes");
  }
  const LinearConstraints lc = build_constraints(problem);
  const Eigen::Index nm = static_cast<Eigen::Index>(problem.frame.full());
  const Eigen::Index p = lc.c.rows();
  const bool drop_curvature = problem.entropy == EntropyKind::Ht;

  Eigen::VectorXd m = Eigen::VectorXd::Constant(nm, 1.0 / static_cast<double>(nm));
  Eigen::VectorXd s = (lc.d - lc.c * m).cwiseMax(1.0);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(p);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(nm);
  double lambda = 0.0;

  auto dense = [&](const Eigen::VectorXd& v) {
    std::vector<double> d(static_cast<std::size_t>(nm) + 1, 0.0);
    for (Eigen::Index i = 0; i < nm; ++i) d[static_cast<std::size_t>(i) + 1] = v(i);
    return d;
  };
  // Minimizes f = −H.
  struct Residuals {
    Eigen::VectorXd rd, rc, rsw, rmz;
    double re = 0.0;
    double norm() const {
      return std::sqrt(rd.squaredNorm() + rc.squaredNorm() + rsw.squaredNorm() +
                       rmz.squaredNorm() + re * re);
    }
  };
  auto residuals = [&](const Eigen::VectorXd& mm, const Eigen::VectorXd& ss,
                       const Eigen::VectorXd& ww, const Eigen::VectorXd& zz, double lam,
                       double target) {
    const auto e = evaluate(problem.entropy, dense(mm), n, false);
    Residuals r;
    r.rd = -e.grad + Eigen::VectorXd::Constant(nm, lam) + lc.c.transpose() * ww - zz;
    r.re = mm.sum() - 1.0;
    r.rc = lc.c * mm + ss - lc.d;
    r.rsw = (ss.array() * ww.array() - target).matrix();
    r.rmz = (mm.array() * zz.array() - target).matrix();
    return r;
  };

  MaxentFit fit;
  const double pairs = static_cast<double>(nm + p);
  for (fit.iterations = 0; fit.iterations < config.max_iterations; ++fit.iterations) {
    const double gap = (s.dot(w) + m.dot(z)) / pairs;
    const Residuals r0 = residuals(m, s, w, z, lambda, 0.0);
    const double infeas = std::max({r0.rd.lpNorm<Eigen::Infinity>(), std::abs(r0.re),
                                    p > 0 ? r0.rc.lpNorm<Eigen::Infinity>() : 0.0});
    if (infeas <= 1e-9 && gap <= config.tol * 0.1) {
      fit.converged = true;
      break;
    }
    const double target = 0.1 * gap;
    const Residuals r = residuals(m, s, w, z, lambda, target);

    const auto e = evaluate(problem.entropy, dense(m), n, !drop_curvature);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nm + 1, nm + 1);
    if (!drop_curvature) k.topLeftCorner(nm, nm) = -e.hess;
    const Eigen::VectorXd sw = (w.array() / s.array()).matrix();
    k.topLeftCorner(nm, nm) += lc.c.transpose() * sw.asDiagonal() * lc.c;
    k.topLeftCorner(nm, nm).diagonal() += (z.array() / m.array()).matrix();
    k.block(0, nm, nm, 1).setOnes();
    k.block(nm, 0, 1, nm).setOnes();
    // −r_sw and −r_mz are σμ − s∘w and σμ − m∘z.
    const Eigen::VectorXd tsw = -r.rsw + (w.array() * r.rc.array()).matrix();
    Eigen::VectorXd rhs(nm + 1);
    rhs.head(nm) = -r.rd - lc.c.transpose() * (tsw.array() / s.array()).matrix() +
                   (-r.rmz.array() / m.array()).matrix();
    rhs(nm) = -r.re;
    const Eigen::VectorXd sol = k.partialPivLu().solve(rhs);
    if (!sol.allFinite()) {
      fit.diagnostics.push_back("Newton system became singular");
      break;
    }
    const Eigen::VectorXd dm = sol.head(nm);
    const double dl = sol(nm);
    const Eigen::VectorXd ds = -r.rc - lc.c * dm;
    const Eigen::VectorXd dw = ((tsw + (w.array() * (lc.c * dm).array()).matrix()).array() /
                                s.array()).matrix();
    const Eigen::VectorXd dz = ((-r.rmz.array() - z.array() * dm.array()) / m.array()).matrix();

    auto max_step = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
      double a = 1.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv(i) < 0) a = std::min(a, -0.99 * v(i) / dv(i));
      }
      return a;
    };
    // A common step length keeps the direction a Newton direction for the
    // residual merit function.
    double a = std::min({max_step(m, dm), max_step(s, ds), max_step(w, dw), max_step(z, dz)});
    const double base = r.norm();
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::VectorXd mn = m + a * dm, sn = s + a * ds;
      const Eigen::VectorXd wn = w + a * dw, zn = z + a * dz;
      const double ln = lambda + a * dl;
      if (residuals(mn, sn, wn, zn, ln, target).norm() <= (1.0 - 1e-4 * a) * base ||
          bt == 39) {
        m = mn;
        s = sn;
        w = wn;
        z = zn;
        lambda = ln;
        accepted = bt < 39;
        break;
      }
      a *= 0.5;
    }
    if (!accepted) {
      fit.diagnostics.push_back("line search stalled");
      break;
    }
  }
  if (!fit.converged && fit.diagnostics.empty()) fit.diagnostics.push_back("iteration limit reached");
  if (drop_curvature) {
    fit.diagnostics.push_back("Ht is convex in m; the result is a stationary point only");
  }

  std::vector<MassFunction::Entry> entries;
  for (Eigen::Index i = 0; i < nm; ++i) {
    if (m(i) > 0.0) entries.emplace_back(static_cast<Mask>(i + 1), m(i));
  }
  fit.mass = MassFunction(problem.frame, entries);
  fit.entropy = entropy(fit.mass, problem.entropy);
  const Eigen::Index mcount = static_cast<Eigen::Index>(problem.features.size());
  fit.mu1.assign(w.data(), w.data() + mcount);
  fit.mu2.assign(w.data() + mcount, w.data() + p);
  fit.nu = lambda;
  fit.z.assign(z.data(), z.data() + nm);

  const auto e = evaluate(problem.entropy, dense(m), n, false);
  const Eigen::VectorXd g = lc.c * m - lc.d;
  MaxentKkt& kkt = fit.kkt;
  kkt.stationarity =
      (e.grad - Eigen::VectorXd::Constant(nm, lambda) - lc.c.transpose() * w + z).lpNorm<Eigen::Infinity>();
  kkt.primal = std::max({g.size() > 0 ? g.maxCoeff() : 0.0, 0.0, std::abs(m.sum() - 1.0),
                         -m.minCoeff()});
  kkt.dual = std::max({0.0, w.size() > 0 ? -w.minCoeff() : 0.0, -z.minCoeff()});
  kkt.slackness = std::max((w.array() * g.array()).abs().maxCoeff(),
                           (z.array() * m.array()).abs().maxCoeff());
  kkt.residual = std::max({kkt.stationarity, kkt.primal, kkt.dual, kkt.slackness});
  if (fit.converged && kkt.residual > config.kkt_tol) {
    fit.converged = false;
    fit.diagnostics.push_back("KKT residual above tolerance");
  }
  return fit;
}

std::vector<double> ClassicalMaxent::joint(const MaxentProblem& problem) const {
  const std::size_t kc = problem.classes.size();
  std::vector<double> out(problem.histogram.size(), 0.0);
  for (std::size_t x = 0; x < problem.x_values.size(); ++x) {
    double px = 0.0;
    for (std::size_t k = 0; k < kc; ++k) px += problem.histogram[problem.outcome(x, k)];
    for (std::size_t k = 0; k < kc; ++k) out[problem.outcome(x, k)] = px * conditional[x][k];
  }
  return out;
}

ClassicalMaxent classical_maxent(const MaxentProblem& problem, double tol,
                                 std::size_t max_iterations) {
  const std::size_t nx = problem.x_values.size(), kc = problem.classes.size();
  const Eigen::Index mc = static_cast<Eigen::Index>(problem.features.size());
  std::vector<double> px(nx, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t k = 0; k < kc; ++k) px[x] += problem.histogram[problem.outcome(x, k)];
  }
  Eigen::VectorXd target(mc);
  for (Eigen::Index j = 0; j < mc; ++j) target(j) = empirical_expectation(problem, static_cast<std::size_t>(j));
  auto phi = [&](std::size_t x, std::size_t k, Eigen::Index j) {
    return problem.features[static_cast<std::size_t>(j)][problem.outcome(x, k)];
  };
  auto conditional = [&](const Eigen::VectorXd& lam) {
    std::vector<std::vector<double>> c(nx, std::vector<double>(kc));
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<double> sc(kc, 0.0);
      for (std::size_t k = 0; k < kc; ++k) {
        for (Eigen::Index j = 0; j < mc; ++j) sc[k] += lam(j) * phi(x, k, j);
      }
      const double top = *std::max_element(sc.begin(), sc.end());
      double z = 0.0;
      for (std::size_t k = 0; k < kc; ++k) z += (c[x][k] = std::exp(sc[k] - top));
      for (double& v : c[x]) v /= z;
    }
    return c;
  };
  // Dual objective Σ_x p̂(x) log Z(x) − λ·Ê[φ].
  auto dual = [&](const Eigen::VectorXd& lam) {
    double v = -lam.dot(target);
    for (std::size_t x = 0; x < nx; ++x) {
      if (px[x] == 0.0) continue;
      std::vector<double> sc(kc, 0.0);
      for (std::size_t k = 0; k < kc; ++k) {
        for (Eigen::Index j = 0; j < mc; ++j) sc[k] += lam(j) * phi(x, k, j);
      }
      const double top = *std::max_element(sc.begin(), sc.end());
      double z = 0.0;
      for (double s : sc) z += std::exp(s - top);
      v += px[x] * (top + std::log(z));
    }
    return v;
  };

  ClassicalMaxent out;
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(mc);
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    const auto c = conditional(lam);
    Eigen::VectorXd grad = -target;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(mc, mc);
    for (std::size_t x = 0; x < nx; ++x) {
      if (px[x] == 0.0) continue;
      Eigen::VectorXd mean = Eigen::VectorXd::Zero(mc);
      for (std::size_t k = 0; k < kc; ++k) {
        for (Eigen::Index j = 0; j < mc; ++j) mean(j) += c[x][k] * phi(x, k, j);
      }
      grad += px[x] * mean;
      for (std::size_t k = 0; k < kc; ++k) {
        Eigen::VectorXd dv(mc);
        for (Eigen::Index j = 0; j < mc; ++j) dv(j) = phi(x, k, j) - mean(j);
        hess += px[x] * c[x][k] * dv * dv.transpose();
      }
    }
    out.moment_residual = mc > 0 ? grad.lpNorm<Eigen::Infinity>() : 0.0;
    if (out.moment_residual <= tol) {
      out.converged = true;
      break;
    }
    const Eigen::VectorXd step = -hess.completeOrthogonalDecomposition().solve(grad);
    const double f0 = dual(lam);
    double a = 1.0;
    while (a > 1e-12 && dual(lam + a * step) > f0 + 1e-4 * a * grad.dot(step)) a *= 0.5;
    if (a <= 1e-12) break;
    lam += a * step;
  }
  out.lambda.assign(lam.data(), lam.data() + mc);
  out.conditional = conditional(lam);
  return out;
}

double total_variation(const MassFunction& m, const std::vector<double>& p) {
  if (p.size() != m.frame().size()) throw DomainError("probability vector size mismatch");
  double s = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) s += std::abs(m.mass(Mask{1} << t) - p[t]);
  for (const auto& [a, v] : m.entries()) {
    if (cardinality(a) > 1) s += v;
  }
  return 0.5 * s;
}

}  // namespace beliefkit
