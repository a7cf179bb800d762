#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "beliefkit/errors.hpp"
#include "beliefkit/geometry.hpp"
#include "beliefkit/random.hpp"
#include "beliefkit/simplex_lp.hpp"
#include "doctest.h"

using namespace beliefkit;

namespace {

Frame xy() { return Frame({"x", "y"}); }
Frame xyz() { return Frame({"x", "y", "z"}); }

MassFunction binary(double mx, double my, double mt) {
  return MassFunction(xy(), std::map<Mask, double>{{1, mx}, {2, my}, {3, mt}});
}

MassFunction unnorm(double me, double mx, double my, double mt) {
  return MassFunction(xy(), std::map<Mask, double>{{0, me}, {1, mx}, {2, my}, {3, mt}}, false);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> axpy(double s, const std::vector<double>& a, double t,
                         const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i] + t * b[i];
  return out;
}

const SubspaceVertex& vertex(const ConditionalSubspace& s, Mask a) {
  for (const auto& v : s.vertices) {
    if (v.categorical == a) return v;
  }
  FAIL("vertex missing");
  return s.vertices.front();
}

// Yager's rule on a binary frame written out as mass formulas.
std::array<double, 3> yager_by_hand(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double x = a[0] * b[0] + a[0] * b[2] + a[2] * b[0];
  const double y = a[1] * b[1] + a[1] * b[2] + a[2] * b[1];
  return {x, y, 1.0 - x - y};
}

std::array<double, 3> disjunctive_by_hand(const std::array<double, 3>& a,
                                          const std::array<double, 3>& b) {
  const double x = a[0] * b[0];
  const double y = a[1] * b[1];
  return {x, y, 1.0 - x - y};
}

std::array<double, 3> random_binary(std::mt19937_64& rng) {
  const auto w = dirichlet(rng, 3);
  return {w[0], w[1], w[2]};
}

// Equality-constrained least squares on every support; the best feasible
// candidate is the global minimizer of the convex problem.
Eigen::VectorXd qp_by_enumeration(const Eigen::MatrixXd& m, const Eigen::VectorXd& b) {
  const Eigen::Index k = m.cols();
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd arg;
  for (unsigned s = 1; s < (1u << k); ++s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (s & (1u << j)) idx.push_back(j);
    }
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) kkt(i, j) = 2.0 * m.col(idx[i]).dot(m.col(idx[j]));
      kkt(i, n) = 1.0;
      kkt(n, i) = 1.0;
      rhs(i) = 2.0 * m.col(idx[i]).dot(b);
    }
    rhs(n) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
    bool ok = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sol(i) < -1e-13) ok = false;
      w(idx[i]) = sol(i);
    }
    if (!ok) continue;
    const double f = (m * w - b).squaredNorm();
    if (f < best) {
      best = f;
      arg = w;
    }
  }
  return arg;
}

// Belief coordinates of a BF with masses w on the nonempty subsets of a.
std::vector<double> coords_of(const Frame& f, Mask a, const std::vector<double>& w) {
  std::vector<double> out;
  for (Mask b = 1; b < f.full(); ++b) {
    double s = 0.0;
    std::size_t j = 0;
    for (Mask c = 1; c <= a; ++c) {
      if ((c & ~a) != 0) continue;
      if ((c & ~b) == 0) s += w[j];
      ++j;
    }
    out.push_back(s);
  }
  return out;
}

double norm_of(const std::vector<double>& d, ConditioningNorm n) {
  double acc = 0.0;
  for (double v : d) {
    if (n == ConditioningNorm::l1) acc += std::abs(v);
    if (n == ConditioningNorm::l2) acc += v * v;
    if (n == ConditioningNorm::linf) acc = std::max(acc, std::abs(v));
  }
  return n == ConditioningNorm::l2 ? std::sqrt(acc) : acc;
}

double coord_distance(const std::vector<double>& a, const std::vector<double>& b,
                      ConditioningNorm n) {
  return norm_of(axpy(1.0, a, -1.0, b), n);
}

}  // namespace

TEST_CASE("linear programs") {
  // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6: optimum (1.6, 1.2).
  LinearProgram lp;
  lp.c = Eigen::Vector2d(-1, -1);
  lp.a_ub.resize(2, 2);
  lp.a_ub << 1, 2, 3, 1;
  lp.b_ub = Eigen::Vector2d(4, 6);
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x(0) == doctest::Approx(1.6));
  CHECK(r.x(1) == doctest::Approx(1.2));
  CHECK(r.objective == doctest::Approx(-2.8));

  // Equality plus a negative right-hand side: x + y = 1, −x ≤ −0.25.
  LinearProgram eq;
  eq.c = Eigen::Vector2d(1, 2);
  eq.a_eq = Eigen::RowVector2d(1, 1);
  eq.b_eq = Eigen::VectorXd::Ones(1);
  eq.a_ub = Eigen::RowVector2d(-1, 0);
  eq.b_ub = Eigen::VectorXd::Constant(1, -0.25);
  r = solve_lp(eq);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.objective == doctest::Approx(1.0));

  LinearProgram infeasible = eq;
  infeasible.b_ub(0) = -2.0;
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  LinearProgram unbounded;
  unbounded.c = Eigen::Vector2d(-1, 0);
  unbounded.a_ub = Eigen::RowVector2d(0, 1);
  unbounded.b_ub = Eigen::VectorXd::Ones(1);
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
}

TEST_CASE("coordinates and mixtures") {
  const auto m = binary(0.4, 0.2, 0.4);
  CHECK(belief_coordinates(m) == std::vector<double>{0.4, 0.2});
  CHECK(mass_vector(m) == std::vector<double>{0.4, 0.2, 0.4});
  const auto b = unnorm(0.1, 0.2, 0.3, 0.4);
  const auto bc = belief_coordinates(b);
  CHECK(max_diff(bc, {0.1, 0.3, 0.4}) <= 1e-15);
  CHECK(mass_vector(b).size() == 4);
  const auto mix = mixture({binary(1, 0, 0), binary(0, 0, 1)}, {0.25, 0.75});
  CHECK(mix.mass(1) == 0.25);
  CHECK(mix.mass(3) == 0.75);
  CHECK_THROWS_AS(mixture({m, m}, {0.5, 0.6}), DomainError);
}

TEST_CASE("Yager conditional subspace") {
  const auto m = binary(0.4, 0.2, 0.4);
  const auto s = conditional_subspace(m, SubspaceRule::yager);
  REQUIRE(s.vertices.size() == 3);
  CHECK(max_diff(vertex(s, 1).masses, {0.8, 0.0, 0.2}) <= 1e-12);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_binary(rng);
    const auto b = binary(w[0], w[1], w[2]);
    const auto v = conditional_subspace(b, SubspaceRule::yager);
    CHECK(max_diff(vertex(v, 1).masses, {w[0] + w[2], 0.0, w[1]}) <= 1e-12);
    CHECK(max_diff(vertex(v, 2).masses, {0.0, w[1] + w[2], w[0]}) <= 1e-12);
    CHECK(max_diff(vertex(v, 3).masses, {w[0], w[1], w[2]}) <= 1e-12);
  }
}

TEST_CASE("disjunctive conditional subspace") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_binary(rng);
    const auto v = conditional_subspace(binary(w[0], w[1], w[2]), SubspaceRule::disjunctive);
    REQUIRE(v.vertices.size() == 3);
    CHECK(max_diff(vertex(v, 1).masses, {w[0], 0.0, 1.0 - w[0]}) <= 1e-12);
    CHECK(max_diff(vertex(v, 2).masses, {0.0, w[1], 1.0 - w[1]}) <= 1e-12);
    CHECK(max_diff(vertex(v, 3).masses, {0.0, 0.0, 1.0}) <= 1e-12);
  }
}

TEST_CASE("unnormalized conditional subspaces") {
  const std::vector<double> b_empty{1, 1, 1}, b_x{0, 1, 0}, b_y{0, 0, 1}, b_theta{0, 0, 0};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto w = dirichlet(rng, 4);
    const auto b = unnorm(w[0], w[1], w[2], w[3]);
    const double bx = w[0] + w[1], by = w[0] + w[2];
    const auto c = conditional_subspace(b, SubspaceRule::conjunctive_unnorm);
    REQUIRE(c.vertices.size() == 4);
    CHECK(max_diff(vertex(c, 1).coordinates, axpy(by, b_empty, 1 - by, b_x)) <= 1e-12);
    CHECK(max_diff(vertex(c, 2).coordinates, axpy(bx, b_empty, 1 - bx, b_y)) <= 1e-12);
    CHECK(max_diff(vertex(c, 0).coordinates, b_empty) <= 1e-12);
    CHECK(max_diff(vertex(c, 3).coordinates, belief_coordinates(b)) <= 1e-12);

    const auto d = conditional_subspace(b, SubspaceRule::disjunctive_unnorm);
    CHECK(max_diff(vertex(d, 1).coordinates, axpy(bx, b_x, 1 - bx, b_theta)) <= 1e-12);
    CHECK(max_diff(vertex(d, 2).coordinates, axpy(by, b_y, 1 - by, b_theta)) <= 1e-12);
    CHECK(max_diff(vertex(d, 0).coordinates, belief_coordinates(b)) <= 1e-12);
    CHECK(max_diff(vertex(d, 3).coordinates, b_theta) <= 1e-12);
    for (const auto& v : d.vertices) {
      double s = 0.0;
      for (double x : v.masses) {
        CHECK(x >= -1e-15);
        s += x;
      }
      CHECK(s == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("degenerate subspaces") {
  // Dempster with a Bayesian BF: categoricals are absorbing.
  const auto p = binary(0.3, 0.7, 0.0);
  const auto s = conditional_subspace(p, SubspaceRule::dempster);
  CHECK(max_diff(vertex(s, 1).masses, {1, 0, 0}) <= 1e-12);
  CHECK(max_diff(vertex(s, 2).masses, {0, 1, 0}) <= 1e-12);
  CHECK(max_diff(vertex(s, 3).masses, {0.3, 0.7, 0}) <= 1e-12);
  const auto dogmatic = conditional_subspace(binary(0, 1, 0), SubspaceRule::dempster);
  CHECK(dogmatic.vertices.size() == 2);
  CHECK(dogmatic.notes.size() == 1);

  const auto vac = MassFunction::vacuous(xy());
  for (auto rule : {SubspaceRule::dempster, SubspaceRule::yager}) {
    const auto v = conditional_subspace(vac, rule);
    CHECK(max_diff(vertex(v, 1).masses, {1, 0, 0}) <= 1e-15);
    CHECK(max_diff(vertex(v, 2).masses, {0, 1, 0}) <= 1e-15);
    CHECK(max_diff(vertex(v, 3).masses, {0, 0, 1}) <= 1e-15);
  }
  // The vacuous BF absorbs under the disjunctive rule; the subspace is a point.
  const auto dv = conditional_subspace(vac, SubspaceRule::disjunctive);
  for (const auto& v : dv.vertices) CHECK(max_diff(v.masses, {0, 0, 1}) <= 1e-15);
  // b_∅ plays the neutral role there instead.
  const auto de = conditional_subspace(MassFunction::categorical(xy(), 0),
                                       SubspaceRule::disjunctive_unnorm);
  CHECK(max_diff(vertex(de, 1).coordinates, {0, 1, 0}) <= 1e-15);
  CHECK(max_diff(vertex(de, 2).coordinates, {0, 0, 1}) <= 1e-15);

  CHECK_THROWS_AS(conditional_subspace(MassFunction::vacuous(xyz()), SubspaceRule::yager),
                  DomainError);
}

TEST_CASE("affine commutation on binary frames") {
  std::mt19937_64 rng(4);
  double yager_dev = 0.0, disj_dev = 0.0, dempster_dev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_binary(rng), b1 = random_binary(rng), b2 = random_binary(rng);
    const auto w = dirichlet(rng, 2);
    const auto bel = binary(a[0], a[1], a[2]);
    const std::vector<MassFunction> bels{binary(b1[0], b1[1], b1[2]), binary(b2[0], b2[1], b2[2])};
    yager_dev = std::max(yager_dev, affine_commutation_check(Rule::yager, bel, bels, w));
    disj_dev = std::max(disj_dev, affine_commutation_check(Rule::disjunctive, bel, bels, w));
    dempster_dev = std::max(dempster_dev, affine_commutation_check(Rule::dempster, bel, bels, w));

    // Same quantity from the mass formulas alone.
    std::array<double, 3> mix;
    for (int k = 0; k < 3; ++k) mix[k] = w[0] * b1[k] + w[1] * b2[k];
    const auto lhs = yager_by_hand(a, mix);
    const auto r1 = yager_by_hand(a, b1), r2 = yager_by_hand(a, b2);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(lhs[k] - (w[0] * r1[k] + w[1] * r2[k])) <= 1e-12);
    const auto dl = disjunctive_by_hand(a, mix);
    const auto d1 = disjunctive_by_hand(a, b1), d2 = disjunctive_by_hand(a, b2);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(dl[k] - (w[0] * d1[k] + w[1] * d2[k])) <= 1e-12);
  }
  CHECK(yager_dev <= 1e-12);
  CHECK(disj_dev <= 1e-12);
  // Normalization breaks it for Dempster's rule.
  CHECK(dempster_dev > 1e-3);

  Rng r3(5);
  double ternary = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto bel = random_full_mass(xyz(), r3);
    const std::vector<MassFunction> bels{random_full_mass(xyz(), r3), random_full_mass(xyz(), r3)};
    ternary = std::max(ternary,
                       affine_commutation_check(Rule::disjunctive, bel, bels, dirichlet(r3, 2)));
  }
  MESSAGE("ternary disjunctive commutation deviation: " << ternary);
  CHECK(std::isfinite(ternary));
}

TEST_CASE("disjunctive focus") {
  const auto f = disjunctive_focus(binary(0.4, 0.2, 0.4), 0.5);
  CHECK(std::abs(f[0] - 0.125) <= 1e-15);
  CHECK(f[1] == 0.0);
  CHECK(disjunctive_focus(binary(0.3, 0.3, 0.4), 0.7)[0] == 0.0);
  CHECK_THROWS_AS(disjunctive_focus(binary(0, 1, 0), 0.5), DomainError);

  // Intersection of the line through Bel′ and Bel ⊔ Bel′ with the χ axis.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto w = random_binary(rng);
    const auto bel = binary(w[0], w[1], w[2]);
    const double mpx = 0.05 + 0.9 * u(rng);
    const double expect = disjunctive_focus(bel, mpx)[0];
    double lo = 1e9, hi = -1e9;
    for (int k = 0; k < 100; ++k) {
      const double mpy = (1.0 - mpx) * (0.01 + 0.98 * u(rng));
      const auto prime = binary(mpx, mpy, 1.0 - mpx - mpy);
      const auto comb = disjunctive_combine(bel, prime);
      const double x1 = mpx, y1 = mpy, x2 = comb.mass(1), y2 = comb.mass(2);
      const double chi = x1 - y1 * (x2 - x1) / (y2 - y1);
      lo = std::min(lo, chi);
      hi = std::max(hi, chi);
      CHECK(std::abs(chi - expect) <= 1e-12);
    }
    CHECK(hi - lo <= 1e-12);
  }
}

TEST_CASE("Yager images of constant-mass loci are parallel") {
  const auto rep = yager_parallel_loci_check(binary(0.5, 0.2, 0.3), {0.1, 0.3});
  REQUIRE(rep.loci.size() == 2);
  CHECK(rep.slope_defined);
  CHECK(rep.limit_slope == doctest::Approx(-0.6));
  CHECK(rep.slope_spread <= 1e-10);
  for (const auto& l : rep.loci) {
    CHECK(l.collinearity_residual < 1e-12);
    CHECK(std::abs(l.slope - rep.limit_slope) <= 1e-10);
  }
  // Distinct images: the lines do not coincide.
  CHECK(std::abs(rep.loci[0].points[0][1] - rep.loci[1].points[0][1]) > 1e-3);

  const auto flat = yager_parallel_loci_check(binary(0.6, 0.4, 0.0), {0.2, 0.5});
  CHECK(flat.limit_slope == 0.0);
  for (const auto& l : flat.loci) CHECK(std::abs(l.slope) <= 1e-12);

  const auto vert = yager_parallel_loci_check(binary(0.0, 0.3, 0.7), {0.2, 0.5});
  CHECK_FALSE(vert.slope_defined);
  for (const auto& l : vert.loci) CHECK(l.vertical);

  // Bayesian m₁: Dempster's images differ from Yager's.
  const auto p = binary(0.6, 0.4, 0.0);
  const auto m2 = binary(0.2, 0.5, 0.3);
  CHECK(max_abs_diff(yager_combine(p, m2), dempster_combine(p, m2)) > 1e-3);
}

TEST_CASE("geometric conditioning fixed points") {
  Rng rng(7);
  for (auto n : {ConditioningNorm::l1, ConditioningNorm::l2, ConditioningNorm::linf}) {
    for (int i = 0; i < 10; ++i) {
      const auto m = random_full_mass(xyz(), rng);
      const auto r = geometric_condition(m, xyz().full(), n);
      CHECK(max_abs_diff(r.result, m) == 0.0);
      CHECK(r.distance == 0.0);
    }
    const MassFunction inside(xyz(), std::map<Mask, double>{{1, 0.3}, {3, 0.7}});
    CHECK(max_abs_diff(geometric_condition(inside, 3, n).result, inside) == 0.0);
  }
  CHECK_THROWS_AS(geometric_condition(MassFunction::vacuous(xyz()), 0, ConditioningNorm::l2),
                  DomainError);
}

TEST_CASE("L2 conditioning against a quadratic-program oracle") {
  Rng rng(8);
  const Frame f = xyz();
  for (Mask a : {Mask{3}, Mask{5}, Mask{6}, Mask{1}}) {
    std::vector<Mask> cols;
    for (Mask c = 1; c <= a; ++c) {
      if ((c & ~a) == 0) cols.push_back(c);
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, static_cast<Eigen::Index>(cols.size()));
    for (Mask b = 1; b < 7; ++b) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if ((cols[j] & ~b) == 0) m(static_cast<Eigen::Index>(b - 1), static_cast<Eigen::Index>(j)) = 1;
      }
    }
    for (int i = 0; i < 30; ++i) {
      const auto bel = i % 2 ? random_bayesian(f, rng) : random_full_mass(f, rng);
      Eigen::VectorXd target(6);
      for (Mask b = 1; b < 7; ++b) target(static_cast<Eigen::Index>(b - 1)) = bel.belief(b);
      const Eigen::VectorXd ref = qp_by_enumeration(m, target);
      const auto r = geometric_condition(bel, a, ConditioningNorm::l2);
      double s = 0.0;
      for (const auto& [c, v] : r.result.entries()) {
        CHECK((c & ~a) == 0);
        CHECK(v >= 0.0);
        s += v;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t j = 0; j < cols.size(); ++j) {
        CHECK(std::abs(r.result.mass(cols[j]) - ref(static_cast<Eigen::Index>(j))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("no feasible point beats the conditioned BF") {
  Rng rng(9);
  const Frame f = xyz();
  const Mask a = 3;
  const std::size_t k = 3;
  for (auto n : {ConditioningNorm::l1, ConditioningNorm::l2, ConditioningNorm::linf}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto bel = random_full_mass(f, rng);
      const auto r = geometric_condition(bel, a, n);
      const auto target = belief_coordinates(bel);
      CHECK(r.distance == doctest::Approx(coord_distance(belief_coordinates(r.result), target, n)));
      for (std::size_t v = 0; v < k; ++v) {
        std::vector<double> w(k, 0.0);
        w[v] = 1.0;
        CHECK(coord_distance(coords_of(f, a, w), target, n) >= r.distance - 1e-12);
      }
      for (int s = 0; s < 1000; ++s) {
        const auto w = dirichlet(rng, k);
        CHECK(coord_distance(coords_of(f, a, w), target, n) >= r.distance - 1e-12);
      }
    }
  }
}

TEST_CASE("conditioning distance against a grid") {
  // Categorical BF on y conditioned on x: only Bel_x is admissible.
  const auto cat = MassFunction::categorical(xy(), 2);
  for (auto n : {ConditioningNorm::l1, ConditioningNorm::l2, ConditioningNorm::linf}) {
    const auto r = geometric_condition(cat, 1, n);
    // 𝓑_{x} on a binary frame is the single point m(x) = 1.
    const double grid_best = coord_distance({1.0, 0.0}, {0.0, 1.0}, n);
    CHECK(r.distance == doctest::Approx(grid_best).epsilon(1e-12));
    CHECK(r.result.mass(1) == 1.0);
  }

  // Ternary frame, A = {x, y}: grid with step 0.005 over the 2-simplex.
  Rng rng(10);
  const Frame f = xyz();
  const int steps = 200;
  for (auto n : {ConditioningNorm::l1, ConditioningNorm::l2, ConditioningNorm::linf}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto bel = MassFunction::categorical(f, 4 | (rep == 2 ? 1 : 0));
      const auto target = belief_coordinates(bel);
      double best = 1e9;
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; i + j <= steps; ++j) {
          const std::vector<double> w{i / double(steps), j / double(steps),
                                      (steps - i - j) / double(steps)};
          best = std::min(best, coord_distance(coords_of(f, 3, w), target, n));
        }
      }
      const auto r = geometric_condition(bel, 3, n);
      CHECK(r.distance <= best + 1e-12);
      CHECK(r.distance >= best - 0.02);
    }
  }
}

TEST_CASE("ternary 2-monotone toy body") {
  const auto vs = ternary_2monotone_vertices();
  REQUIRE(vs.size() == 4);
  for (const auto& v : vs) CHECK(check_toy_point(v).feasible);
  const auto corner = check_toy_point({1, 1, -1});
  CHECK(corner.z_slack == 0.0);
  CHECK(corner.equality_residual == 0.0);
  CHECK_FALSE(corner.interior);
  CHECK(check_toy_point({0.5, 0.5, 0}).interior);
  CHECK_FALSE(check_toy_point({2, 0, -1}).feasible);
  CHECK_FALSE(check_toy_point({0.5, 0.5, 0.1}).feasible);
}
