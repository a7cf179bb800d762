#include <cmath>

#include "beliefkit/combination.hpp"
#include "beliefkit/errors.hpp"
#include "beliefkit/multivariate.hpp"
#include "beliefkit/random.hpp"
#include "doctest.h"

using namespace beliefkit;

namespace {

Frame frame_of(const std::string& prefix, std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(prefix + std::to_string(i));
  return Frame(l);
}

}  // namespace

TEST_CASE("product frame codec") {
  ProductFrame pf({frame_of("a", 2), frame_of("b", 3)});
  CHECK(pf.outcome_count() == 6);
  for (std::size_t t = 0; t < 6; ++t) CHECK(pf.encode(pf.decode(t)) == t);
  CHECK(pf.joint().label(pf.encode({1, 2})) == "a1:b2");
  CHECK(pf.product({{0b10, 0b101}}) == ((Mask{1} << pf.encode({1, 0})) |
                                        (Mask{1} << pf.encode({1, 2}))));
}

TEST_CASE("vacuous extension and marginalization") {
  Frame x({"x", "x2"});
  Frame y({"a", "b"});
  ProductFrame pf({x, y});
  auto m = MassFunction(x, std::map<Mask, double>{{1, 0.4}, {3, 0.6}});
  auto ext = vacuous_extension(m, pf);
  CHECK(ext.mass(pf.product({{1, 3}})) == doctest::Approx(0.4));
  CHECK(ext.mass(pf.joint().full()) == doctest::Approx(0.6));
  CHECK(max_abs_diff(marginalize(ext, pf, x), m) == 0.0);
  CHECK(vacuous_extension(MassFunction::vacuous(x), pf).is_vacuous());

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto joint = random_mass(pf.joint(), rng, 1 + rng() % 8);
    // Naive projection: outcome index t has x-coordinate t % 2.
    std::map<Mask, double> expect;
    for (const auto& [a, v] : joint.entries()) {
      Mask proj = 0;
      for (std::size_t t = 0; t < 4; ++t) {
        if (a >> t & 1) proj |= Mask{1} << (t % 2);
      }
      expect[proj] += v;
    }
    auto got = marginalize(joint, pf, 0);
    for (const auto& [s, v] : expect) CHECK(std::abs(got.mass(s) - v) <= 1e-15);
  }
  CHECK_THROWS_AS(vacuous_extension(MassFunction::vacuous(frame_of("z", 3)), pf), FrameMismatch);
}

TEST_CASE("product-form marginalization is factor-wise") {
  Rng rng(5);
  std::vector<MassFunction> ms;
  for (int i = 0; i < 12; ++i) ms.push_back(random_mass(frame_of("t", 2), rng, 2));
  auto pm = conjunctive_product(ms);
  CHECK(pm.elements.size() == 4096);
  for (std::size_t k = 0; k < ms.size(); ++k) CHECK(max_abs_diff(marginalize(pm, k), ms[k]) <= 1e-12);
}

TEST_CASE("refinings and outer reduction") {
  Frame coarse({"w1", "w2"});
  Frame fine({"a", "b", "c"});
  Refining rho(coarse, fine, {0b001, 0b110});
  CHECK(rho.refine(0b10) == 0b110);
  CHECK(outer_reduction(0b011, rho) == 0b11);  // straddles both cells
  for (Mask e = 1; e < 4; ++e) CHECK(rho.outer_reduction(rho.refine(e)) == e);
  CHECK_THROWS_AS(Refining(coarse, fine, {0b011, 0b110}), InvalidRefining);
  CHECK_THROWS_AS(Refining(coarse, fine, {0b001, 0b010}), InvalidRefining);
  CHECK_THROWS_AS(Refining(coarse, fine, {0b000, 0b111}), InvalidRefining);

  Refining id(fine, fine, {1, 2, 4});
  for (Mask a = 0; a < 8; ++a) {
    CHECK(id.refine(a) == a);
    CHECK(id.outer_reduction(a) == a);
  }
  auto m = MassFunction(coarse, std::map<Mask, double>{{1, 0.3}, {3, 0.7}});
  auto r = refine_mass(m, rho);
  CHECK(r.mass(1) == doctest::Approx(0.3));
  CHECK(r.mass(7) == doctest::Approx(0.7));
  CHECK(max_abs_diff(coarsen_mass(r, rho), m) == 0.0);
}

TEST_CASE("conditional embedding inverts Dempster conditioning") {
  Frame theta = frame_of("t", 8);
  const Mask cell = 0b00111100;
  auto cat = MassFunction::categorical(theta, cell);
  CHECK(conditional_embedding(cat, cell).is_vacuous());

  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    // Random BPA supported inside the cell (cells of size 4).
    std::map<Mask, double> mm;
    auto w = dirichlet(rng, 3);
    for (int j = 0; j < 3; ++j) {
      Mask e = 0;
      while (e == 0) e = (rng() & 0xF) << 2;
      mm[e] += w[j];
    }
    MassFunction mi(theta, mm);
    auto emb = conditional_embedding(mi, cell);
    CHECK(max_abs_diff(dempster_condition(emb, cell), mi) <= 1e-12);
  }
}
