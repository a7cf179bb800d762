#include "beliefkit/transforms.hpp"

#include <cmath>

#include "beliefkit/errors.hpp"

namespace beliefkit {

void zeta_subset(std::vector<double>& f, std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t a = 0; a < size; ++a) {
      if (a & bit) f[a] += f[a ^ bit];
    }
  }
}

void mobius_subset(std::vector<double>& f, std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t a = 0; a < size; ++a) {
      if (a & bit) f[a] -= f[a ^ bit];
    }
  }
}

void zeta_superset(std::vector<double>& f, std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t a = 0; a < size; ++a) {
      if (!(a & bit)) f[a] += f[a | bit];
    }
  }
}

void mobius_superset(std::vector<double>& f, std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t a = 0; a < size; ++a) {
      if (!(a & bit)) f[a] -= f[a | bit];
    }
  }
}

SetFunction believability_from_mass(const MassFunction& m) {
  std::vector<double> v = m.dense();
  zeta_subset(v, m.frame().size());
  return {m.frame(), std::move(v), SetKind::believability};
}

SetFunction belief_from_mass(const MassFunction& m) {
  std::vector<double> v = m.dense();
  v[0] = 0.0;
  zeta_subset(v, m.frame().size());
  return {m.frame(), std::move(v), SetKind::belief};
}

SetFunction plausibility_from_mass(const MassFunction& m) {
  // Pl(A) = total - b(A^c), with b the believability (empty set included).
  SetFunction b = believability_from_mass(m);
  const Mask full = m.frame().full();
  const double total = b.values[full];
  std::vector<double> v(b.values.size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = total - b.values[full & ~a];
  v[0] = 0.0;
  return {m.frame(), std::move(v), SetKind::plausibility};
}

SetFunction commonality_from_mass(const MassFunction& m) {
  std::vector<double> v = m.dense();
  zeta_superset(v, m.frame().size());
  return {m.frame(), std::move(v), SetKind::commonality};
}

std::vector<double> mobius_inverse(const SetFunction& f) {
  std::vector<double> v = f.values;
  mobius_subset(v, f.frame.size());
  return v;
}

MassFunction mass_from_belief(const SetFunction& bel) {
  std::vector<double> v = mobius_inverse(bel);
  const Mask full = bel.frame.full();
  bool normalized = true;
  if (bel.kind == SetKind::belief) {
    v[0] = 1.0 - bel.values[full];
    if (std::abs(v[0]) <= 1e-12) v[0] = 0.0;
  }
  for (std::size_t a = 0; a < v.size(); ++a) {
    // Rounding noise of the inversion, not mass.
    if (std::abs(v[a]) <= 1e-13) v[a] = 0.0;
    if (v[a] < 0.0) {
      if (v[a] < -1e-10) {
        throw DomainError("Möbius inverse has negative mass " + std::to_string(v[a]) + " on " +
                          bel.frame.format(a));
      }
      v[a] = 0.0;
    }
  }
  if (v[0] > 0.0) normalized = false;
  return MassFunction::from_dense(bel.frame, v, normalized);
}

TwoMonotoneResult is_2_monotone(const SetFunction& capacity, double tol) {
  // The Möbius sum over {x,y} ⊆ E ⊆ A equals the second difference
  // mu(A) - mu(A-x) - mu(A-y) + mu(A-x-y).
  const std::size_t n = capacity.frame.size();
  const auto& mu = capacity.values;
  TwoMonotoneResult res;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (std::popcount(a) < 2) continue;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t bx = std::size_t{1} << x;
      if (!(a & bx)) continue;
      for (std::size_t y = x + 1; y < n; ++y) {
        const std::size_t by = std::size_t{1} << y;
        if (!(a & by)) continue;
        const double s = mu[a] - mu[a ^ bx] - mu[a ^ by] + mu[a ^ bx ^ by];
        if (s < -tol) {
          res.ok = false;
          res.first_violation = MonotonicityViolation{x, y, static_cast<Mask>(a), s};
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace beliefkit
