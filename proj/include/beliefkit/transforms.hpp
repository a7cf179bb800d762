#pragma once

#include <optional>
#include <vector>

#include "beliefkit/mass_function.hpp"

namespace beliefkit {

enum class SetKind { belief, believability, plausibility, commonality, capacity };

/// Dense set function over the power set, indexed by mask.
struct SetFunction {
  Frame frame;
  std::vector<double> values;
  SetKind kind = SetKind::capacity;

  double operator[](Mask a) const { return values[a]; }
};

/// In-place O(n 2^n) transforms on a length-2^n array.
void zeta_subset(std::vector<double>& f, std::size_t n);
void mobius_subset(std::vector<double>& f, std::size_t n);
void zeta_superset(std::vector<double>& f, std::size_t n);
void mobius_superset(std::vector<double>& f, std::size_t n);

/// Bel(A) = sum of m(B) over nonempty B inside A.
SetFunction belief_from_mass(const MassFunction& m);
/// b(A) = sum of m(B) over all B inside A, empty set included.
SetFunction believability_from_mass(const MassFunction& m);
/// Pl(A) = sum of m(B) over B meeting A.
SetFunction plausibility_from_mass(const MassFunction& m);
/// Q(A) = sum of m(B) over B containing A.
SetFunction commonality_from_mass(const MassFunction& m);

/// Möbius inverse of any set function; entries may be negative.
std::vector<double> mobius_inverse(const SetFunction& f);

/// Möbius inversion back to a BPA. For kind belief with Bel(Θ) < 1 the
/// deficit is put on the empty set. Entries above -1e-10 are clipped to 0;
/// anything more negative means the input is not a belief function and
/// raises DomainError.
MassFunction mass_from_belief(const SetFunction& bel);

struct MonotonicityViolation {
  std::size_t x = 0;
  std::size_t y = 0;
  Mask a = 0;
  double value = 0.0;
};

struct TwoMonotoneResult {
  bool ok = true;
  std::optional<MonotonicityViolation> first_violation;
};

/// Checks sum of Möbius masses over {x,y} ⊆ E ⊆ A ≥ -tol for every pair and
/// every A containing it.
TwoMonotoneResult is_2_monotone(const SetFunction& capacity, double tol = 1e-12);

}  // namespace beliefkit
