#pragma once

#include <map>
#include <utility>
#include <vector>

#include "beliefkit/frame.hpp"

namespace beliefkit {

/// Sum tolerance accepted as-is on construction.
inline constexpr double kMassSumTol = 1e-12;
/// Sum tolerance within which the constructor silently renormalizes.
inline constexpr double kRenormalizeTol = 1e-9;

/// Basic probability assignment stored sparsely by focal element.
///
/// Immutable after construction. Entries with exactly zero mass are dropped,
/// so every stored subset is a focal element.
class MassFunction {
 public:
  using Entry = std::pair<Mask, double>;

  MassFunction() = default;
  /// Validates and renormalizes; `normalized` forbids mass on the empty set.
  MassFunction(Frame frame, const std::map<Mask, double>& masses, bool normalized = true);
  MassFunction(Frame frame, const std::vector<Entry>& masses, bool normalized = true);

  static MassFunction vacuous(const Frame& frame);
  static MassFunction categorical(const Frame& frame, Mask a);
  /// Bayesian BPA from one probability per outcome.
  static MassFunction bayesian(const Frame& frame, const std::vector<double>& p);
  /// Dense vector indexed by mask (length 2^n), zeros skipped.
  static MassFunction from_dense(const Frame& frame, const std::vector<double>& dense,
                                 bool normalized = true);

  const Frame& frame() const { return frame_; }
  bool normalized() const { return normalized_; }
  /// Focal elements sorted by mask.
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t focal_count() const { return entries_.size(); }

  double mass(Mask a) const;
  double operator[](Mask a) const { return mass(a); }

  /// Sparse evaluations, O(#focal).
  double belief(Mask a) const;
  double plausibility(Mask a) const;
  double commonality(Mask a) const;

  /// Length-2^n vector of masses; requires a dense-sized frame.
  std::vector<double> dense() const;

  bool is_bayesian() const;
  bool is_vacuous() const;
  /// True when every pair of focal elements is disjoint.
  bool has_disjoint_focal_elements() const;

 private:
  Frame frame_;
  std::vector<Entry> entries_;
  bool normalized_ = true;
};

/// Largest absolute difference of masses over the union of focal elements.
double max_abs_diff(const MassFunction& a, const MassFunction& b);

}  // namespace beliefkit
