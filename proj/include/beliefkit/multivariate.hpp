#pragma once

#include <cstddef>
#include <vector>

#include "beliefkit/mass_function.hpp"

namespace beliefkit {

/// Cartesian product A_1 x ... x A_n, one nonempty factor per component.
struct ProductFocalElement {
  std::vector<Mask> factors;

  bool operator==(const ProductFocalElement&) const = default;
  auto operator<=>(const ProductFocalElement&) const = default;
};

/// Product of component frames with a mixed-radix codec: the tuple
/// (i_1, ..., i_n) maps to i_1 + |Θ_1| (i_2 + |Θ_2| (...)).
class ProductFrame {
 public:
  explicit ProductFrame(std::vector<Frame> components);

  const std::vector<Frame>& components() const { return components_; }
  const Frame& component(std::size_t k) const { return components_.at(k); }
  std::size_t arity() const { return components_.size(); }

  /// Number of joint outcomes as a double (may exceed 2^64).
  double outcome_count() const { return outcome_count_; }
  /// True when joint outcomes fit in a Mask-based Frame.
  bool joint_representable() const { return outcome_count_ <= double(kMaxSparseFrame); }

  std::size_t encode(const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> decode(std::size_t index) const;

  /// Joint frame with labels "a:b:c"; requires joint_representable().
  const Frame& joint() const;

  /// Joint mask of B_k extended by the other full components.
  Mask cylinder(std::size_t k, Mask factor) const;
  /// Joint mask of a Cartesian product.
  Mask product(const ProductFocalElement& e) const;
  /// Projection of a joint subset onto component k.
  Mask project(Mask joint_set, std::size_t k) const;

  /// Index of the unique component equal to `f`; throws FrameMismatch when
  /// absent or ambiguous.
  std::size_t component_index(const Frame& f) const;

 private:
  std::vector<Frame> components_;
  std::vector<std::size_t> radix_;
  double outcome_count_ = 1.0;
  Frame joint_;
};

/// Cylindrical extension B -> B x (other components).
MassFunction vacuous_extension(const MassFunction& m, const ProductFrame& target, std::size_t k);
MassFunction vacuous_extension(const MassFunction& m, const ProductFrame& target);

/// Projection of a joint BPA onto component k; coinciding projections add up.
MassFunction marginalize(const MassFunction& joint, const ProductFrame& frame, std::size_t k);
MassFunction marginalize(const MassFunction& joint, const ProductFrame& frame, const Frame& onto);

/// Sparse product-form BPA used when the joint frame is too large for masks.
struct ProductMass {
  std::vector<Frame> components;
  std::vector<std::pair<ProductFocalElement, double>> elements;
};

/// Conjunctive combination of vacuous extensions of independent marginals,
/// kept in product form: mass(A_1 x ... x A_n) = product of m_i(A_i).
/// Throws IntractableInstance beyond `max_elements` focal elements.
ProductMass conjunctive_product(const std::vector<MassFunction>& marginals,
                                std::size_t max_elements = 1u << 22);
/// Factor-wise projection of a product-form BPA.
MassFunction marginalize(const ProductMass& pm, std::size_t k);

/// Partition of a fine frame indexed by the outcomes of a coarse frame.
class Refining {
 public:
  /// cells[i] is the image of coarse outcome i; validated on construction.
  Refining(Frame coarse, Frame fine, std::vector<Mask> cells);

  const Frame& coarse() const { return coarse_; }
  const Frame& fine() const { return fine_; }
  const std::vector<Mask>& cells() const { return cells_; }
  Mask cell(std::size_t i) const { return cells_.at(i); }

  /// ρ(E): union of the cells of the coarse outcomes in E.
  Mask refine(Mask coarse_set) const;
  /// Coarse outcomes whose cell meets A.
  Mask outer_reduction(Mask fine_set) const;

 private:
  Frame coarse_;
  Frame fine_;
  std::vector<Mask> cells_;
};

MassFunction refine_mass(const MassFunction& m, const Refining& rho);
Mask outer_reduction(Mask a, const Refining& rho);
/// Marginal on the coarse frame: each focal mass moves to its outer reduction.
MassFunction coarsen_mass(const MassFunction& m, const Refining& rho);

/// Conditional embedding of a BPA supported inside `cell` (a subset of the
/// frame of `m_i`): every focal e becomes e ∪ (Θ \ cell).
MassFunction conditional_embedding(const MassFunction& m_i, Mask cell);

}  // namespace beliefkit
