#include "beliefkit/multivariate.hpp"

#include <map>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

// slices[k][i]: joint outcomes whose k-th coordinate is i.
std::vector<std::vector<Mask>> build_slices(const ProductFrame& pf) {
  std::vector<std::vector<Mask>> slices(pf.arity());
  for (std::size_t k = 0; k < pf.arity(); ++k) slices[k].assign(pf.component(k).size(), 0);
  const auto total = static_cast<std::size_t>(pf.outcome_count());
  for (std::size_t t = 0; t < total; ++t) {
    const auto tuple = pf.decode(t);
    for (std::size_t k = 0; k < pf.arity(); ++k) slices[k][tuple[k]] |= Mask{1} << t;
  }
  return slices;
}

void require_joint(const ProductFrame& pf) {
  if (!pf.joint_representable()) {
    throw IntractableInstance("joint frame has more than 64 outcomes; use product-form elements");
  }
}

}  // namespace

ProductFrame::ProductFrame(std::vector<Frame> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("product frame needs at least one component");
  for (const auto& c : components_) {
    radix_.push_back(c.size());
    outcome_count_ *= static_cast<double>(c.size());
  }
  if (joint_representable()) {
    const auto total = static_cast<std::size_t>(outcome_count_);
    std::vector<std::string> labels;
    labels.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
      const auto tuple = decode(t);
      std::string l;
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        if (k) l += ':';
        l += components_[k].label(tuple[k]);
      }
      labels.push_back(std::move(l));
    }
    joint_ = Frame(std::move(labels));
  }
}

std::size_t ProductFrame::encode(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != radix_.size()) throw DomainError("tuple length mismatch");
  if (outcome_count_ > 9.0e18) throw IntractableInstance("product frame too large to index");
  std::size_t idx = 0;
  for (std::size_t k = radix_.size(); k-- > 0;) {
    if (tuple[k] >= radix_[k]) throw DomainError("tuple coordinate out of range");
    idx = idx * radix_[k] + tuple[k];
  }
  return idx;
}

std::vector<std::size_t> ProductFrame::decode(std::size_t index) const {
  std::vector<std::size_t> t(radix_.size());
  for (std::size_t k = 0; k < radix_.size(); ++k) {
    t[k] = index % radix_[k];
    index /= radix_[k];
  }
  return t;
}

const Frame& ProductFrame::joint() const {
  require_joint(*this);
  return joint_;
}

Mask ProductFrame::cylinder(std::size_t k, Mask factor) const {
  require_joint(*this);
  const auto total = static_cast<std::size_t>(outcome_count_);
  Mask out = 0;
  for (std::size_t t = 0; t < total; ++t) {
    if (factor >> decode(t)[k] & 1) out |= Mask{1} << t;
  }
  return out;
}

Mask ProductFrame::product(const ProductFocalElement& e) const {
  require_joint(*this);
  if (e.factors.size() != arity()) throw DomainError("product element arity mismatch");
  const auto total = static_cast<std::size_t>(outcome_count_);
  Mask out = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const auto tuple = decode(t);
    bool in = true;
    for (std::size_t k = 0; k < arity() && in; ++k) in = e.factors[k] >> tuple[k] & 1;
    if (in) out |= Mask{1} << t;
  }
  return out;
}

Mask ProductFrame::project(Mask joint_set, std::size_t k) const {
  require_joint(*this);
  Mask out = 0;
  const auto total = static_cast<std::size_t>(outcome_count_);
  for (std::size_t t = 0; t < total; ++t) {
    if (joint_set >> t & 1) out |= Mask{1} << decode(t)[k];
  }
  return out;
}

std::size_t ProductFrame::component_index(const Frame& f) const {
  std::size_t found = components_.size();
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (components_[k] == f) {
      if (found != components_.size()) {
        throw FrameMismatch("frame matches several components; pass the index explicitly");
      }
      found = k;
    }
  }
  if (found == components_.size()) throw FrameMismatch("frame is not a component of the product");
  return found;
}

MassFunction vacuous_extension(const MassFunction& m, const ProductFrame& target, std::size_t k) {
  if (k >= target.arity() || !(target.component(k) == m.frame())) {
    throw FrameMismatch("BPA frame does not match the target component");
  }
  const auto slices = build_slices(target);
  std::vector<MassFunction::Entry> out;
  for (const auto& [b, v] : m.entries()) {
    Mask cyl = 0;
    for (std::size_t i = 0; i < slices[k].size(); ++i) {
      if (b >> i & 1) cyl |= slices[k][i];
    }
    out.emplace_back(cyl, v);
  }
  return MassFunction(target.joint(), out, m.normalized());
}

MassFunction vacuous_extension(const MassFunction& m, const ProductFrame& target) {
  return vacuous_extension(m, target, target.component_index(m.frame()));
}

MassFunction marginalize(const MassFunction& joint, const ProductFrame& frame, std::size_t k) {
  if (k >= frame.arity()) throw FrameMismatch("component index out of range");
  if (!(joint.frame() == frame.joint())) throw FrameMismatch("BPA is not on the product frame");
  const auto slices = build_slices(frame);
  std::map<Mask, double> out;
  for (const auto& [a, v] : joint.entries()) {
    Mask proj = 0;
    for (std::size_t i = 0; i < slices[k].size(); ++i) {
      if (a & slices[k][i]) proj |= Mask{1} << i;
    }
    out[proj] += v;
  }
  return MassFunction(frame.component(k), out, joint.normalized());
}

MassFunction marginalize(const MassFunction& joint, const ProductFrame& frame, const Frame& onto) {
  return marginalize(joint, frame, frame.component_index(onto));
}

ProductMass conjunctive_product(const std::vector<MassFunction>& marginals,
                                std::size_t max_elements) {
  ProductMass pm;
  double count = 1.0;
  for (const auto& m : marginals) {
    pm.components.push_back(m.frame());
    count *= static_cast<double>(m.focal_count());
  }
  if (count > static_cast<double>(max_elements)) {
    throw IntractableInstance("product-form BPA would have " + std::to_string(count) +
                              " focal elements");
  }
  pm.elements.push_back({ProductFocalElement{}, 1.0});
  for (const auto& m : marginals) {
    std::vector<std::pair<ProductFocalElement, double>> next;
    next.reserve(pm.elements.size() * m.focal_count());
    for (const auto& [e, v] : pm.elements) {
      for (const auto& [b, w] : m.entries()) {
        ProductFocalElement f = e;
        f.factors.push_back(b);
        next.emplace_back(std::move(f), v * w);
      }
    }
    pm.elements = std::move(next);
  }
  return pm;
}

MassFunction marginalize(const ProductMass& pm, std::size_t k) {
  if (k >= pm.components.size()) throw FrameMismatch("component index out of range");
  std::map<Mask, double> out;
  for (const auto& [e, v] : pm.elements) out[e.factors[k]] += v;
  return MassFunction(pm.components[k], out, !out.count(0));
}

Refining::Refining(Frame coarse, Frame fine, std::vector<Mask> cells)
    : coarse_(std::move(coarse)), fine_(std::move(fine)), cells_(std::move(cells)) {
  if (cells_.size() != coarse_.size()) {
    throw InvalidRefining("refining needs one cell per coarse outcome");
  }
  Mask seen = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == 0) throw InvalidRefining("cell of " + coarse_.label(i) + " is empty");
    if (!fine_.contains(cells_[i])) throw InvalidRefining("cell outside the fine frame");
    if (seen & cells_[i]) {
      throw InvalidRefining("cell of " + coarse_.label(i) + " overlaps another cell");
    }
    seen |= cells_[i];
  }
  if (seen != fine_.full()) throw InvalidRefining("cells do not cover the fine frame");
}

Mask Refining::refine(Mask coarse_set) const {
  Mask out = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (coarse_set >> i & 1) out |= cells_[i];
  }
  return out;
}

Mask Refining::outer_reduction(Mask fine_set) const {
  Mask out = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] & fine_set) out |= Mask{1} << i;
  }
  return out;
}

MassFunction refine_mass(const MassFunction& m, const Refining& rho) {
  if (!(m.frame() == rho.coarse())) throw FrameMismatch("BPA is not on the coarse frame");
  std::vector<MassFunction::Entry> out;
  for (const auto& [e, v] : m.entries()) out.emplace_back(rho.refine(e), v);
  return MassFunction(rho.fine(), out, m.normalized());
}

Mask outer_reduction(Mask a, const Refining& rho) { return rho.outer_reduction(a); }

MassFunction coarsen_mass(const MassFunction& m, const Refining& rho) {
  if (!(m.frame() == rho.fine())) throw FrameMismatch("BPA is not on the fine frame");
  std::map<Mask, double> out;
  for (const auto& [a, v] : m.entries()) out[rho.outer_reduction(a)] += v;
  return MassFunction(rho.coarse(), out, m.normalized());
}

MassFunction conditional_embedding(const MassFunction& m_i, Mask cell) {
  const Frame& theta = m_i.frame();
  if (cell == 0 || !theta.contains(cell)) throw DomainError("embedding cell outside the frame");
  const Mask outside = theta.full() & ~cell;
  std::vector<MassFunction::Entry> out;
  for (const auto& [e, v] : m_i.entries()) {
    if (!is_subset(e, cell)) {
      throw DomainError("conditional focal element " + theta.format(e) + " leaves its cell");
    }
    out.emplace_back(e | outside, v);
  }
  return MassFunction(theta, out, m_i.normalized());
}

}  // namespace beliefkit
