#include "beliefkit/mass_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beliefkit/errors.hpp"

namespace beliefkit {

namespace {

std::vector<MassFunction::Entry> checked_entries(const Frame& frame,
                                                 std::vector<MassFunction::Entry> raw,
                                                 bool normalized) {
  if (frame.size() == 0) throw DomainError("mass function on an empty frame");
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].first == raw[i - 1].first) {
      throw DomainError("duplicate focal set " + frame.format(raw[i].first));
    }
  }
  double sum = 0.0;
  std::vector<MassFunction::Entry> out;
  out.reserve(raw.size());
  for (const auto& [a, m] : raw) {
    if (!frame.contains(a)) throw DomainError("subset outside the frame");
    if (!std::isfinite(m) || m < 0.0) {
      throw DomainError("negative or non-finite mass on " + frame.format(a));
    }
    if (m == 0.0) continue;
    if (a == 0 && normalized) {
      throw NormalizationError("normalized mass function assigns mass to the empty set");
    }
    sum += m;
    out.emplace_back(a, m);
  }
  if (std::abs(sum - 1.0) > kRenormalizeTol) {
    throw NormalizationError("masses sum to " + std::to_string(sum) + ", not 1");
  }
  if (std::abs(sum - 1.0) > kMassSumTol) {
    for (auto& e : out) e.second /= sum;
  }
  return out;
}

}  // namespace

MassFunction::MassFunction(Frame frame, const std::map<Mask, double>& masses, bool normalized)
    : MassFunction(std::move(frame), std::vector<Entry>(masses.begin(), masses.end()),
                   normalized) {}

MassFunction::MassFunction(Frame frame, const std::vector<Entry>& masses, bool normalized)
    : frame_(std::move(frame)),
      entries_(checked_entries(frame_, masses, normalized)),
      normalized_(normalized) {}

MassFunction MassFunction::vacuous(const Frame& frame) {
  return MassFunction(frame, std::vector<Entry>{{frame.full(), 1.0}});
}

MassFunction MassFunction::categorical(const Frame& frame, Mask a) {
  return MassFunction(frame, std::vector<Entry>{{a, 1.0}}, a != 0);
}

MassFunction MassFunction::bayesian(const Frame& frame, const std::vector<double>& p) {
  if (p.size() != frame.size()) throw DomainError("probability vector size mismatch");
  std::vector<Entry> e;
  for (std::size_t i = 0; i < p.size(); ++i) e.emplace_back(Mask{1} << i, p[i]);
  return MassFunction(frame, e);
}

MassFunction MassFunction::from_dense(const Frame& frame, const std::vector<double>& dense,
                                      bool normalized) {
  if (dense.size() != frame.power_set_size()) throw DomainError("dense vector size mismatch");
  std::vector<Entry> e;
  for (std::size_t a = 0; a < dense.size(); ++a) {
    if (dense[a] != 0.0) e.emplace_back(static_cast<Mask>(a), dense[a]);
  }
  return MassFunction(frame, e, normalized);
}

double MassFunction::mass(Mask a) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), a,
                             [](const Entry& e, Mask key) { return e.first < key; });
  return (it != entries_.end() && it->first == a) ? it->second : 0.0;
}

double MassFunction::belief(Mask a) const {
  double s = 0.0;
  for (const auto& [b, m] : entries_) {
    if (b != 0 && is_subset(b, a)) s += m;
  }
  return s;
}

double MassFunction::plausibility(Mask a) const {
  double s = 0.0;
  for (const auto& [b, m] : entries_) {
    if (b & a) s += m;
  }
  return s;
}

double MassFunction::commonality(Mask a) const {
  double s = 0.0;
  for (const auto& [b, m] : entries_) {
    if (is_subset(a, b)) s += m;
  }
  return s;
}

std::vector<double> MassFunction::dense() const {
  std::vector<double> v(frame_.power_set_size(), 0.0);
  for (const auto& [a, m] : entries_) v[a] = m;
  return v;
}

bool MassFunction::is_bayesian() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return cardinality(e.first) == 1; });
}

bool MassFunction::is_vacuous() const {
  return entries_.size() == 1 && entries_[0].first == frame_.full();
}

bool MassFunction::has_disjoint_focal_elements() const {
  Mask seen = 0;
  for (const auto& e : entries_) {
    if (seen & e.first) return false;
    seen |= e.first;
  }
  return true;
}

double max_abs_diff(const MassFunction& a, const MassFunction& b) {
  double d = 0.0;
  for (const auto& [m, v] : a.entries()) d = std::max(d, std::abs(v - b.mass(m)));
  for (const auto& [m, v] : b.entries()) d = std::max(d, std::abs(v - a.mass(m)));
  return d;
}

}  // namespace beliefkit
