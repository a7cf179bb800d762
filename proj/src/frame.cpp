#include "beliefkit/frame.hpp"

#include <algorithm>

#include "beliefkit/errors.hpp"

namespace beliefkit {

Frame::Frame(std::vector<std::string> labels) {
  auto d = std::make_shared<Data>();
  d->labels = std::move(labels);
  if (d->labels.empty()) throw DomainError("frame must have at least one outcome");
  if (d->labels.size() > kMaxSparseFrame) {
    throw FrameTooLarge("frame has " + std::to_string(d->labels.size()) +
                        " outcomes; masks hold at most 64");
  }
  for (std::size_t i = 0; i < d->labels.size(); ++i) {
    if (d->labels[i].empty()) throw DomainError("empty outcome label");
    if (!d->index.emplace(d->labels[i], i).second) {
      throw DomainError("duplicate outcome label '" + d->labels[i] + "'");
    }
  }
  data_ = std::move(d);
}

const std::vector<std::string>& Frame::labels() const {
  static const std::vector<std::string> empty;
  return data_ ? data_->labels : empty;
}

std::size_t Frame::index_of(std::string_view label) const {
  if (!data_) throw DomainError("empty frame");
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) throw DomainError("unknown outcome '" + std::string(label) + "'");
  return it->second;
}

bool Frame::has_label(std::string_view label) const {
  return data_ && data_->index.count(std::string(label)) != 0;
}

Mask Frame::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= Mask{1} << index_of(l);
  return m;
}

std::vector<std::string> Frame::labels_of(Mask a) const {
  std::vector<std::string> out;
  const auto& ls = labels();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (a >> i & 1) out.push_back(ls[i]);
  }
  return out;
}

std::vector<std::string> Frame::sorted_labels_of(Mask a) const {
  auto out = labels_of(a);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Frame::format(Mask a) const {
  std::string s = "{";
  bool first = true;
  for (const auto& l : labels_of(a)) {
    if (!first) s += ',';
    s += l;
    first = false;
  }
  return s + "}";
}

std::size_t Frame::power_set_size() const {
  if (size() > kMaxDenseFrame) {
    throw FrameTooLarge("dense power-set operation on a frame of " +
                        std::to_string(size()) + " outcomes (limit 24)");
  }
  return std::size_t{1} << size();
}

Mask parse_subset(const Frame& frame, std::string_view text) {
  Mask m = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (!tok.empty()) m |= Mask{1} << frame.index_of(tok);
    pos = end + 1;
  }
  return m;
}

}  // namespace beliefkit
