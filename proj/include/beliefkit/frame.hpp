#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace beliefkit {

/// Subset of a frame: bit i set iff outcome i belongs to the subset.
using Mask = std::uint64_t;

/// Largest frame for which power-set arrays are materialized.
inline constexpr std::size_t kMaxDenseFrame = 24;
/// Largest frame representable with a Mask at all (sparse operations only).
inline constexpr std::size_t kMaxSparseFrame = 64;

inline int cardinality(Mask a) { return std::popcount(a); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const { return data_ ? data_->labels.size() : 0; }
  const std::vector<std::string>& labels() const;
  const std::string& label(std::size_t i) const { return labels().at(i); }

  /// Mask of the whole frame.
  Mask full() const {
    return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1);
  }
  bool contains(Mask a) const { return is_subset(a, full()); }

  std::size_t index_of(std::string_view label) const;
  bool has_label(std::string_view label) const;
  Mask mask_of(const std::vector<std::string>& labels) const;
  /// Labels of the outcomes in `a`, in frame order.
  std::vector<std::string> labels_of(Mask a) const;
  /// Labels of `a` sorted lexicographically (the serialized form).
  std::vector<std::string> sorted_labels_of(Mask a) const;
  /// Human-readable "{x,y}".
  std::string format(Mask a) const;

  /// Number of subsets, 2^n; throws FrameTooLarge beyond kMaxDenseFrame.
  std::size_t power_set_size() const;

  bool operator==(const Frame& other) const {
    return data_ == other.data_ || labels() == other.labels();
  }

 private:
  // Shared so that copying a frame into every mass function stays cheap.
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Parse "x,y" (whitespace tolerant) into a mask on `frame`.
Mask parse_subset(const Frame& frame, std::string_view text);

}  // namespace beliefkit
