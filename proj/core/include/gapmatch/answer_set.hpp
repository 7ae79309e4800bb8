#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "gapmatch/strings.hpp"

namespace gapmatch {

// Implicit sorted subset of [0..delta). Each segment is a slice of a shared
// sorted u-list shifted by a base offset, or a contiguous range. Segments are
// stored in increasing position order and never overlap.
class AnswerSet {
 public:
  static constexpr std::uint32_t kRange = 0xffffffffu;

  struct Segment {
    std::uint32_t list;  // index into lists, or kRange
    std::uint32_t lo;    // slice [lo, hi) of the list, or [lo, hi) offsets
    std::uint32_t hi;
    std::uint64_t base;
  };
  using Lists = std::vector<std::vector<std::uint32_t>>;

  AnswerSet() = default;
  AnswerSet(std::shared_ptr<const Lists> lists, std::vector<Segment> segments, std::size_t delta);

  static AnswerSet full(std::size_t delta);
  static AnswerSet from_sorted(const PositionSet& positions, std::size_t delta);

  std::size_t size() const { return prefix_.empty() ? 0 : prefix_.back(); }
  bool empty() const { return size() == 0; }
  std::size_t delta() const { return delta_; }
  std::size_t segment_count() const { return segments_.size(); }

  // a-th smallest element, O(log #segments).
  std::size_t at(std::size_t a) const;
  // Number of elements < x.
  std::size_t rank(std::size_t x) const;
  std::size_t count_in(std::size_t lo, std::size_t hi) const { return rank(hi) - rank(lo); }
  bool contains(std::size_t x) const { return count_in(x, x + 1) == 1; }

  PositionSet enumerate() const;
  // Elements in [lo, hi), increasing.
  PositionSet enumerate_range(std::size_t lo, std::size_t hi) const;

 private:
  std::size_t pos(const Segment& s, std::size_t idx) const {
    return static_cast<std::size_t>(s.base) +
           (s.list == kRange ? idx : static_cast<std::size_t>((*lists_)[s.list][idx]));
  }

  std::shared_ptr<const Lists> lists_;
  std::vector<Segment> segments_;
  std::vector<std::size_t> prefix_;  // prefix_[s] = elements in segments [0..s]
  std::size_t delta_ = 0;
};

}  // namespace gapmatch
