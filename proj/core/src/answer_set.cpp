#include "gapmatch/answer_set.hpp"

#include <algorithm>

#include "gapmatch/errors.hpp"

namespace gapmatch {

AnswerSet::AnswerSet(std::shared_ptr<const Lists> lists, std::vector<Segment> segments, std::size_t delta)
    : lists_(std::move(lists)), delta_(delta) {
  segments_.reserve(segments.size());
  for (const Segment& s : segments)
    if (s.hi > s.lo) segments_.push_back(s);
  prefix_.reserve(segments_.size());
  std::size_t total = 0;
  for (const Segment& s : segments_) {
    total += s.hi - s.lo;
    prefix_.push_back(total);
  }
}

AnswerSet AnswerSet::full(std::size_t delta) {
  std::vector<Segment> segs;
  if (delta > 0) segs.push_back({kRange, 0, static_cast<std::uint32_t>(delta), 0});
  return AnswerSet(nullptr, std::move(segs), delta);
}

AnswerSet AnswerSet::from_sorted(const PositionSet& positions, std::size_t delta) {
  auto lists = std::make_shared<Lists>(1);
  (*lists)[0].assign(positions.begin(), positions.end());
  std::vector<Segment> segs{{0, 0, static_cast<std::uint32_t>(positions.size()), 0}};
  return AnswerSet(std::move(lists), std::move(segs), delta);
}

std::size_t AnswerSet::at(std::size_t a) const {
  require(a < size(), "AnswerSet::at: index out of range");
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), a);
  const auto s = static_cast<std::size_t>(it - prefix_.begin());
  const std::size_t before = s == 0 ? 0 : prefix_[s - 1];
  return pos(segments_[s], segments_[s].lo + (a - before));
}

std::size_t AnswerSet::rank(std::size_t x) const {
  // Last segment whose first element is < x.
  std::size_t lo = 0, hi = segments_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (pos(segments_[mid], segments_[mid].lo) < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == 0) return 0;
  const std::size_t s = lo - 1;
  const Segment& seg = segments_[s];
  std::size_t a = seg.lo, b = seg.hi;  // first index in [a, b) with pos >= x
  while (a < b) {
    const std::size_t mid = (a + b) / 2;
    if (pos(seg, mid) < x)
      a = mid + 1;
    else
      b = mid;
  }
  return (s == 0 ? 0 : prefix_[s - 1]) + (a - seg.lo);
}

PositionSet AnswerSet::enumerate() const {
  PositionSet out;
  out.reserve(size());
  for (const Segment& s : segments_)
    for (std::size_t idx = s.lo; idx < s.hi; ++idx) out.push_back(pos(s, idx));
  return out;
}

PositionSet AnswerSet::enumerate_range(std::size_t lo, std::size_t hi) const {
  PositionSet out;
  if (hi <= lo) return out;
  const std::size_t a = rank(lo), b = rank(hi);
  out.reserve(b - a);
  if (a == b) return out;
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), a);
  auto s = static_cast<std::size_t>(it - prefix_.begin());
  std::size_t idx = segments_[s].lo + (a - (s == 0 ? 0 : prefix_[s - 1]));
  for (std::size_t c = a; c < b; ++c) {
    while (idx >= segments_[s].hi) {
      ++s;
      idx = segments_[s].lo;
    }
    out.push_back(pos(segments_[s], idx));
    ++idx;
  }
  return out;
}

}  // namespace gapmatch
