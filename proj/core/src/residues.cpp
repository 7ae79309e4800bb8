#include "gapmatch/residues.hpp"

#include <algorithm>

#include "gapmatch/errors.hpp"

namespace gapmatch {

namespace {

// Indices in [0, count) hit by independent Bernoulli(rate) trials.
template <class Fn>
void bernoulli_hits(std::uint64_t count, double rate, Rng& rng, Fn&& on_hit) {
  if (rate <= 0.0 || count == 0) return;
  if (rate >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) on_hit(i);
    return;
  }
  std::uint64_t i = rng.geometric(rate);
  while (i < count) {
    on_hit(i);
    const std::uint64_t skip = rng.geometric(rate);
    if (skip >= count - i) break;
    i += skip + 1;
  }
}

}  // namespace

bool ResidueSample::contains(std::uint64_t r) const {
  return std::binary_search(members.begin(), members.end(), r);
}

ResidueSample sample_residues(std::uint64_t p, double beta, Rng& rng) {
  require(beta >= 0.0 && beta <= 1.0, "sample_residues: beta outside [0, 1]");
  require(p >= 1, "sample_residues: p must be positive");
  ResidueSample out{p, beta, {}};
  if (beta <= 0.5) {
    bernoulli_hits(p, beta, rng, [&](std::uint64_t r) { out.members.push_back(r); });
    return out;
  }
  std::vector<std::uint64_t> excluded;
  bernoulli_hits(p, 1.0 - beta, rng, [&](std::uint64_t r) { excluded.push_back(r); });
  out.members.reserve(p - excluded.size());
  std::size_t e = 0;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (e < excluded.size() && excluded[e] == r) {
      ++e;
      continue;
    }
    out.members.push_back(r);
  }
  return out;
}

std::vector<std::uint64_t> mod_project(const PositionSet& positions, std::uint64_t p) {
  require(p >= 1, "mod_project: p must be positive");
  std::vector<std::uint64_t> out;
  out.reserve(positions.size());
  for (std::size_t a : positions) out.push_back(a % p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ResidueWindow ResidueWindow::draw(std::uint64_t p, double beta, std::int64_t lo, std::int64_t hi,
                                  Rng& rng) {
  require(hi >= lo, "ResidueWindow: need hi >= lo");
  ResidueWindow w;
  w.p_ = p;
  w.beta_ = beta;
  w.lo_ = lo;
  w.hi_ = hi;
  const auto span = static_cast<std::uint64_t>(hi - lo);
  if (span >= p) {
    w.full_ = true;
    w.bits_.assign(p, 0);
    for (std::uint64_t r : sample_residues(p, beta, rng).members) w.bits_[r] = 1;
  } else {
    w.bits_.assign(span, 0);
    if (beta > 0.5) {
      std::fill(w.bits_.begin(), w.bits_.end(), 1);
      bernoulli_hits(span, 1.0 - beta, rng, [&](std::uint64_t i) { w.bits_[i] = 0; });
    } else {
      bernoulli_hits(span, beta, rng, [&](std::uint64_t i) { w.bits_[i] = 1; });
    }
  }
  return w;
}

std::vector<std::int64_t> ResidueWindow::members() const {
  std::vector<std::int64_t> out;
  for (std::int64_t t = lo_; t < hi_; ++t)
    if (contains(t)) out.push_back(t);
  return out;
}

}  // namespace gapmatch
