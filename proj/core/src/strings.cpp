#include "gapmatch/strings.hpp"

#include "gapmatch/errors.hpp"

namespace gapmatch {

void Instance::validate() const {
  require(!pattern.empty(), "instance: pattern must be nonempty");
  require(text.size() >= pattern.size(), "instance: need m <= n");
  require(k >= 1 && k < pattern.size(), "instance: need 1 <= k < m");
  require(kprime < k, "instance: need kprime < k");
  require(sigma >= 1, "instance: sigma must be positive");
  for (Symbol s : pattern) require(s < sigma, "instance: pattern symbol out of range");
  for (Symbol s : text) require(s < sigma, "instance: text symbol out of range");
}

Instance Instance::make(SymbolSeq pattern, SymbolSeq text, std::uint64_t sigma, std::size_t k,
                        std::size_t kprime) {
  Instance inst{std::move(pattern), std::move(text), sigma, k, kprime};
  inst.validate();
  return inst;
}

std::size_t hamming_distance(SymbolView a, SymbolView b) {
  require(a.size() == b.size(), "hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

MismatchSet mismatch_set(SymbolView pattern, SymbolView window) {
  require(pattern.size() == window.size(), "mismatch_set: length mismatch");
  MismatchSet out;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] != window[i]) out.push_back(i);
  return out;
}

PositionSet occ_exact(SymbolView pattern, SymbolView text) {
  require(pattern.size() <= text.size(), "occ_exact: need |P| <= |T|");
  PositionSet out;
  const std::size_t m = pattern.size();
  if (m == 0) {
    for (std::size_t i = 0; i <= text.size(); ++i) out.push_back(i);
    return out;
  }
  // fail[q] = length of the longest proper border of pattern[0..q].
  std::vector<std::size_t> fail(m, 0);
  for (std::size_t q = 1, b = 0; q < m; ++q) {
    while (b > 0 && pattern[q] != pattern[b]) b = fail[b - 1];
    if (pattern[q] == pattern[b]) ++b;
    fail[q] = b;
  }
  for (std::size_t i = 0, q = 0; i < text.size(); ++i) {
    while (q > 0 && text[i] != pattern[q]) q = fail[q - 1];
    if (text[i] == pattern[q]) ++q;
    if (q == m) {
      out.push_back(i + 1 - m);
      q = fail[q - 1];
    }
  }
  return out;
}

PositionSet occ_k_bruteforce(const Instance& inst, std::size_t threshold) {
  PositionSet out;
  const std::size_t m = inst.m();
  for (std::size_t i = 0; i < inst.delta(); ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < m && d <= threshold; ++j) d += inst.pattern[j] != inst.text[i + j];
    if (d <= threshold) out.push_back(i);
  }
  return out;
}

std::size_t min_hamming_distance(const Instance& inst) {
  std::size_t best = inst.m();
  for (std::size_t i = 0; i < inst.delta() && best > 0; ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < inst.m() && d < best; ++j) d += inst.pattern[j] != inst.text[i + j];
    if (d < best) best = d;
  }
  return best;
}

}  // namespace gapmatch
