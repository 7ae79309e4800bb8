#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gapmatch/instance_io.hpp"
#include "gapmatch/rng.hpp"
#include "gapmatch/strings.hpp"

namespace gapmatch {

// A truth flag; value is empty when unknown. verified means it was computed by
// construction or by the brute-force oracle.
struct Label {
  std::optional<bool> value;
  bool verified = false;
};

struct LabeledInstance {
  Instance instance;
  Label truth_exact;  // Occ(P, T) nonempty
  Label truth_kfar;   // Occ_k(P, T) empty
  std::optional<std::size_t> plant;
  std::string dist_name;
  std::uint64_t seed = 0;
  // False when the requested parameters leave the regime 4 ln(5n) < k <= m/4
  // or had to be clamped into 1 <= k < m.
  bool regime_ok = true;
  // False when k was clamped; labels then stay unverified.
  bool k_exact = true;
};

enum class FamilyKind : std::uint8_t { Random, Planted, Mixed };
enum class HybridKind : std::uint8_t { Equal, Independent, Hybrid };
enum class VerifyMode : std::uint8_t { Never, Auto, Always };

// Auto verifies only while n * m <= kVerifyLimit.
inline constexpr double kVerifyLimit = 1e7;

// Binary symbols, each 1 with probability min(1, 2k/m).
LabeledInstance gen_bernoulli_family(FamilyKind kind, std::size_t n, std::size_t m, std::size_t k, Rng& rng,
                                     VerifyMode verify = VerifyMode::Auto);
// s = min(m, max(4k, delta)); P = 0^p S_P 0^(m-s-p), T = 0^(p+t) S_T 0^(n-s-p-t).
LabeledInstance gen_hybrid_family(HybridKind kind, std::size_t n, std::size_t m, std::size_t k, Rng& rng,
                                  VerifyMode verify = VerifyMode::Auto);
// Uniform symbols over [1..10n^2]; k = m - 1.
LabeledInstance gen_large_alphabet(FamilyKind kind, std::size_t n, std::size_t m, Rng& rng,
                                   VerifyMode verify = VerifyMode::Auto);
// Bernoulli text, exact plant, then exactly kprime pattern positions flipped.
LabeledInstance gen_planted_noisy(std::size_t n, std::size_t m, std::size_t k, std::size_t kprime, Rng& rng,
                                  VerifyMode verify = VerifyMode::Auto);

// Distribution names accepted by generate():
// random planted mixed hybrid-equal hybrid-indep hybrid large-alpha
// large-alpha-random large-alpha-planted planted-noisy.
bool is_distribution(const std::string& dist);
LabeledInstance generate(const std::string& dist, std::size_t n, std::size_t m, std::size_t k, std::size_t kprime,
                         std::uint64_t seed, VerifyMode verify = VerifyMode::Auto);

// Fills both labels from the brute-force oracle unless k was clamped.
void verify_labels(LabeledInstance& li);

// Label-carrying header fields and their inverse.
Metadata to_metadata(const LabeledInstance& li);
LabeledInstance from_file(const InstanceFile& file);

}  // namespace gapmatch
