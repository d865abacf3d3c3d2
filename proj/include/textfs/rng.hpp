#pragma once

#include <array>
#include <cstdint>

namespace textfs {

// Deterministic random stream: xoshiro256** state expanded from a 64-bit seed
// with SplitMix64. All draws are derived from integer arithmetic only, so the
// sequence for a given seed is identical on every platform.
class RngStream {
 public:
  static constexpr const char* kAlgorithm = "xoshiro256**/splitmix64";

  explicit RngStream(std::uint64_t seed = 0);

  std::uint64_t next();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Fair coin.
  bool coin() { return (next() >> 63) != 0; }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
};

// Substream seeds are derived by XOR with a run or document index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

}  // namespace textfs
