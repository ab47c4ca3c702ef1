#pragma once

#include <cstdint>
#include <string_view>

namespace incseq {

// Splittable counter-based generator in the SplittableRandom style: the
// state advances by a fixed odd gamma and the output is a strong 64-bit
// mix of the counter. child(key) derives a statistically independent
// stream from the parent's root identity and the key alone, so a stream's
// children never depend on how much of the parent has been consumed.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed)
      : root_(seed), state_(mix64(seed)), gamma_(mix_gamma(seed + kGolden)) {}

  uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Unbiased uniform draw from [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    const uint64_t lim = (0 - bound) % bound;  // 2^64 mod bound
    uint64_t r;
    do {
      r = next_u64();
    } while (r < lim);
    return r % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  RandomStream child(uint64_t key) const {
    return RandomStream(mix64(root_ ^ mix64(key + kGolden)));
  }

  uint64_t root_seed() const { return root_; }

 private:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static uint64_t mix_gamma(uint64_t z) {
    z = mix64(z) | 1ull;  // gammas must be odd
    return z;
  }

  uint64_t root_;
  uint64_t state_;
  uint64_t gamma_;
};

// Stable 64-bit key for job-level stream derivation: hashing the job's
// textual identity means adding or reordering jobs never perturbs the
// randomness of existing ones.
inline uint64_t job_key(std::string_view text) {
  uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace incseq
