#pragma once

// Counter-based SplitMix64 stream. The i-th draw of the stream keyed by `key`
// is mix(key + (i + 1) * 0x9E3779B97F4A7C15), where mix is the SplitMix64
// finalizer. Independent streams are derived with derive(); the whole scheme
// is fixed so other implementations can replay a run.

#include <cstdint>

namespace delpezzo {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return splitmix64_mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, bound) by rejection on the top of the 64-bit range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      const std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  // Key of a child stream, e.g. one per sample index.
  static std::uint64_t derive(std::uint64_t key, std::uint64_t label) {
    return splitmix64_mix(key ^ splitmix64_mix(label + kGamma));
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace delpezzo
