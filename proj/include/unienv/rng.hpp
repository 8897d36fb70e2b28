#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace unienv {

/// Counter-based generator: output i is a bijective mix of (key + i * gamma).
/// The key is derived from a 64-bit seed and a stream label, so independent
/// consumers of one master seed never share a sequence. All sampling helpers
/// are implemented here rather than through <random> distributions, whose
/// output is implementation-defined.
class Rng {
 public:
  Rng() : Rng(0, "default") {}
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi).
  int uniform_int(int lo, int hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  const T& choice(std::span<const T> items) {
    return items[below(items.size())];
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

/// FNV-1a; stable across platforms, used to turn stream labels into keys.
std::uint64_t hash_label(std::string_view label);

/// Non-deterministic seed for resets that were not given one.
std::uint64_t entropy_seed();

}  // namespace unienv
