#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qapmap {

/// Seeded PRNG wrapper. All randomized components draw through this class so
/// that runs are reproducible for a given seed independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Unbiased draw from [0, bound). bound must be > 0.
  uint64_t next_below(uint64_t bound) {
    // rejection sampling on the top part of the range
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  int next_int(int bound) { return static_cast<int>(next_below(static_cast<uint64_t>(bound))); }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// A vector {0, 1, ..., n-1} in random order.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qapmap
