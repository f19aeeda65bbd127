#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace srma {

// Counter-based PRNG keyed by (seed, label). Draw i is a pure function of
// (seed, label, i), so streams can be recreated anywhere and replayed, and
// distinct labels never interfere with each other's draw sequences.
class RngStream {
 public:
  RngStream(uint64_t seed, std::string_view label)
      : key_(derive_key(seed, label)) {}

  uint64_t next_u64() {
    uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    return mix(z);
  }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // [0, n)
  int64_t uniform_int(int64_t n) {
    const uint64_t un = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<int64_t>(v % un);
  }

  // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const int64_t n = last - first;
    for (int64_t i = n - 1; i > 0; --i) {
      const int64_t j = uniform_int(i + 1);
      std::swap(first[i], first[j]);
    }
  }

  uint64_t draws() const { return counter_; }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static uint64_t derive_key(uint64_t seed, std::string_view label) {
    uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over the label bytes
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return mix(mix(seed ^ 0x5851F42D4C957F2DULL) ^ h);
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace srma
