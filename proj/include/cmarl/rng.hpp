#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cmarl {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent seed for a named substream (and optional index)
// of a run seed. Used so that e.g. action selection, per-episode env
// resets and trace sampling never share a generator.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ (stream * 0xA0761D6478BD642FULL)) ^
                    (index * 0xE7037ED1A0B428DBULL));
}

// Seeded generator with self-contained sampling routines. The standard
// distributions are not specified bit-exactly across library
// implementations, so everything that must reproduce byte-identically
// goes through this class instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, n). n == 0 or 1 returns 0 without consuming a draw.
  std::uint32_t uniform_int(std::uint32_t n) {
    if (n <= 1) return 0;
    std::uint32_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    for (;;) {
      std::uint32_t r = static_cast<std::uint32_t>(next_u64()) & mask;
      if (r < n) return r;
    }
  }

  // Standard normal via Box-Muller; consumes exactly two draws.
  double normal() {
    double u1 = 1.0 - uniform_double();
    double u2 = uniform_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cmarl
