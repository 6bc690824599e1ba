#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace coflow {

// splitmix64; used both as a stream-splitting hash and to seed the main engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4a049bb133111ULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed from (seed, a, b). Used to give every
// Monte-Carlo trial its own stream so trial order never matters.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t x = splitmix64(s);
  s ^= a * 0xd1342543de82ef95ULL;
  x ^= splitmix64(s);
  s ^= b * 0xaf251af3b0f025b5ULL;
  x ^= splitmix64(s);
  return x;
}

// mt19937_64 with a fixed bits-to-double mapping so sequences are identical
// across platforms (std::uniform_real_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1): top 53 bits of one draw.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // CDF inversion over nonnegative weights; weights need not be normalized.
  // Returns the index of the chosen weight.
  std::size_t sample_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("sample_index: negative weight");
      total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("sample_index: zero total weight");
    const double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coflow
