#pragma once

// Reproducible randomness ("edgestat-rng-v1").
//
// Every random draw in the library goes through Rng, which wraps
// std::mt19937_64. The engine's output sequence is fixed by the C++ standard;
// the std:: distributions are not, so they are never used. Bounded integers
// use Lemire's multiply-and-reject method on raw 64-bit outputs. Independent
// streams (one per Monte-Carlo block) are derived with splitmix64.

#include <cstdint>
#include <random>
#include <vector>

namespace edgestat {

inline constexpr const char* kRngName = "edgestat-rng-v1 (mt19937_64, splitmix64 streams)";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the stream-th independent substream of a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// True with probability num/den exactly (0 <= num <= den, den > 0).
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  bool coin() { return (next() >> 63) != 0; }

  /// Uniform k-subset of {1..n}, returned sorted (Floyd's algorithm).
  std::vector<std::uint32_t> k_subset(std::uint32_t n, std::uint32_t k);

  /// Uniform sequence of k distinct elements of {1..n} (partial Fisher-Yates).
  std::vector<std::uint32_t> distinct_sequence(std::uint32_t n, std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgestat
