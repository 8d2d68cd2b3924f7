#pragma once

// Deterministic seeded random streams. Every stochastic component derives its
// stream from the master seed and a purpose tag, so reruns with the same seed
// are bit-identical and different purposes never share draws.

#include <cmath>
#include <cstdint>
#include <random>

namespace aoi {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t purpose,
                                    std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ purpose) ^ index);
}

namespace stream {
inline constexpr std::uint64_t kEnergy = 0xE0;
inline constexpr std::uint64_t kErasure = 0xE1;
inline constexpr std::uint64_t kData = 0xD0;        // indexed by source
inline constexpr std::uint64_t kEpochChunk = 0xC0;  // indexed by chunk
inline constexpr std::uint64_t kCdfChunk = 0xC1;    // indexed by chunk
inline constexpr std::uint64_t kPoint = 0xF0;       // indexed by grid point
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace aoi
