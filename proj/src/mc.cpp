#include "aoi/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aoi/rng.hpp"

namespace aoi {
namespace {

// Fixed chunking keeps the estimate independent of thread count: chunk k owns
// its own stream and the partial counts are reduced in chunk order.
constexpr std::uint64_t kChunkSamples = 1 << 16;

std::uint64_t chunk_hits(double le, double ld, double gamma, double delta, std::uint64_t count,
                         std::uint64_t chunk_seed) {
  Rng rng(chunk_seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double e = rng.exponential(le);
    const double d = rng.exponential(ld);
    const double window = std::max(gamma, std::max(e, d));
    double last = d;
    for (;;) {
      const double gap = rng.exponential(ld);
      if (last + gap > window) break;
      last += gap;
    }
    if (window - last <= delta) ++hits;
  }
  return hits;
}

}  // namespace

McEstimate starting_age_cdf_mc(const SystemParams& params, ThresholdPolicy policy, double delta,
                               std::uint64_t samples, std::uint64_t seed, Exec exec) {
  require(params.single_source(), ErrorCode::RequiresSingleSource,
          "oracle is defined for a single source");
  require(delta >= 0.0, ErrorCode::NegativeDelta, "delta must be >= 0");
  require(samples >= 10000, ErrorCode::InvalidConfig, "need at least 1e4 samples");

  const double le = params.lambda_e;
  const double ld = params.lambda_d[0];
  const double gamma = policy.gamma;

  const std::uint64_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<std::uint64_t> hits(chunks, 0);

  const auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkSamples;
    const std::uint64_t count = std::min(kChunkSamples, samples - begin);
    hits[c] = chunk_hits(le, ld, gamma, delta, count, stream_seed(seed, stream::kCdfChunk, c));
  };

  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c)
      run_chunk(static_cast<std::uint64_t>(c));
  } else {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  }

  std::uint64_t total = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) total += hits[c];

  McEstimate est;
  est.samples = samples;
  est.value = static_cast<double>(total) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  return est;
}

}  // namespace aoi
