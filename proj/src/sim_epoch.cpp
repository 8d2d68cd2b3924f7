// Renewal-level single-source simulator. Epochs are independent renewals, so
// they are processed in fixed chunks of 8192 with one RNG stream per chunk;
// each chunk opens with a throwaway epoch that supplies a stationary starting
// age for its first kept epoch. Chunk results are reduced in chunk order, so
// Serial and Parallel execution are bit-identical at any thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aoi/rng.hpp"
#include "aoi/sim.hpp"
#include "sim_internal.hpp"

namespace aoi {
namespace {

constexpr std::uint64_t kChunkEpochs = 8192;

struct EpochDraw {
  double length = 0.0;
  double delivered_age = 0.0;
  std::uint32_t attempts = 0;
};

EpochDraw simulate_one_epoch(Rng& rng, double le, double ld, double gamma, double q) {
  EpochDraw ep;
  for (;;) {
    ++ep.attempts;
    const double e = rng.exponential(le);
    const double d = rng.exponential(ld);
    const double window = std::max(gamma, std::max(e, d));
    ep.length += window;
    if (rng.bernoulli(q)) continue;  // erased; buffer and battery are gone
    // Success: the freshest packet wins. Walk the data stream across the
    // window starting from the first arrival at d.
    double last = d;
    for (;;) {
      const double gap = rng.exponential(ld);
      if (last + gap > window) break;
      last += gap;
    }
    ep.delivered_age = window - last;
    return ep;
  }
}

struct ChunkResult {
  double simulated_time = 0.0;  // all epochs in the chunk, warmup included
  std::uint64_t attempts = 0;   // retained epochs only
};

}  // namespace

SimReport run_epoch_sim(const SimConfig& config) {
  config.validate();
  require(config.params.single_source(), ErrorCode::RequiresSingleSource,
          "epoch simulation handles a single source");
  require(config.epochs.has_value(), ErrorCode::InvalidConfig,
          "epoch simulation requires the epoch-count stop rule");

  const double le = config.params.lambda_e;
  const double ld = config.params.lambda_d[0];
  const double gamma = config.gamma.gamma;
  const double q = config.params.q;

  const std::uint64_t retained_target = *config.epochs;
  const std::uint64_t warmup = config.warmup_epochs;
  const std::uint64_t total = warmup + retained_target;
  const std::uint64_t chunks = (total + kChunkEpochs - 1) / kChunkEpochs;

  detail::EpochSeries series;
  series.area.resize(retained_target);
  series.length.resize(retained_target);
  std::vector<double> delta(config.record_delta ? retained_target : 0);
  std::vector<EpochRecord> log(config.record_epochs ? retained_target : 0);
  std::vector<ChunkResult> chunk_results(chunks);

  const auto run_chunk = [&](std::uint64_t c) {
    Rng rng(stream_seed(config.seed, stream::kEpochChunk, c));
    ChunkResult res;
    // Stationary starting age for the chunk's first epoch.
    double prev_age = simulate_one_epoch(rng, le, ld, gamma, q).delivered_age;
    const std::uint64_t begin = c * kChunkEpochs;
    const std::uint64_t end = std::min(begin + kChunkEpochs, total);
    for (std::uint64_t g = begin; g < end; ++g) {
      const EpochDraw ep = simulate_one_epoch(rng, le, ld, gamma, q);
      res.simulated_time += ep.length;
      if (g >= warmup) {
        const std::uint64_t r = g - warmup;
        const double area = prev_age * ep.length + 0.5 * ep.length * ep.length;
        series.area[r] = area;
        series.length[r] = ep.length;
        res.attempts += ep.attempts;
        if (config.record_delta) delta[r] = ep.delivered_age;
        if (config.record_epochs)
          log[r] = EpochRecord{1, prev_age, ep.length, area, ep.attempts};
      }
      prev_age = ep.delivered_age;
    }
    chunk_results[c] = res;
  };

  if (config.exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c)
      run_chunk(static_cast<std::uint64_t>(c));
  } else {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  }

  SimReport report;
  report.seed = config.seed;
  for (const ChunkResult& res : chunk_results) {
    report.sim_horizon += res.simulated_time;
    report.attempts_total += res.attempts;
  }
  std::vector<detail::EpochSeries> all_series(1);
  all_series[0] = std::move(series);
  detail::finalize_stats(report, all_series, config.batch_count);
  if (config.record_delta) report.delta_samples.push_back(std::move(delta));
  report.epoch_log = std::move(log);
  return report;
}

}  // namespace aoi
