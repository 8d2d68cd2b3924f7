// Event-driven simulator of the full system. One strictly sequential
// timeline: Poisson energy arrivals charge the unit battery (or are dropped
// when it is full), each source's Poisson data arrivals are admitted into the
// single-packet buffer iff that source currently has the maximum age (ties to
// the lowest index), fresher admitted packets preempt the held one, and an
// attempt fires once both resources are present and the threshold has
// elapsed since the reference point. Attempts consume both resources and are
// erased i.i.d. with probability q; feedback is instantaneous.
//
// The served source keeps the maximum age from its service start until its
// own success (ages grow at unit rate, so their order only changes at
// successes), hence service always runs to completion; the attempt handler
// checks this. Age integrals are accumulated from trapezoid pieces between
// consecutive successes, the points where an age curve changes; between them
// every age is exactly linear, so the accumulation is exact piecewise-linear
// integration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aoi/rng.hpp"
#include "aoi/sim.hpp"
#include "sim_internal.hpp"

namespace aoi {
namespace {

// Event-time ties (probability zero, but the loop must stay deterministic)
// resolve by kind: energy, then data by source index, then the attempt.
struct NextEvent {
  double time = 0.0;
  std::size_t kind = 0;  // 0 = energy, 1..N = data, N+1 = attempt
};

}  // namespace

SimReport run_event_sim(const SimConfig& config) {
  config.validate();
  const SystemParams& p = config.params;
  const std::size_t n = p.source_count();
  const double gamma = config.gamma.gamma;
  const bool epoch_mode = config.epochs.has_value();
  const std::uint64_t retained_target = epoch_mode ? *config.epochs : 0;

  Rng energy_rng(stream_seed(config.seed, stream::kEnergy));
  Rng erasure_rng(stream_seed(config.seed, stream::kErasure));
  std::vector<Rng> data_rng;
  data_rng.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    data_rng.emplace_back(stream_seed(config.seed, stream::kData, j));

  double now = 0.0;
  double next_energy = energy_rng.exponential(p.lambda_e);
  std::vector<double> next_data(n);
  for (std::size_t j = 0; j < n; ++j) next_data[j] = data_rng[j].exponential(p.lambda_d[j]);

  SensorState sensor;
  std::optional<double> attempt_at;
  double ref_time = 0.0;  // epoch start or previous attempt
  std::uint32_t attempts_in_service = 0;
  double last_accum = 0.0;

  std::vector<AgeTracker> tracker(n);
  std::vector<detail::EpochSeries> series(n);
  SimReport report;
  report.seed = config.seed;
  if (config.record_delta) report.delta_samples.assign(n, {});
  if (epoch_mode) {
    for (auto& s : series) {
      s.area.reserve(retained_target);
      s.length.reserve(retained_target);
    }
  }

  const auto max_age_source = [&]() {
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (tracker[j].last_update_gen < tracker[best].last_update_gen) best = j;
    return best;
  };

  const auto arm_attempt = [&](double t) {
    if (sensor.battery == 1 && sensor.buffer_source != 0 && !attempt_at) {
      sensor.gate_open_time = t;
      attempt_at = std::max(t, ref_time + gamma);
    }
  };

  const auto all_done = [&]() {
    if (!epoch_mode) return false;
    for (const AgeTracker& tr : tracker)
      if (tr.retained < retained_target) return false;
    return true;
  };

  while (!all_done()) {
    NextEvent ev{next_energy, 0};
    for (std::size_t j = 0; j < n; ++j)
      if (next_data[j] < ev.time) ev = {next_data[j], j + 1};
    if (attempt_at && *attempt_at < ev.time) ev = {*attempt_at, n + 1};

    if (!epoch_mode && ev.time > *config.horizon) {
      now = *config.horizon;
      break;
    }
    now = ev.time;

    if (ev.kind == 0) {  // energy arrival
      if (sensor.battery == 1) {
        ++report.energy_dropped;
      } else {
        sensor.battery = 1;
        arm_attempt(now);
      }
      next_energy = now + energy_rng.exponential(p.lambda_e);
    } else if (ev.kind <= n) {  // data arrival
      const std::size_t j = ev.kind - 1;
      if (j == max_age_source()) {
        sensor.buffer_source = j + 1;
        sensor.buffer_timestamp = now;
        arm_attempt(now);
      }
      next_data[j] = now + data_rng[j].exponential(p.lambda_d[j]);
    } else {  // transmission attempt
      const int battery_before = sensor.battery;
      const bool buffer_nonempty = sensor.buffer_source != 0;
      require(battery_before == 1 && buffer_nonempty, ErrorCode::InvalidConfig,
              "internal: attempt without both resources");
      const std::size_t j = sensor.buffer_source - 1;
      require(j == max_age_source(), ErrorCode::InvalidConfig,
              "internal: buffered packet is not the max-age source");
      const double gen = sensor.buffer_timestamp;
      sensor.battery = 0;
      sensor.buffer_source = 0;
      sensor.gate_open_time.reset();
      attempt_at.reset();
      ++attempts_in_service;
      const bool erased = erasure_rng.bernoulli(p.q);

      if (config.record_attempts)
        report.attempt_log.push_back(AttemptRecord{now, static_cast<std::uint32_t>(j + 1),
                                                   !erased, battery_before, buffer_nonempty,
                                                   now - ref_time});

      if (!erased) {
        // A success is where some age curve resets: extend every source's
        // integral up to now with one exact trapezoid piece.
        for (std::size_t k = 0; k < n; ++k) {
          AgeTracker& tr = tracker[k];
          tr.age_integral += (now - last_accum) *
                             ((last_accum - tr.last_update_gen) + (now - tr.last_update_gen)) *
                             0.5;
        }
        last_accum = now;

        AgeTracker& tr = tracker[j];
        const double length = now - tr.epoch_start;
        const double area = tr.age_integral - tr.epoch_start_integral;
        const double delivered_age = now - gen;
        const std::uint64_t index = tr.completed;
        ++tr.completed;
        if (index >= config.warmup_epochs &&
            (!epoch_mode || tr.retained < retained_target)) {
          ++tr.retained;
          series[j].area.push_back(area);
          series[j].length.push_back(length);
          report.attempts_total += attempts_in_service;
          if (config.record_delta) report.delta_samples[j].push_back(delivered_age);
          if (config.record_epochs)
            report.epoch_log.push_back(EpochRecord{static_cast<std::uint32_t>(j + 1),
                                                   tr.start_age, length, area,
                                                   attempts_in_service});
        }
        tr.last_update_gen = gen;
        tr.epoch_start = now;
        tr.epoch_start_integral = tr.age_integral;
        tr.start_age = delivered_age;
        attempts_in_service = 0;
      }
      ref_time = now;
    }
  }

  for (std::size_t j = 0; j < n; ++j)
    require(!series[j].area.empty(), ErrorCode::NonConvergence,
            "source " + std::to_string(j + 1) + " completed no post-warmup epochs");

  report.sim_horizon = now;
  detail::finalize_stats(report, series, config.batch_count);
  return report;
}

}  // namespace aoi
