#pragma once

// Discrete-event Monte Carlo simulation of the full system: Poisson energy
// and data arrivals, unit battery, single-packet buffer with maximum-age-first
// admission, threshold waiting, and i.i.d. erasures with instant feedback.
// The event-driven simulator is the independent oracle for the closed forms;
// the renewal-level epoch simulator is the fast path for a single source.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aoi/mc.hpp"
#include "aoi/params.hpp"

namespace aoi {

// Sensor resource state. buffer_source == 0 means the buffer is empty;
// sources are 1-based here. gate_open_time is the earliest time both
// resources were simultaneously available since the last attempt.
struct SensorState {
  int battery = 0;
  std::size_t buffer_source = 0;
  double buffer_timestamp = 0.0;
  std::optional<double> gate_open_time;
};

// Per-source age bookkeeping: the generation time of the latest delivered
// packet, the running integral of the age curve, and the open epoch's start.
struct AgeTracker {
  double last_update_gen = 0.0;     // u_j
  double age_integral = 0.0;        // accumulated piecewise-linear area
  double epoch_start = 0.0;         // time of the previous successful delivery
  double epoch_start_integral = 0.0;
  double start_age = 0.0;           // age immediately after that delivery
  std::uint64_t completed = 0;      // epochs closed so far, warmup included
  std::uint64_t retained = 0;       // epochs contributing to statistics
};

// One completed epoch: starting age, length, area under the age curve, and
// the number of transmission attempts spent on this source's delivery.
struct EpochRecord {
  std::uint32_t source = 0;  // 1-based
  double start_age = 0.0;
  double length = 0.0;
  double area = 0.0;
  std::uint32_t attempts = 0;
};

// One transmission attempt, for causality and policy checks.
struct AttemptRecord {
  double time = 0.0;
  std::uint32_t source = 0;  // 1-based
  bool success = false;
  int battery_before = 0;
  bool buffer_nonempty = false;
  double gap_since_ref = 0.0;  // time since epoch start or previous attempt
};

struct SimConfig {
  SystemParams params;
  ThresholdPolicy gamma;
  std::uint64_t seed = 1;

  // Stop rule: exactly one of these. epochs counts retained (post-warmup)
  // epochs per source; horizon is a wall of simulated time.
  std::optional<std::uint64_t> epochs;
  std::optional<double> horizon;

  std::uint64_t warmup_epochs = 100;  // discarded per source
  std::size_t batch_count = 30;       // batch-means error bars

  bool record_delta = true;    // keep per-source starting-age samples
  bool record_epochs = false;  // keep the per-epoch log
  bool record_attempts = false;
  Exec exec = Exec::Parallel;  // epoch simulator only

  void validate() const;  // throws InvalidConfig
};

struct SimReport {
  std::vector<double> per_source_avg_aoi;
  double collective_avg_aoi = 0.0;
  std::vector<std::vector<double>> delta_samples;  // per source, epoch order
  std::vector<std::uint64_t> epochs_completed;     // retained epochs per source
  std::uint64_t attempts_total = 0;                // attempts within retained epochs
  double stderr_aoi = 0.0;  // batch-means standard error of the collective AoI
  std::uint64_t seed = 0;
  double sim_horizon = 0.0;        // total simulated time
  std::uint64_t energy_dropped = 0;  // arrivals lost to a full battery
  std::vector<EpochRecord> epoch_log;      // when record_epochs
  std::vector<AttemptRecord> attempt_log;  // when record_attempts
};

// Full event-driven simulation. Strictly sequential (one logical timeline).
// Throws InvalidConfig, and NonConvergence if a source finishes the run with
// zero retained epochs.
SimReport run_event_sim(const SimConfig& config);

// Renewal-level simulation for a single source: per attempt draw the two
// gaps, wait max(gamma, e, d), flip the erasure coin; on success sample the
// data stream across the final window for the delivered age. Statistically
// equivalent to run_event_sim at N = 1. Requires the epoch stop rule.
// Throws RequiresSingleSource.
SimReport run_epoch_sim(const SimConfig& config);

// Fraction of samples <= delta. Throws EmptySamples.
double empirical_cdf(std::span<const double> samples, double delta);

// Epoch-log dump: header line plus one delimited record per epoch.
std::string epoch_log_header();
void write_epoch_log(std::ostream& out, std::span<const EpochRecord> log);

}  // namespace aoi
