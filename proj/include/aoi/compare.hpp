#pragma once

// Analytic-vs-simulation verification harness: run the event-driven simulator
// on a grid of parameter points and report the z-score of each simulated
// collective AoI against the closed form.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aoi/params.hpp"
#include "aoi/mc.hpp"

namespace aoi {

struct ComparePoint {
  SystemParams params;
  ThresholdPolicy gamma;
  std::string label;
};

struct CompareRow {
  ComparePoint point;
  double analytic = 0.0;
  double simulated = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  double max_abs_z = 0.0;
};

// The default verification grid: 12 points spanning N in {1,2,4}, q in
// {0, 0.2, 0.5}, gamma in {0, gamma_star}, lambda_e = 0.1, per-source data
// rates from {1, 10}. gamma_star is resolved with the optimizer per point.
std::vector<ComparePoint> default_compare_grid();

// Runs one event simulation per point (epoch stop rule, per-point derived
// seeds). perturb_analytic shifts every analytic value by that amount; it
// exists so tests can confirm the harness actually fails when the closed
// form is wrong.
CompareReport run_compare(std::span<const ComparePoint> points, std::uint64_t epochs,
                          std::uint64_t seed, std::uint64_t warmup, std::size_t batches,
                          double perturb_analytic = 0.0, Exec exec = Exec::Parallel);

}  // namespace aoi
