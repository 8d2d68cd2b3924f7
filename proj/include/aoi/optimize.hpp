#pragma once

// One-dimensional minimization of the average-AoI objective over the waiting
// threshold, and the parameter sweeps built on top of it.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aoi/analytic.hpp"
#include "aoi/mc.hpp"

namespace aoi {

struct OptResult {
  double gamma_star = 0.0;
  double aoi_star = 0.0;
  double aoi_zero = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::uint64_t evaluations = 0;
};

// One sweep record: the optimum and the zero-wait baseline at one point.
struct SweepRow {
  SystemParams params;
  double gamma_star = 0.0;
  double aoi_at_star = 0.0;
  double aoi_at_zero = 0.0;
  double gain_percent = 0.0;
};

// Search bracket heuristic: several mean inter-arrival times past which
// waiting is dominated.
double default_gamma_max(const SystemParams& params);

// Coarse grid (512 points) on [0, gamma_max], golden-section refinement of
// the best cell to 1e-6 absolute on gamma, then a zero-clamp: if waiting does
// not beat zero-wait, gamma_star = 0 exactly. If the objective is still
// decreasing in the last decile of the bracket the bracket widens x4 (up to
// twice). Throws DegenerateObjective on non-finite objective values.
OptResult minimize_over_threshold(const std::function<double(double)>& aoi_of_gamma,
                                  double gamma_max);

// Convenience wrapper minimizing maf_aoi for the given parameters.
OptResult optimize_threshold(const SystemParams& params);

// One row per q, base params with q substituted. Points are independent and
// evaluated concurrently under Exec::Parallel; row order follows input order.
std::vector<SweepRow> sweep_q(const SystemParams& base, std::span<const double> q_values,
                              Exec exec = Exec::Parallel);

// Symmetric-system sweep over the q x N grid (q outer, N inner), using the
// collapsed symmetric objective.
std::vector<SweepRow> sweep_n(double lambda_e, double lambda_d, std::span<const double> q_values,
                              std::span<const std::size_t> n_values, Exec exec = Exec::Parallel);

}  // namespace aoi
