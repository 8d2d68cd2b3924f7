#pragma once

// Monte Carlo oracle for the starting-age distribution. Samples the physical
// final-attempt window directly, with no closed form involved, so it can
// cross-check starting_age_cdf independently.

#include <cstdint>

#include "aoi/params.hpp"

namespace aoi {

// Execution policy for the data-parallel kernels. Serial is the reference
// path; Parallel runs the same fixed chunking under OpenMP. Results are
// bit-identical across policies and thread counts.
enum class Exec { Serial, Parallel };

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// Unbiased estimate of P(Delta <= delta) for a single source: per sample,
// draw the energy gap e ~ Exp(lambda_e) and first data gap d ~ Exp(lambda_d),
// fire the attempt at T = max(gamma, e, d), walk the Poisson data stream
// across (d, T], and measure the delivered age T - (last arrival).
// Deterministic for fixed (seed, samples). Requires samples >= 10^4.
McEstimate starting_age_cdf_mc(const SystemParams& params, ThresholdPolicy policy, double delta,
                               std::uint64_t samples, std::uint64_t seed,
                               Exec exec = Exec::Parallel);

}  // namespace aoi
