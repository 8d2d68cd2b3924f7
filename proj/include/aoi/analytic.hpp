#pragma once

// Closed-form evaluation of the threshold waiting policy: the starting-age
// CDF, waiting and epoch-length moments, the single-source long-term average
// AoI, and the multi-source maximum-age-first collective AoI.
//
// All functions are pure; callers may evaluate any number of them
// concurrently. Expressions are implemented term by term so each piece can be
// checked against its gamma = 0 and gamma -> inf limits. Exponentials are
// evaluated directly; for very large gamma they underflow gracefully to the
// correct limiting values.

#include <cstddef>

#include "aoi/params.hpp"

namespace aoi {

// Moment bundle for one source's epochs. mean_epoch = mean_wait / (1 - q) and
// mean_epoch_sq = mean_wait_sq / (1 - q) + 2 q mean_wait^2 / (1 - q)^2, the
// geometric random-sum identities.
struct EpochMoments {
  double mean_wait = 0.0;
  double mean_wait_sq = 0.0;
  double mean_epoch = 0.0;
  double mean_epoch_sq = 0.0;
  double mean_start_age = 0.0;
};

// Long-term average AoI with its two additive parts exposed:
// value = start_age_term + second_order_term.
struct AoiValue {
  double value = 0.0;
  double start_age_term = 0.0;
  double second_order_term = 0.0;
};

// CDF of an epoch's starting age Delta under a gamma-threshold policy, for a
// single source. Right-continuous; delta = 0 returns the atom mass (the
// probability the final attempt fires exactly at a data arrival).
// Throws NegativeDelta for delta < 0 and RequiresSingleSource for N > 1.
double starting_age_cdf(const SystemParams& params, ThresholdPolicy policy, double delta);

// E[Delta], the mean starting age of an epoch (single source).
double mean_start_age(const SystemParams& params, ThresholdPolicy policy);

// First and second moments of one attempt's waiting time max(gamma, e, d),
// where e and d are the energy and data inter-arrival gaps (single source).
double mean_wait(const SystemParams& params, ThresholdPolicy policy);
double mean_wait_sq(const SystemParams& params, ThresholdPolicy policy);

// Wait moments composed with the geometric attempt count (single source).
EpochMoments epoch_moments(const SystemParams& params, ThresholdPolicy policy);

// Long-term average AoI of a single source:
// mean_start_age + mean_epoch_sq / (2 mean_epoch).
AoiValue single_source_aoi(const SystemParams& params, ThresholdPolicy policy);

// Collective long-term average AoI of N sources under maximum-age-first
// scheduling with a common threshold. For N = 1 this reduces to
// single_source_aoi.
AoiValue maf_aoi(const SystemParams& params, ThresholdPolicy policy);

// Collapsed form of maf_aoi when every source shares one data rate:
// E[Delta] + E[w^2]/(2 E[w]) + ((q + (N-1)/2)/(1-q)) E[w].
AoiValue symmetric_maf_aoi(double lambda_e, double lambda_d, std::size_t sources,
                           ThresholdPolicy policy, double q);

// Relative AoI improvement of the optimal threshold over zero-wait, in
// percent: (1 - AoI(gamma_star)/AoI(0)) * 100.
double percentage_gain(const SystemParams& params, double gamma_star);

}  // namespace aoi
