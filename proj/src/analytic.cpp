#include "aoi/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace aoi {
namespace {

void require_single(const SystemParams& params) {
  require(params.single_source(), ErrorCode::RequiresSingleSource,
          "operation is defined for a single source");
}

double pos(double x) { return x > 0.0 ? x : 0.0; }

// Scalar-rate cores. le/ld are the energy and data rates of one source.

double cdf_core(double le, double ld, double gamma, double delta) {
  const double sum = le + ld;
  const double survive =
      std::exp(-ld * delta) *
      (1.0 - std::exp(-ld * pos(gamma - delta)) *
                 (1.0 - ld / sum * std::exp(-le * std::max(gamma, delta))));
  return 1.0 - survive;
}

double mean_start_age_core(double le, double ld, double gamma) {
  const double sum = le + ld;
  const double ed = std::exp(-ld * gamma);
  const double ee = std::exp(-le * gamma);
  const double es = std::exp(-sum * gamma);
  return (1.0 - ed) / ld - gamma * ed * (1.0 - ld / sum * ee) + ld / (sum * sum) * es;
}

double mean_wait_core(double le, double ld, double gamma) {
  const double sum = le + ld;
  const double ed = std::exp(-ld * gamma);
  const double ee = std::exp(-le * gamma);
  const double es = std::exp(-sum * gamma);
  double v = gamma * (1.0 - ed) * (1.0 - ee);
  v += (ld * gamma + 1.0) / ld * ed * (1.0 - ee);
  v += (le * gamma + 1.0) / le * ee * (1.0 - ed);
  v += ld * (le * sum * gamma + 2.0 * le + ld) / (le * sum * sum) * es;
  v += le * (ld * sum * gamma + 2.0 * ld + le) / (ld * sum * sum) * es;
  return v;
}

double mean_wait_sq_core(double le, double ld, double gamma) {
  const double sum = le + ld;
  const double ed = std::exp(-ld * gamma);
  const double ee = std::exp(-le * gamma);
  const double es = std::exp(-sum * gamma);
  double v = gamma * gamma * (1.0 - ed) * (1.0 - ee);
  v += (ld * ld * gamma * gamma + 2.0 * ld * gamma + 2.0) / (ld * ld) * ed * (1.0 - ee);
  v += (le * le * gamma * gamma + 2.0 * le * gamma + 2.0) / (le * le) * ee * (1.0 - ed);
  v += ld *
       (le * le * sum * sum * gamma * gamma + 2.0 * le * sum * (2.0 * le + ld) * gamma +
        6.0 * le * le + 6.0 * le * ld + 2.0 * ld * ld) /
       (le * le * sum * sum * sum) * es;
  v += le *
       (ld * ld * sum * sum * gamma * gamma + 2.0 * ld * sum * (2.0 * ld + le) * gamma +
        6.0 * ld * ld + 6.0 * le * ld + 2.0 * le * le) /
       (ld * ld * sum * sum * sum) * es;
  return v;
}

EpochMoments epoch_moments_core(double le, double ld, double gamma, double q) {
  EpochMoments m;
  m.mean_wait = mean_wait_core(le, ld, gamma);
  m.mean_wait_sq = mean_wait_sq_core(le, ld, gamma);
  const double success = 1.0 - q;
  m.mean_epoch = m.mean_wait / success;
  m.mean_epoch_sq =
      m.mean_wait_sq / success + 2.0 * q * m.mean_wait * m.mean_wait / (success * success);
  m.mean_start_age = mean_start_age_core(le, ld, gamma);
  return m;
}

}  // namespace

double starting_age_cdf(const SystemParams& params, ThresholdPolicy policy, double delta) {
  require_single(params);
  require(delta >= 0.0, ErrorCode::NegativeDelta, "delta must be >= 0");
  return cdf_core(params.lambda_e, params.lambda_d[0], policy.gamma, delta);
}

double mean_start_age(const SystemParams& params, ThresholdPolicy policy) {
  require_single(params);
  return mean_start_age_core(params.lambda_e, params.lambda_d[0], policy.gamma);
}

double mean_wait(const SystemParams& params, ThresholdPolicy policy) {
  require_single(params);
  return mean_wait_core(params.lambda_e, params.lambda_d[0], policy.gamma);
}

double mean_wait_sq(const SystemParams& params, ThresholdPolicy policy) {
  require_single(params);
  return mean_wait_sq_core(params.lambda_e, params.lambda_d[0], policy.gamma);
}

EpochMoments epoch_moments(const SystemParams& params, ThresholdPolicy policy) {
  require_single(params);
  return epoch_moments_core(params.lambda_e, params.lambda_d[0], policy.gamma, params.q);
}

AoiValue single_source_aoi(const SystemParams& params, ThresholdPolicy policy) {
  require_single(params);
  const EpochMoments m = epoch_moments(params, policy);
  AoiValue v;
  v.start_age_term = m.mean_start_age;
  v.second_order_term = m.mean_epoch_sq / (2.0 * m.mean_epoch);
  v.value = v.start_age_term + v.second_order_term;
  return v;
}

AoiValue maf_aoi(const SystemParams& params, ThresholdPolicy policy) {
  const std::size_t n = params.source_count();
  const double le = params.lambda_e;
  const double gamma = policy.gamma;
  const double q = params.q;

  double sum_age = 0.0;
  double sum_wait = 0.0;
  double sum_wait_sq = 0.0;
  std::vector<double> waits(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ld = params.lambda_d[j];
    sum_age += mean_start_age_core(le, ld, gamma);
    waits[j] = mean_wait_core(le, ld, gamma);
    sum_wait += waits[j];
    sum_wait_sq += mean_wait_sq_core(le, ld, gamma);
  }

  double sq_of_means = 0.0;
  for (std::size_t j = 0; j < n; ++j) sq_of_means += waits[j] * waits[j];
  double cross = 0.0;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b) cross += waits[a] * waits[b];

  AoiValue v;
  v.start_age_term = sum_age / static_cast<double>(n);
  v.second_order_term = sum_wait_sq / (2.0 * sum_wait) +
                        q * sq_of_means / ((1.0 - q) * sum_wait) +
                        cross / ((1.0 - q) * sum_wait);
  v.value = v.start_age_term + v.second_order_term;
  return v;
}

AoiValue symmetric_maf_aoi(double lambda_e, double lambda_d, std::size_t sources,
                           ThresholdPolicy policy, double q) {
  require(sources >= 1, ErrorCode::EmptySourceList, "sources must be >= 1");
  const SystemParams one = SystemParams::validated(lambda_e, {lambda_d}, q);
  const EpochMoments m = epoch_moments(one, policy);
  AoiValue v;
  v.start_age_term = m.mean_start_age;
  v.second_order_term =
      m.mean_wait_sq / (2.0 * m.mean_wait) +
      (q + (static_cast<double>(sources) - 1.0) / 2.0) / (1.0 - q) * m.mean_wait;
  v.value = v.start_age_term + v.second_order_term;
  return v;
}

double percentage_gain(const SystemParams& params, double gamma_star) {
  const double at_zero = maf_aoi(params, ThresholdPolicy{0.0}).value;
  const double at_star = maf_aoi(params, ThresholdPolicy::validated(gamma_star)).value;
  return pos((1.0 - at_star / at_zero) * 100.0);
}

}  // namespace aoi
