#pragma once

#include <cstddef>
#include <vector>

#include "aoi/error.hpp"

namespace aoi {

// Exogenous model constants: energy arrival rate, per-source data arrival
// rates, and the channel erasure probability. The number of sources is the
// length of lambda_d. Instances are immutable after validation and safe to
// share across threads.
struct SystemParams {
  double lambda_e = 0.0;
  std::vector<double> lambda_d;
  double q = 0.0;

  std::size_t source_count() const { return lambda_d.size(); }
  bool single_source() const { return lambda_d.size() == 1; }

  // Throws NonPositiveRate, ErasureOutOfRange, or EmptySourceList.
  // q = 1 is rejected: no attempt ever succeeds and the average age diverges.
  static SystemParams validated(double lambda_e, std::vector<double> lambda_d, double q);

  // Single-source restriction keeping lambda_e and q, with source j's rate.
  SystemParams source(std::size_t j) const;
};

// Scalar waiting threshold applied to every transmission attempt.
// gamma = 0 is the zero-wait policy.
struct ThresholdPolicy {
  double gamma = 0.0;

  static ThresholdPolicy validated(double gamma);
};

}  // namespace aoi
