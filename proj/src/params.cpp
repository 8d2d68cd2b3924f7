#include "aoi/params.hpp"

#include <cmath>
#include <string>

namespace aoi {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::ErasureOutOfRange: return "ErasureOutOfRange";
    case ErrorCode::EmptySourceList: return "EmptySourceList";
    case ErrorCode::NegativeDelta: return "NegativeDelta";
    case ErrorCode::RequiresSingleSource: return "RequiresSingleSource";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegenerateObjective: return "DegenerateObjective";
  }
  return "Unknown";
}

SystemParams SystemParams::validated(double lambda_e, std::vector<double> lambda_d, double q) {
  require(!lambda_d.empty(), ErrorCode::EmptySourceList, "lambda_d must list at least one source");
  require(std::isfinite(lambda_e) && lambda_e > 0.0, ErrorCode::NonPositiveRate,
          "lambda_e must be > 0 (got " + std::to_string(lambda_e) + ")");
  for (std::size_t j = 0; j < lambda_d.size(); ++j) {
    require(std::isfinite(lambda_d[j]) && lambda_d[j] > 0.0, ErrorCode::NonPositiveRate,
            "lambda_d[" + std::to_string(j) + "] must be > 0 (got " +
                std::to_string(lambda_d[j]) + ")");
  }
  require(std::isfinite(q) && q >= 0.0 && q < 1.0, ErrorCode::ErasureOutOfRange,
          "q must be < 1 and >= 0 (got " + std::to_string(q) + ")");
  SystemParams p;
  p.lambda_e = lambda_e;
  p.lambda_d = std::move(lambda_d);
  p.q = q;
  return p;
}

SystemParams SystemParams::source(std::size_t j) const {
  require(j < lambda_d.size(), ErrorCode::InvalidConfig, "source index out of range");
  return validated(lambda_e, {lambda_d[j]}, q);
}

ThresholdPolicy ThresholdPolicy::validated(double gamma) {
  require(std::isfinite(gamma) && gamma >= 0.0, ErrorCode::InvalidConfig,
          "gamma must be >= 0 (got " + std::to_string(gamma) + ")");
  return ThresholdPolicy{gamma};
}

}  // namespace aoi
