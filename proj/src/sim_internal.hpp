#pragma once

#include <cstdint>
#include <vector>

#include "aoi/sim.hpp"

namespace aoi::detail {

// Retained per-epoch areas and lengths for one source, in epoch order.
struct EpochSeries {
  std::vector<double> area;
  std::vector<double> length;
};

// Fills per_source_avg_aoi, collective_avg_aoi, epochs_completed, and the
// batch-means stderr_aoi. The effective batch count is
// min(requested, smallest per-source epoch count).
void finalize_stats(SimReport& report, const std::vector<EpochSeries>& series,
                    std::size_t batch_count);

}  // namespace aoi::detail
