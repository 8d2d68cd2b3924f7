#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "aoi/io.hpp"
#include "aoi/sim.hpp"
#include "sim_internal.hpp"

namespace aoi {

void SimConfig::validate() const {
  SystemParams::validated(params.lambda_e, params.lambda_d, params.q);
  ThresholdPolicy::validated(gamma.gamma);
  require(epochs.has_value() != horizon.has_value(), ErrorCode::InvalidConfig,
          "exactly one stop rule: epochs or horizon");
  if (epochs) require(*epochs >= 1, ErrorCode::InvalidConfig, "epochs must be >= 1");
  if (horizon)
    require(std::isfinite(*horizon) && *horizon > 0.0, ErrorCode::InvalidConfig,
            "horizon must be > 0");
  require(batch_count >= 2, ErrorCode::InvalidConfig, "batch_count must be >= 2");
}

double empirical_cdf(std::span<const double> samples, double delta) {
  require(!samples.empty(), ErrorCode::EmptySamples, "empirical_cdf needs samples");
  std::size_t hits = 0;
  for (double s : samples)
    if (s <= delta) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

std::string epoch_log_header() { return "source,delta_start,length,area,attempts"; }

void write_epoch_log(std::ostream& out, std::span<const EpochRecord> log) {
  out << epoch_log_header() << "\n";
  for (const EpochRecord& r : log) {
    out << r.source << ',' << format_number(r.start_age) << ',' << format_number(r.length) << ','
        << format_number(r.area) << ',' << r.attempts << "\n";
  }
}

namespace detail {

void finalize_stats(SimReport& report, const std::vector<EpochSeries>& series,
                    std::size_t batch_count) {
  const std::size_t n = series.size();
  report.per_source_avg_aoi.assign(n, 0.0);
  report.epochs_completed.assign(n, 0);

  std::size_t min_epochs = static_cast<std::size_t>(-1);
  double collective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& s = series[j];
    report.epochs_completed[j] = s.area.size();
    min_epochs = std::min(min_epochs, s.area.size());
    double area = 0.0, length = 0.0;
    for (double a : s.area) area += a;
    for (double l : s.length) length += l;
    report.per_source_avg_aoi[j] = area / length;
    collective += report.per_source_avg_aoi[j];
  }
  report.collective_avg_aoi = collective / static_cast<double>(n);

  const std::size_t batches = std::min(batch_count, min_epochs);
  if (batches < 2) {
    report.stderr_aoi = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  std::vector<double> batch_value(batches, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& s = series[j];
    const std::size_t count = s.area.size();
    for (std::size_t b = 0; b < batches; ++b) {
      const std::size_t lo = b * count / batches;
      const std::size_t hi = (b + 1) * count / batches;
      double area = 0.0, length = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        area += s.area[i];
        length += s.length[i];
      }
      batch_value[b] += area / length / static_cast<double>(n);
    }
  }
  double mean = 0.0;
  for (double v : batch_value) mean += v;
  mean /= static_cast<double>(batches);
  double var = 0.0;
  for (double v : batch_value) var += (v - mean) * (v - mean);
  var /= static_cast<double>(batches - 1);
  report.stderr_aoi = std::sqrt(var / static_cast<double>(batches));
}

}  // namespace detail
}  // namespace aoi
