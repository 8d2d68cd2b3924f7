#include "aoi/compare.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/analytic.hpp"
#include "aoi/optimize.hpp"
#include "aoi/rng.hpp"
#include "aoi/sim.hpp"
#include "parallel_internal.hpp"

namespace aoi {
namespace {

std::string label_for(const SystemParams& params, double gamma, const char* tag) {
  std::ostringstream os;
  os << "n=" << params.source_count() << " q=" << params.q << " gamma=" << tag << "(" << gamma
     << ")";
  return os.str();
}

std::vector<double> rates_for(std::size_t n) {
  if (n == 1) return {10.0};
  if (n == 2) return {1.0, 10.0};
  return {1.0, 10.0, 1.0, 10.0};
}

}  // namespace

std::vector<ComparePoint> default_compare_grid() {
  constexpr double kLambdaE = 0.1;
  std::vector<ComparePoint> points;
  for (double q : {0.0, 0.2, 0.5}) {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
      const SystemParams params = SystemParams::validated(kLambdaE, rates_for(n), q);
      const double star = optimize_threshold(params).gamma_star;
      points.push_back({params, ThresholdPolicy{star}, label_for(params, star, "star")});
    }
  }
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
    const SystemParams params = SystemParams::validated(kLambdaE, rates_for(n), 0.2);
    points.push_back({params, ThresholdPolicy{0.0}, label_for(params, 0.0, "zero")});
  }
  return points;
}

CompareReport run_compare(std::span<const ComparePoint> points, std::uint64_t epochs,
                          std::uint64_t seed, std::uint64_t warmup, std::size_t batches,
                          double perturb_analytic, Exec exec) {
  CompareReport report;
  report.rows.resize(points.size());
  detail::for_each_index(points.size(), exec, [&](std::size_t i) {
    const ComparePoint& pt = points[i];
    SimConfig config;
    config.params = pt.params;
    config.gamma = pt.gamma;
    config.seed = stream_seed(seed, stream::kPoint, i);
    config.epochs = epochs;
    config.warmup_epochs = warmup;
    config.batch_count = batches;
    config.record_delta = false;
    const SimReport sim = run_event_sim(config);

    CompareRow row;
    row.point = pt;
    row.analytic = maf_aoi(pt.params, pt.gamma).value + perturb_analytic;
    row.simulated = sim.collective_avg_aoi;
    row.std_error = sim.stderr_aoi;
    const double diff = row.simulated - row.analytic;
    if (row.std_error > 0.0) {
      row.z = diff / row.std_error;
    } else {
      row.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.rows[i] = row;
  });
  for (const CompareRow& row : report.rows)
    report.max_abs_z = std::max(report.max_abs_z, std::abs(row.z));
  return report;
}

}  // namespace aoi
