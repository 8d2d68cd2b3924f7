#include "aoi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "parallel_internal.hpp"

namespace aoi {
namespace {

constexpr std::size_t kGridPoints = 512;
constexpr double kGammaTol = 1e-6;
constexpr double kZeroClamp = 1e-12;
constexpr int kMaxWidenRetries = 2;

struct Eval {
  const std::function<double(double)>& f;
  std::uint64_t count = 0;

  double operator()(double gamma) {
    ++count;
    const double v = f(gamma);
    require(std::isfinite(v), ErrorCode::DegenerateObjective,
            "objective is not finite at gamma = " + std::to_string(gamma));
    return v;
  }
};

}  // namespace

double default_gamma_max(const SystemParams& params) {
  const double min_data = *std::min_element(params.lambda_d.begin(), params.lambda_d.end());
  return 10.0 * (1.0 / params.lambda_e + 1.0 / min_data);
}

OptResult minimize_over_threshold(const std::function<double(double)>& aoi_of_gamma,
                                  double gamma_max) {
  require(std::isfinite(gamma_max) && gamma_max > 0.0, ErrorCode::InvalidConfig,
          "gamma_max must be > 0");
  Eval eval{aoi_of_gamma};

  // Coarse grid; widen the bracket if the objective is still falling near its
  // upper end (a minimum past the bracket would otherwise be missed).
  double hi = gamma_max;
  std::vector<double> values(kGridPoints + 1);
  std::size_t best = 0;
  for (int round = 0;; ++round) {
    const double step = hi / static_cast<double>(kGridPoints);
    best = 0;
    for (std::size_t i = 0; i <= kGridPoints; ++i) {
      values[i] = eval(static_cast<double>(i) * step);
      if (values[i] < values[best]) best = i;
    }
    const std::size_t decile = kGridPoints - kGridPoints / 10;
    const bool tail_rising = values[kGridPoints] >= values[decile] && best < decile;
    if (tail_rising || round >= kMaxWidenRetries) break;
    hi *= 4.0;
  }

  const double step = hi / static_cast<double>(kGridPoints);
  double a = (best == 0) ? 0.0 : static_cast<double>(best - 1) * step;
  double b = (best == kGridPoints) ? hi : static_cast<double>(best + 1) * step;

  // Golden-section refinement of the best cell.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > kGammaTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }

  OptResult res;
  res.bracket_lo = 0.0;
  res.bracket_hi = hi;
  res.aoi_zero = values[0];
  res.gamma_star = 0.5 * (a + b);
  res.aoi_star = eval(res.gamma_star);
  if (res.aoi_zero <= res.aoi_star + kZeroClamp) {
    res.gamma_star = 0.0;
    res.aoi_star = res.aoi_zero;
  }
  res.evaluations = eval.count;
  return res;
}

OptResult optimize_threshold(const SystemParams& params) {
  const auto objective = [&params](double gamma) {
    return maf_aoi(params, ThresholdPolicy{gamma}).value;
  };
  return minimize_over_threshold(objective, default_gamma_max(params));
}

namespace {

SweepRow row_from(const SystemParams& params, const OptResult& opt) {
  SweepRow row;
  row.params = params;
  row.gamma_star = opt.gamma_star;
  row.aoi_at_star = opt.aoi_star;
  row.aoi_at_zero = opt.aoi_zero;
  row.gain_percent = std::max(0.0, (1.0 - opt.aoi_star / opt.aoi_zero) * 100.0);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_q(const SystemParams& base, std::span<const double> q_values,
                              Exec exec) {
  std::vector<SweepRow> rows(q_values.size());
  detail::for_each_index(q_values.size(), exec, [&](std::size_t i) {
    const SystemParams params = SystemParams::validated(base.lambda_e, base.lambda_d, q_values[i]);
    rows[i] = row_from(params, optimize_threshold(params));
  });
  return rows;
}

std::vector<SweepRow> sweep_n(double lambda_e, double lambda_d, std::span<const double> q_values,
                              std::span<const std::size_t> n_values, Exec exec) {
  std::vector<SweepRow> rows(q_values.size() * n_values.size());
  detail::for_each_index(rows.size(), exec, [&](std::size_t i) {
    const double q = q_values[i / n_values.size()];
    const std::size_t n = n_values[i % n_values.size()];
    const auto objective = [&](double gamma) {
      return symmetric_maf_aoi(lambda_e, lambda_d, n, ThresholdPolicy{gamma}, q).value;
    };
    const SystemParams params =
        SystemParams::validated(lambda_e, std::vector<double>(n, lambda_d), q);
    rows[i] = row_from(params, minimize_over_threshold(objective, default_gamma_max(params)));
  });
  return rows;
}

}  // namespace aoi
