// Subcommands: eval, simulate, optimize, sweep, compare. Every run writes its
// outputs plus a manifest (written last; its presence signals completion).
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 non-convergence.

#include "aoi/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoi/analytic.hpp"
#include "aoi/compare.hpp"
#include "aoi/io.hpp"
#include "aoi/optimize.hpp"
#include "aoi/sim.hpp"
#include "aoi/version.hpp"

namespace aoi {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct ParamOpts {
  double lambda_e = 0.1;
  std::string lambda_d = "10";
  double q = 0.0;
  double gamma = 0.0;
  std::size_t n = 0;  // symmetric shortcut
};

std::vector<double> parse_rate_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    require(end == item.c_str() + item.size() && !item.empty(), ErrorCode::InvalidConfig,
            flag + ": could not parse '" + item + "'");
    values.push_back(v);
  }
  require(!values.empty(), ErrorCode::InvalidConfig, flag + ": empty list");
  return values;
}

SystemParams build_params(const ParamOpts& opts) {
  std::vector<double> rates = parse_rate_list(opts.lambda_d, "--lambda-d");
  if (opts.n > 0) {
    require(rates.size() == 1, ErrorCode::InvalidConfig,
            "--n expects a scalar --lambda-d to replicate");
    rates.assign(opts.n, rates[0]);
  }
  return SystemParams::validated(opts.lambda_e, std::move(rates), opts.q);
}

std::string joined_rates(const SystemParams& params) {
  std::string out;
  for (std::size_t j = 0; j < params.lambda_d.size(); ++j) {
    if (j) out += ';';
    out += format_number(params.lambda_d[j]);
  }
  return out;
}

void add_param_options(CLI::App* cmd, ParamOpts& opts, bool with_gamma) {
  cmd->add_option("--lambda-e,--lambda_e", opts.lambda_e, "Energy arrival rate")
      ->capture_default_str();
  cmd->add_option("--lambda-d,--lambda_d", opts.lambda_d,
                  "Data arrival rate(s), comma-separated, one per source")
      ->capture_default_str();
  cmd->add_option("--q", opts.q, "Erasure probability in [0,1)")->capture_default_str();
  if (with_gamma)
    cmd->add_option("--gamma", opts.gamma, "Waiting threshold (time units)")
        ->capture_default_str();
  cmd->add_option("--n", opts.n, "Symmetric source count; replicates a scalar --lambda-d");
  cmd->set_config("--config", "",
                  "Flat key=value file mirroring the flags (underscore names); "
                  "flags given on the command line win");
}

// Tracks output files for the manifest and stamps the duration.
struct Run {
  std::string command;
  fs::path dir;
  Clock::time_point start = Clock::now();
  RunManifest manifest;

  Run(std::string cmd, const std::string& out_dir) : command(std::move(cmd)), dir(out_dir) {
    fs::create_directories(dir);
    manifest.command = command;
    manifest.add("version", kVersion);
  }

  std::ofstream open(const std::string& name) {
    const fs::path path = dir / name;
    manifest.outputs.push_back(path.string());
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::InvalidConfig, "cannot write " + path.string());
    return out;
  }

  void note_output(const std::string& path) { manifest.outputs.push_back(path); }

  void finish() {
    manifest.duration_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    manifest.write((dir / (command + ".manifest")).string());
  }
};

void add_params_to_manifest(Run& run, const SystemParams& params, double gamma) {
  run.manifest.add("lambda_e", format_number(params.lambda_e));
  run.manifest.add("lambda_d", joined_rates(params));
  run.manifest.add("q", format_number(params.q));
  run.manifest.add("n", std::to_string(params.source_count()));
  run.manifest.add("gamma", format_number(gamma));
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const ParamOpts& opts, const std::string& out_dir, std::ostream& out) {
  const SystemParams params = build_params(opts);
  const ThresholdPolicy policy = ThresholdPolicy::validated(opts.gamma);
  const AoiValue value = maf_aoi(params, policy);

  Run run("eval", out_dir);
  add_params_to_manifest(run, params, policy.gamma);
  auto csv_out = run.open("eval.csv");
  CsvWriter csv(csv_out);
  csv.header({"lambda_e", "lambda_d", "q", "n", "gamma", "aoi", "start_age_term",
              "second_order_term"});
  csv.row({format_number(params.lambda_e), joined_rates(params), format_number(params.q),
           std::to_string(params.source_count()), format_number(policy.gamma),
           format_number(value.value), format_number(value.start_age_term),
           format_number(value.second_order_term)});
  csv_out.close();
  run.finish();

  out << "collective average aoi = " << format_number(value.value) << "\n";
  out << "  start-age term       = " << format_number(value.start_age_term) << "\n";
  out << "  second-order term    = " << format_number(value.second_order_term) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimOpts {
  std::uint64_t seed = 1;
  std::uint64_t epochs = 0;
  double horizon = 0.0;
  std::uint64_t warmup = 100;
  std::size_t batches = 30;
  bool epoch_mode = false;
  bool serial = false;
  std::string dump_epochs;
};

SimConfig build_sim_config(const ParamOpts& popts, const SimOpts& sopts) {
  SimConfig config;
  config.params = build_params(popts);
  config.gamma = ThresholdPolicy::validated(popts.gamma);
  config.seed = sopts.seed;
  require(!(sopts.epochs > 0 && sopts.horizon > 0.0), ErrorCode::InvalidConfig,
          "choose one of --epochs or --horizon");
  if (sopts.horizon > 0.0)
    config.horizon = sopts.horizon;
  else
    config.epochs = sopts.epochs > 0 ? sopts.epochs : 10000;
  config.warmup_epochs = sopts.warmup;
  config.batch_count = sopts.batches;
  config.exec = sopts.serial ? Exec::Serial : Exec::Parallel;
  return config;
}

int cmd_simulate(const ParamOpts& popts, const SimOpts& sopts, const std::string& out_dir,
                 std::ostream& out) {
  SimConfig config = build_sim_config(popts, sopts);
  config.record_epochs = !sopts.dump_epochs.empty();
  const SimReport report =
      sopts.epoch_mode ? run_epoch_sim(config) : run_event_sim(config);

  Run run("simulate", out_dir);
  add_params_to_manifest(run, config.params, config.gamma.gamma);
  run.manifest.add("seed", std::to_string(config.seed));
  run.manifest.add("mode", sopts.epoch_mode ? "epoch" : "event");

  auto csv_out = run.open("simulate.csv");
  CsvWriter csv(csv_out);
  csv.header({"source", "lambda_d", "avg_aoi", "epochs", "mean_delta", "collective_avg_aoi",
              "stderr_aoi", "attempts_total", "seed", "sim_horizon"});
  for (std::size_t j = 0; j < config.params.source_count(); ++j) {
    double mean_delta = 0.0;
    if (!report.delta_samples.empty() && !report.delta_samples[j].empty()) {
      const auto& d = report.delta_samples[j];
      mean_delta = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    }
    csv.row({std::to_string(j + 1), format_number(config.params.lambda_d[j]),
             format_number(report.per_source_avg_aoi[j]),
             std::to_string(report.epochs_completed[j]), format_number(mean_delta),
             format_number(report.collective_avg_aoi), format_number(report.stderr_aoi),
             std::to_string(report.attempts_total), std::to_string(report.seed),
             format_number(report.sim_horizon)});
  }
  csv_out.close();

  if (!sopts.dump_epochs.empty()) {
    std::ofstream log(sopts.dump_epochs, std::ios::binary);
    require(log.good(), ErrorCode::InvalidConfig, "cannot write " + sopts.dump_epochs);
    write_epoch_log(log, report.epoch_log);
    run.note_output(sopts.dump_epochs);
  }
  run.finish();

  out << "collective average aoi = " << format_number(report.collective_avg_aoi) << " +/- "
      << format_number(report.stderr_aoi) << " (batch means)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// optimize

int cmd_optimize(const ParamOpts& opts, const std::string& out_dir, std::ostream& out) {
  const SystemParams params = build_params(opts);
  const OptResult res = optimize_threshold(params);
  const double gain = std::max(0.0, (1.0 - res.aoi_star / res.aoi_zero) * 100.0);

  Run run("optimize", out_dir);
  add_params_to_manifest(run, params, 0.0);
  auto csv_out = run.open("optimize.csv");
  CsvWriter csv(csv_out);
  csv.header({"lambda_e", "lambda_d", "q", "n", "gamma_star", "aoi_star", "aoi_zero",
              "gain_percent", "evaluations", "bracket_lo", "bracket_hi"});
  csv.row({format_number(params.lambda_e), joined_rates(params), format_number(params.q),
           std::to_string(params.source_count()), format_number(res.gamma_star),
           format_number(res.aoi_star), format_number(res.aoi_zero), format_number(gain),
           std::to_string(res.evaluations), format_number(res.bracket_lo),
           format_number(res.bracket_hi)});
  csv_out.close();
  run.finish();

  out << "gamma_star = " << format_number(res.gamma_star) << "\n";
  out << "aoi(gamma_star) = " << format_number(res.aoi_star) << ", aoi(0) = "
      << format_number(res.aoi_zero) << ", gain = " << format_number(gain) << "%\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

constexpr double kFigLambdaE = 0.1;

std::vector<double> figure_q_grid() {
  std::vector<double> q;
  for (int i = 0; i <= 18; ++i) q.push_back(0.05 * i);
  return q;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out);
  csv.header({"lambda_e", "lambda_d", "q", "n", "gamma_star", "aoi_at_star", "aoi_at_zero",
              "gain_percent"});
  for (const SweepRow& row : rows) {
    csv.row({format_number(row.params.lambda_e), joined_rates(row.params),
             format_number(row.params.q), std::to_string(row.params.source_count()),
             format_number(row.gamma_star), format_number(row.aoi_at_star),
             format_number(row.aoi_at_zero), format_number(row.gain_percent)});
  }
}

int cmd_sweep(const ParamOpts& popts, const std::string& figure, const std::string& q_list,
              const std::string& out_dir, bool serial, std::ostream& out) {
  const Exec exec = serial ? Exec::Serial : Exec::Parallel;
  Run run("sweep", out_dir);
  run.manifest.add("figure", figure.empty() ? "custom" : figure);

  std::vector<SweepRow> all_rows;
  std::vector<SvgSeries> chart;
  std::string csv_name, svg_name, title, x_label, y_label;

  if (figure == "fig3" || figure == "fig4") {
    const bool gain_plot = figure == "fig4";
    const std::vector<double> q = figure_q_grid();
    for (double ld : {0.1, 1.0, 10.0}) {
      const SystemParams base = SystemParams::validated(kFigLambdaE, {ld}, 0.0);
      const std::vector<SweepRow> rows = sweep_q(base, q, exec);
      SvgSeries series;
      series.label = "lambda_d = " + format_number(ld);
      for (const SweepRow& row : rows) {
        series.x.push_back(row.params.q);
        series.y.push_back(gain_plot ? row.gain_percent : row.gamma_star);
      }
      chart.push_back(std::move(series));
      all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    }
    csv_name = figure + ".csv";
    svg_name = figure + ".svg";
    title = gain_plot ? "Percentage gain of optimal waiting vs erasure probability"
                      : "Optimal threshold vs erasure probability";
    x_label = "erasure probability q";
    y_label = gain_plot ? "gain %" : "gamma*";
  } else if (figure == "fig5") {
    const std::vector<double> q = {0.0, 0.1, 0.3, 0.5};
    std::vector<std::size_t> n(10);
    std::iota(n.begin(), n.end(), 1);
    all_rows = sweep_n(kFigLambdaE, 10.0, q, n, exec);
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      SvgSeries series;
      series.label = "q = " + format_number(q[qi]);
      for (std::size_t ni = 0; ni < n.size(); ++ni) {
        const SweepRow& row = all_rows[qi * n.size() + ni];
        series.x.push_back(static_cast<double>(row.params.source_count()));
        series.y.push_back(row.gamma_star);
      }
      chart.push_back(std::move(series));
    }
    csv_name = "fig5.csv";
    svg_name = "fig5.svg";
    title = "Optimal threshold vs number of sources";
    x_label = "sources N";
    y_label = "gamma*";
  } else if (figure.empty()) {
    require(!q_list.empty(), ErrorCode::InvalidConfig,
            "custom sweep needs --q-list (or pick --figure fig3|fig4|fig5)");
    const std::vector<double> q = parse_rate_list(q_list, "--q-list");
    ParamOpts base_opts = popts;
    base_opts.q = 0.0;
    const SystemParams base = build_params(base_opts);
    all_rows = sweep_q(base, q, exec);
    SvgSeries series;
    series.label = "lambda_d = " + joined_rates(base);
    for (const SweepRow& row : all_rows) {
      series.x.push_back(row.params.q);
      series.y.push_back(row.gamma_star);
    }
    chart.push_back(std::move(series));
    csv_name = "sweep.csv";
    svg_name = "sweep.svg";
    title = "Optimal threshold vs erasure probability";
    x_label = "erasure probability q";
    y_label = "gamma*";
  } else {
    fail(ErrorCode::InvalidConfig, "--figure must be fig3, fig4, or fig5");
  }

  auto csv_out = run.open(csv_name);
  write_sweep_csv(csv_out, all_rows);
  csv_out.close();
  auto svg_out = run.open(svg_name);
  write_svg_chart(svg_out, title, x_label, y_label, chart);
  svg_out.close();
  run.finish();

  out << "wrote " << all_rows.size() << " sweep rows to " << (run.dir / csv_name).string()
      << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  std::uint64_t epochs = 100000;
  std::uint64_t seed = 1;
  std::uint64_t warmup = 100;
  std::size_t batches = 30;
  double perturb = 0.0;
  std::string q_list;
  bool serial = false;
};

int cmd_compare(const ParamOpts& popts, const CompareOpts& copts, const std::string& out_dir,
                std::ostream& out) {
  std::vector<ComparePoint> points;
  if (copts.q_list.empty()) {
    points = default_compare_grid();
  } else {
    for (double q : parse_rate_list(copts.q_list, "--q-list")) {
      ParamOpts at_q = popts;
      at_q.q = q;
      const SystemParams params = build_params(at_q);
      points.push_back({params, ThresholdPolicy::validated(popts.gamma),
                        "n=" + std::to_string(params.source_count()) +
                            " q=" + format_number(q)});
    }
  }

  const CompareReport report =
      run_compare(points, copts.epochs, copts.seed, copts.warmup, copts.batches, copts.perturb,
                  copts.serial ? Exec::Serial : Exec::Parallel);

  Run run("compare", out_dir);
  run.manifest.add("epochs", std::to_string(copts.epochs));
  run.manifest.add("seed", std::to_string(copts.seed));
  run.manifest.add("points", std::to_string(points.size()));
  auto csv_out = run.open("compare.csv");
  CsvWriter csv(csv_out);
  csv.header({"point", "n", "lambda_e", "lambda_d", "q", "gamma", "analytic", "simulated",
              "stderr", "z"});
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const CompareRow& row = report.rows[i];
    csv.row({std::to_string(i + 1), std::to_string(row.point.params.source_count()),
             format_number(row.point.params.lambda_e), joined_rates(row.point.params),
             format_number(row.point.params.q), format_number(row.point.gamma.gamma),
             format_number(row.analytic), format_number(row.simulated),
             format_number(row.std_error), format_number(row.z)});
  }
  csv_out.close();
  run.manifest.add("max_abs_z", format_number(report.max_abs_z));
  run.finish();

  const bool ok = report.max_abs_z <= 4.0;
  out << "max |z| = " << format_number(report.max_abs_z) << " over " << report.rows.size()
      << " points (threshold 4): " << (ok ? "OK" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average age-of-information toolkit: closed-form evaluation, event-driven "
               "simulation, threshold optimization, and analytic-vs-simulation verification "
               "for a shared energy-harvesting sensor over an erasure channel."};
  app.name("aoikit");
  app.set_version_flag("--version", std::string("aoikit ") + kVersion);
  app.require_subcommand(1);

  ParamOpts eval_params;
  std::string eval_dir = ".";
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate the collective average AoI");
  add_param_options(eval_cmd, eval_params, true);
  eval_cmd->add_option("--out-dir,--out_dir", eval_dir, "Output directory");

  ParamOpts sim_params;
  SimOpts sim_opts;
  std::string sim_dir = ".";
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run the Monte Carlo simulator");
  add_param_options(sim_cmd, sim_params, true);
  sim_cmd->add_option("--seed", sim_opts.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--epochs", sim_opts.epochs,
                      "Post-warmup epochs per source (default 10000)");
  sim_cmd->add_option("--horizon", sim_opts.horizon, "Simulated-time stop rule");
  sim_cmd->add_option("--warmup", sim_opts.warmup, "Warmup epochs discarded per source")
      ->capture_default_str();
  sim_cmd->add_option("--batches", sim_opts.batches, "Batch count for error bars")
      ->capture_default_str();
  sim_cmd->add_flag("--epoch-mode,--epoch_mode", sim_opts.epoch_mode,
                    "Use the renewal-level single-source simulator");
  sim_cmd->add_flag("--serial", sim_opts.serial, "Force the serial reference path");
  sim_cmd->add_option("--dump-epochs,--dump_epochs", sim_opts.dump_epochs,
                      "Write the per-epoch log to this path");
  sim_cmd->add_option("--out-dir,--out_dir", sim_dir, "Output directory");

  ParamOpts opt_params;
  std::string opt_dir = ".";
  CLI::App* opt_cmd = app.add_subcommand("optimize", "Find the AoI-minimizing threshold");
  add_param_options(opt_cmd, opt_params, false);
  opt_cmd->add_option("--out-dir,--out_dir", opt_dir, "Output directory");

  ParamOpts sweep_params;
  std::string sweep_figure, sweep_q_list, sweep_dir = ".";
  bool sweep_serial = false;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Reproduce the figure sweeps or run a custom q sweep");
  add_param_options(sweep_cmd, sweep_params, false);
  sweep_cmd->add_option("--figure", sweep_figure, "fig3 | fig4 | fig5");
  sweep_cmd->add_option("--q-list,--q_list", sweep_q_list, "Custom sweep: comma-separated q");
  sweep_cmd->add_flag("--serial", sweep_serial, "Force the serial reference path");
  sweep_cmd->add_option("--out-dir,--out_dir", sweep_dir, "Output directory");

  ParamOpts compare_params;
  CompareOpts compare_opts;
  std::string compare_dir = ".";
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Verify the closed forms against the event-driven simulator");
  add_param_options(compare_cmd, compare_params, true);
  compare_cmd->add_option("--epochs", compare_opts.epochs, "Epochs per source per point")
      ->capture_default_str();
  compare_cmd->add_option("--seed", compare_opts.seed, "Master seed")->capture_default_str();
  compare_cmd->add_option("--warmup", compare_opts.warmup, "Warmup epochs per source")
      ->capture_default_str();
  compare_cmd->add_option("--batches", compare_opts.batches, "Batch count for error bars")
      ->capture_default_str();
  compare_cmd->add_option("--q-list,--q_list", compare_opts.q_list,
                          "Custom grid: comma-separated q (default: built-in 12-point grid)");
  compare_cmd->add_option("--perturb", compare_opts.perturb,
                          "Testing hook: shift every analytic value by this amount");
  compare_cmd->add_flag("--serial", compare_opts.serial, "Force the serial reference path");
  compare_cmd->add_option("--out-dir,--out_dir", compare_dir, "Output directory");

  std::vector<const char*> argv;
  argv.push_back("aoikit");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval_params, eval_dir, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_params, sim_opts, sim_dir, out);
    if (opt_cmd->parsed()) return cmd_optimize(opt_params, opt_dir, out);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_params, sweep_figure, sweep_q_list, sweep_dir, sweep_serial, out);
    if (compare_cmd->parsed()) return cmd_compare(compare_params, compare_opts, compare_dir, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NonConvergence ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace aoi
