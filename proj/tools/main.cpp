#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdbound/distributions.hpp"
#include "crowdbound/errors.hpp"
#include "crowdbound/influence.hpp"
#include "crowdbound/omega.hpp"
#include "crowdbound/pipeline.hpp"
#include "crowdbound/rscore.hpp"
#include "svg_heatmap.hpp"

namespace fs = std::filesystem;
using crowdbound::Centralization;
using crowdbound::DistributionSpec;
using crowdbound::Family;
using nlohmann::json;

namespace {

const double kLnTwo = std::log(2.0);
const double kOmegaDefault = 1.0 / 3.0;

const std::map<std::string, Family> kFamilies = {
    {"normal", Family::Normal},
    {"lognormal", Family::LogNormal},
    {"pareto", Family::Pareto},
    {"loglaplace", Family::LogLaplace},
};

const std::map<std::string, crowdbound::Loss> kLosses = {
    {"absolute", crowdbound::Loss::Absolute},
    {"squared", crowdbound::Loss::Squared},
};

unsigned sweep_threads() {
  // CROWDBOUND_THREADS caps sweep parallelism; 0 or unset means auto.
  if (const char* env = std::getenv("CROWDBOUND_THREADS")) {
    return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  return 0;
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw crowdbound::Error("cannot write " + tmp.string());
    }
    out << bytes;
    if (!out.flush()) {
      throw crowdbound::Error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::vector<double> read_values(const std::string& input) {
  std::vector<double> values;
  const auto parse_stream = [&values](std::istream& in) {
    double v;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
      throw crowdbound::Error("input contains a token that is not a number");
    }
  };
  if (input == "-") {
    parse_stream(std::cin);
  } else {
    std::ifstream in(input);
    if (!in) {
      throw crowdbound::Error("cannot open value file: " + input);
    }
    parse_stream(in);
  }
  return values;
}

struct DistFlags {
  std::string family = "lognormal";
  double p1 = kLnTwo;
  double p2 = 1.0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--family", family, "distribution family of the initial estimates")
        ->transform(CLI::IsMember(kFamilies, CLI::ignore_case))
        ->capture_default_str();
    cmd.add_option("--mu", p1,
                   "location-like parameter p1 (mean / log-mean; Pareto scale x_m; "
                   "log-Laplace location)")
        ->capture_default_str();
    cmd.add_option("--sigma", p2,
                   "shape-like parameter p2 > 0 (sd / log-sd; Pareto tail index; "
                   "log-Laplace scale)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  DistributionSpec spec() const { return {kFamilies.at(family), p1, p2}; }
};

struct SynthFlags {
  crowdbound::SynthConfig config;

  void attach(CLI::App& cmd) {
    cmd.add_option("--tasks", config.n_tasks, "number of estimation tasks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--groups", config.groups_per_task, "groups per task (alternating social)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--group-size", config.group_size, "agents per group")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--sigma-lo", config.sigma_lo, "lower end of the per-task dispersion range")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--sigma-hi", config.sigma_hi, "upper end of the per-task dispersion range")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--theta", config.theta, "true value shared by all tasks (positive)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--omega-social", config.omega_social,
                   "influence centralization during social revision, in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--seed", config.seed, "generator seed (64-bit)")->capture_default_str();
  }
};

void print_json(const json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crowdbound: when does centralized social influence improve collective estimates?\n"
      "Monte Carlo win probabilities, analytical lower bounds, phase-diagram sweeps, the\n"
      "heavy-tailedness feature R, and a trial-data regression pipeline."};
  app.require_subcommand(1);

  // ---------------------------------------------------------------- omega
  auto* omega_cmd = app.add_subcommand(
      "omega", "Monte Carlo estimate of the win probability plus its analytical lower bound");
  DistFlags omega_dist;
  omega_dist.attach(*omega_cmd);
  double theta = 2.0;
  std::size_t group_n = 50;
  double omega_value = kOmegaDefault;
  std::size_t reps = 20000;
  std::uint64_t seed = 1;
  omega_cmd->add_option("--theta", theta, "true value being estimated (positive)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  omega_cmd->add_option("--n", group_n, "number of agents per group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  omega_cmd->add_option("--omega", omega_value, "influence centralization in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  omega_cmd->add_option("--reps", reps, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  omega_cmd->add_option("--seed", seed, "stream seed (64-bit)")->capture_default_str();
  omega_cmd->callback([&] {
    const auto estimate = crowdbound::estimate_omega(omega_dist.spec(), theta, group_n,
                                                     Centralization(omega_value), reps, seed);
    const auto bound =
        crowdbound::lower_bound(omega_dist.spec(), theta, group_n, Centralization(omega_value));
    print_json({{"omega_n", estimate.value},
                {"std_error", estimate.std_error},
                {"lower_bound", bound.value},
                {"beta_star", bound.beta_star}});
  });

  // ---------------------------------------------------------------- bound
  auto* bound_cmd =
      app.add_subcommand("bound", "analytical lower bound on the win probability only");
  DistFlags bound_dist;
  bound_dist.attach(*bound_cmd);
  double bound_theta = 2.0;
  std::size_t bound_n = 50;
  double bound_omega = kOmegaDefault;
  bound_cmd->add_option("--theta", bound_theta, "true value being estimated (positive)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bound_cmd->add_option("--n", bound_n, "number of agents per group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bound_cmd->add_option("--omega", bound_omega, "influence centralization in [0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bound_cmd->callback([&] {
    const auto bound = crowdbound::lower_bound(bound_dist.spec(), bound_theta, bound_n,
                                               Centralization(bound_omega));
    print_json({{"lower_bound", bound.value},
                {"beta_star", bound.beta_star},
                {"feasible_from", bound.feasible_from}});
  });

  // ---------------------------------------------------------------- phase
  auto* phase_cmd =
      app.add_subcommand("phase", "sweep the (mu, sigma) plane and write a CSV plus SVG heatmap");
  std::string phase_family = "lognormal";
  crowdbound::AxisRange mu_range{kLnTwo - 2.0, kLnTwo + 2.0, 21};
  crowdbound::AxisRange sigma_range{0.05, 3.0, 21};
  double phase_theta = 2.0;
  std::size_t phase_n = 50;
  double phase_omega = kOmegaDefault;
  std::size_t phase_reps = 20000;
  std::uint64_t phase_seed = 1;
  std::string out_csv = "phase.csv";
  std::string out_svg = "phase.svg";
  phase_cmd->add_option("--family", phase_family, "distribution family")
      ->transform(CLI::IsMember(kFamilies, CLI::ignore_case))
      ->capture_default_str();
  phase_cmd->add_option("--mu-lo", mu_range.lo, "low end of the location axis")
      ->capture_default_str();
  phase_cmd->add_option("--mu-hi", mu_range.hi, "high end of the location axis")
      ->capture_default_str();
  phase_cmd->add_option("--mu-steps", mu_range.steps, "grid points on the location axis (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  phase_cmd->add_option("--sigma-lo", sigma_range.lo, "low end of the shape axis (> 0)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  phase_cmd->add_option("--sigma-hi", sigma_range.hi, "high end of the shape axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  phase_cmd->add_option("--sigma-steps", sigma_range.steps, "grid points on the shape axis (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  phase_cmd->add_option("--theta", phase_theta, "true value being estimated (positive)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  phase_cmd->add_option("--n", phase_n, "number of agents per group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  phase_cmd->add_option("--omega", phase_omega, "influence centralization in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  phase_cmd->add_option("--reps", phase_reps, "Monte Carlo replicates per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  phase_cmd->add_option("--seed", phase_seed, "sweep seed; cells derive their own streams")
      ->capture_default_str();
  phase_cmd->add_option("--out-csv", out_csv, "output CSV path")->capture_default_str();
  phase_cmd->add_option("--out-svg", out_svg, "output SVG path")->capture_default_str();
  phase_cmd->callback([&] {
    const auto grid = crowdbound::phase_diagram(kFamilies.at(phase_family), mu_range, sigma_range,
                                                phase_theta, phase_n, Centralization(phase_omega),
                                                phase_reps, phase_seed, sweep_threads());
    write_file_atomic(out_csv, grid.to_csv());
    char title[160];
    std::snprintf(title, sizeof title, "%s, theta=%g, n=%zu, omega=%.4g, reps=%zu",
                  phase_family.c_str(), phase_theta, phase_n, phase_omega, phase_reps);
    write_file_atomic(out_svg, crowdbound::cli::render_phase_svg(grid, title));
    print_json({{"csv", out_csv}, {"svg", out_svg}, {"cells", grid.cells.size()}});
  });

  // ----------------------------------------------------------------- loss
  auto* loss_cmd = app.add_subcommand(
      "loss", "expected-loss comparison of centralized vs decentralized estimates");
  DistFlags loss_dist;
  loss_dist.attach(*loss_cmd);
  double loss_theta = 2.0;
  std::size_t loss_n = 50;
  double loss_omega = kOmegaDefault;
  std::size_t loss_reps = 20000;
  std::uint64_t loss_seed = 1;
  std::string loss_kind = "squared";
  loss_cmd->add_option("--theta", loss_theta, "true value being estimated (positive)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  loss_cmd->add_option("--n", loss_n, "number of agents per group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  loss_cmd->add_option("--omega", loss_omega, "influence centralization in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  loss_cmd->add_option("--reps", loss_reps, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  loss_cmd->add_option("--seed", loss_seed, "stream seed (64-bit)")->capture_default_str();
  loss_cmd->add_option("--loss", loss_kind, "loss function")
      ->transform(CLI::IsMember(kLosses, CLI::ignore_case))
      ->capture_default_str();
  loss_cmd->callback([&] {
    const auto comparison = crowdbound::expected_loss_compare(
        loss_dist.spec(), loss_theta, loss_n, Centralization(loss_omega), kLosses.at(loss_kind),
        loss_reps, loss_seed);
    print_json({{"loss_centralized", comparison.centralized},
                {"loss_decentralized", comparison.decentralized},
                {"loss", loss_kind}});
  });

  // --------------------------------------------------------------- rscore
  auto* rscore_cmd = app.add_subcommand(
      "rscore", "heavy-tailedness feature R of a list of positive estimates");
  std::string rscore_input;
  rscore_cmd
      ->add_option("--input", rscore_input,
                   "file of whitespace-separated positive values, or - for stdin")
      ->required();
  rscore_cmd->callback([&] {
    const auto values = read_values(rscore_input);
    const auto score = crowdbound::r_score(values);
    print_json({{"r", score.r},
                {"ll_lognormal", score.ll_lognormal},
                {"ll_normal", score.ll_normal},
                {"n_obs", score.n_obs}});
  });

  // -------------------------------------------------------------- analyze
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "run the trial pipeline: per-task R, outcomes, and both regressions");
  std::string analyze_input;
  bool analyze_synthetic = false;
  SynthFlags analyze_synth;
  std::string analyze_out = "report.json";
  auto* input_opt =
      analyze_cmd->add_option("--input", analyze_input, "trial CSV in the canonical schema");
  auto* synth_opt = analyze_cmd->add_flag("--synthetic", analyze_synthetic,
                                          "analyze a generated dataset instead of a file");
  analyze_synth.attach(*analyze_cmd);
  analyze_cmd->add_option("--out", analyze_out, "report JSON output path")->capture_default_str();
  input_opt->excludes(synth_opt);
  analyze_cmd->callback([&] {
    crowdbound::ReportMeta meta;
    std::vector<crowdbound::TrialRecord> trials;
    if (analyze_synthetic) {
      trials = crowdbound::generate_synthetic(analyze_synth.config);
      meta.seed = analyze_synth.config.seed;
    } else {
      if (analyze_input.empty()) {
        throw CLI::ValidationError("either --input or --synthetic is required");
      }
      auto loaded = crowdbound::load_trials(analyze_input);
      trials = std::move(loaded.trials);
      meta.dropped_rows = loaded.dropped_rows;
    }
    const auto report = crowdbound::analyze(trials, meta);
    write_file_atomic(analyze_out, crowdbound::report_to_json(report));
    std::cout << crowdbound::coefficient_table(report);
    std::cout << "report written to " << analyze_out << '\n';
  });

  // ---------------------------------------------------------------- synth
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic trial CSV in the canonical schema");
  SynthFlags synth_flags;
  synth_flags.attach(*synth_cmd);
  std::string synth_out = "trials.csv";
  synth_cmd->add_option("--out", synth_out, "output CSV path")->capture_default_str();
  synth_cmd->callback([&] {
    const auto trials = crowdbound::generate_synthetic(synth_flags.config);
    std::size_t subjects = 0;
    for (const auto& trial : trials) subjects += trial.initial_estimates.size();
    crowdbound::save_trials(trials, synth_out);
    print_json({{"path", synth_out}, {"trials", trials.size()}, {"subjects", subjects}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
