#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "crowdbound/distributions.hpp"
#include "crowdbound/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_raw(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

RunResult run_cli(const std::string& args) {
  return run_raw(std::string(CROWDBOUND_CLI_PATH) + " " + args + " 2>&1");
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "crowdbound_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("omega subcommand reports the win probability and bound") {
  const auto result = run_cli(
      "omega --family lognormal --mu 0.6931 --sigma 2 --theta 2 --n 50 --omega 0.3333 "
      "--reps 20000 --seed 7");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc["omega_n"].get<double>() > 0.5);
  CHECK(doc.contains("std_error"));
  CHECK(doc.contains("lower_bound"));
  CHECK(doc.contains("beta_star"));
  CHECK(doc["lower_bound"].get<double>() <=
        doc["omega_n"].get<double>() + 3.0 * doc["std_error"].get<double>());
}

TEST_CASE("omega at zero centralization is exactly zero") {
  const auto result = run_cli("omega --omega 0 --reps 200 --seed 3");
  REQUIRE(result.exit_code == 0);
  CHECK(json::parse(result.output)["omega_n"].get<double>() == 0.0);
}

TEST_CASE("omega at full centralization fails with the infeasible bound") {
  const auto result = run_cli("omega --omega 1 --reps 50 --seed 3");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("error") != std::string::npos);
}

TEST_CASE("usage errors exit with 2 and help with 0") {
  CHECK(run_cli("omega --no-such-flag").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
  CHECK(run_cli("omega --sigma -1").exit_code == 2);

  for (const char* sub : {"omega", "bound", "phase", "loss", "rscore", "analyze", "synth"}) {
    const auto help = run_cli(std::string(sub) + " --help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("--help") != std::string::npos);
  }
  const auto omega_help = run_cli("omega --help");
  for (const char* flag : {"--family", "--mu", "--sigma", "--theta", "--n", "--omega", "--reps",
                           "--seed"}) {
    CHECK(omega_help.output.find(flag) != std::string::npos);
  }
}

TEST_CASE("bound subcommand") {
  const auto result = run_cli("bound --family pareto --mu 1 --sigma 0.5 --theta 2 --n 50 "
                              "--omega 0.3333333333333333");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc["lower_bound"].get<double>() > 0.0);
  CHECK(doc["beta_star"].get<double>() > doc["feasible_from"].get<double>());
}

TEST_CASE("phase subcommand writes deterministic CSV and SVG") {
  const auto dir = temp_dir();
  const auto csv_path = dir / "phase.csv";
  const auto svg_path = dir / "phase.svg";
  const std::string flags = "phase --mu-lo 0 --mu-hi 1 --mu-steps 2 --sigma-lo 0.5 --sigma-hi 1.5 "
                            "--sigma-steps 2 --reps 1 --omega 0 --seed 5 --out-csv " +
                            csv_path.string() + " --out-svg " + svg_path.string();

  const auto first = run_cli(flags);
  REQUIRE(first.exit_code == 0);
  const std::string csv = slurp(csv_path);
  const std::string svg = slurp(svg_path);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "mu,sigma,omega_value,std_error,reps");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(line.find(",0,0,1") != std::string::npos);  // omega_value=0, std_error=0, reps=1
  }
  CHECK(rows == 4);

  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<rect") != std::string::npos);
  CHECK(svg.find("μ") != std::string::npos);
  CHECK(svg.find("σ") != std::string::npos);

  // byte-identical rerun
  const auto second = run_cli(flags);
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(csv_path) == csv);
  CHECK(slurp(svg_path) == svg);
}

TEST_CASE("sweep output is independent of the thread cap") {
  const auto dir = temp_dir();
  const auto csv_one = dir / "threads1.csv";
  const auto csv_many = dir / "threads4.csv";
  const std::string base = "phase --mu-lo 0 --mu-hi 1 --mu-steps 3 --sigma-lo 0.4 --sigma-hi 1.6 "
                           "--sigma-steps 3 --n 10 --reps 300 --seed 17 --out-svg " +
                           (dir / "threads.svg").string() + " --out-csv ";
  const auto one = run_raw("CROWDBOUND_THREADS=1 " + std::string(CROWDBOUND_CLI_PATH) + " " +
                           base + csv_one.string() + " 2>&1");
  REQUIRE(one.exit_code == 0);
  const auto many = run_raw("CROWDBOUND_THREADS=4 " + std::string(CROWDBOUND_CLI_PATH) + " " +
                            base + csv_many.string() + " 2>&1");
  REQUIRE(many.exit_code == 0);
  const std::string a = slurp(csv_one);
  CHECK(a == slurp(csv_many));
  CHECK(a.find("mu,sigma,omega_value") == 0);
}

TEST_CASE("seeded subcommands print identical bytes on rerun") {
  const auto first = run_cli("omega --sigma 1.5 --reps 500 --seed 99");
  const auto second = run_cli("omega --sigma 1.5 --reps 500 --seed 99");
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("loss subcommand") {
  const auto result =
      run_cli("loss --mu 0.6931 --sigma 2 --loss squared --reps 4000 --seed 11");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc["loss_centralized"].get<double>() > 0.0);
  CHECK(doc["loss_decentralized"].get<double>() > 0.0);
}

TEST_CASE("rscore subcommand on a lognormal sample") {
  const auto dir = temp_dir();
  const auto values_path = dir / "values.txt";
  {
    std::ofstream out(values_path);
    for (double v : crowdbound::sample(crowdbound::DistributionSpec::log_normal(0.0, 1.0), 1000,
                                       13)) {
      out << v << '\n';
    }
  }
  const auto result = run_cli("rscore --input " + values_path.string());
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc["r"].get<double>() > 0.99);
  CHECK(doc["n_obs"].get<std::size_t>() == 1000);
}

TEST_CASE("analyze on synthetic data recovers the moderation sign") {
  const auto dir = temp_dir();
  const auto report_path = dir / "report.json";
  const auto result =
      run_cli("analyze --synthetic --seed 7 --out " + report_path.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("social_x_R") != std::string::npos);

  const json report = json::parse(slurp(report_path));
  CHECK(report["ols"]["coefficients"]["social_x_R"].get<double>() < 0.0);
  CHECK(report["logistic"]["coefficients"]["R"].get<double>() > 0.0);
  for (const char* key : {"logistic", "ols", "tasks", "meta"}) {
    CHECK(report.contains(key));
  }
}

TEST_CASE("analyze propagates file errors with exit 1") {
  const auto result = run_cli("analyze --input /does/not/exist.csv");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("/does/not/exist.csv") != std::string::npos);
}

TEST_CASE("synth output feeds back into analyze") {
  const auto dir = temp_dir();
  const auto trials_path = dir / "trials.csv";
  const auto report_path = dir / "synth_report.json";

  const auto synth = run_cli("synth --tasks 6 --groups 8 --group-size 12 --seed 19 --out " +
                             trials_path.string());
  REQUIRE(synth.exit_code == 0);
  const json summary = json::parse(synth.output);
  CHECK(summary["trials"].get<std::size_t>() == 48);
  CHECK(summary["subjects"].get<std::size_t>() == 48 * 12);

  // the written file round-trips through the loader
  const auto loaded = crowdbound::load_trials(trials_path);
  CHECK(loaded.trials.size() == 48);
  CHECK(loaded.dropped_rows == 0);

  const auto analyze =
      run_cli("analyze --input " + trials_path.string() + " --out " + report_path.string());
  REQUIRE(analyze.exit_code == 0);
  const json report = json::parse(slurp(report_path));
  for (const char* key : {"logistic", "ols", "tasks", "meta", "marginal_effect"}) {
    CHECK(report.contains(key));
  }
  CHECK(report["meta"]["n_trials"].get<std::size_t>() == 48);
}

TEST_CASE("input and synthetic are mutually exclusive") {
  CHECK(run_cli("analyze --input x.csv --synthetic").exit_code == 2);
}
