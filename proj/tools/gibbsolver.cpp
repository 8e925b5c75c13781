// gibbsolver: batch front end for pressure, Gibbs measure and KMS computations.
//
//   gibbsolver run <config.json> [--csv <path>] [--tol <x>] [--max-period <N>]
//
// Writes the JSON report to stdout, sweep points to the CSV file and
// diagnostics to stderr. Exit codes: 0 ok, 2 inconclusive, 1 error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gibbs/error.hpp"
#include "gibbs/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Transfer-operator pressure, Gibbs measures and KMS inverse temperatures"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a JSON job description");
  std::string config_path;
  std::string csv_path;
  std::optional<double> tol;
  std::optional<int> max_period;
  run_cmd->add_option("config", config_path, "Path to the JSON job")->required();
  run_cmd->add_option("--csv", csv_path, "Write sweep points as beta,pressure CSV");
  run_cmd->add_option("--tol", tol, "Root tolerance on beta")->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-period", max_period, "Principality period bound")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "gibbsolver: cannot open " << config_path << "\n";
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();

  gibbs::JobConfig job;
  try {
    job = gibbs::parse_config(text.str());
  } catch (const gibbs::Error& e) {
    std::cerr << "gibbsolver: " << e.what() << "\n";
    return 1;
  }
  if (tol) job.options.tol = *tol;
  if (max_period) job.options.max_period = *max_period;

  const auto result = gibbs::run(job);
  std::cout << result.report.dump(2) << "\n";
  if (result.exit_code == 1) {
    std::cerr << "gibbsolver: " << result.report.value("error", std::string("unknown error"))
              << "\n";
    return 1;
  }
  if (!csv_path.empty() && !result.sweep.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << "gibbsolver: cannot write " << csv_path << "\n";
      return 1;
    }
    gibbs::write_sweep_csv(csv, result.sweep);
  }
  if (result.exit_code == 2) std::cerr << "gibbsolver: verdict inconclusive\n";
  return result.exit_code;
}
