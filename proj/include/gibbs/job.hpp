#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gibbs/symbolic.hpp"

namespace gibbs {

struct FullShiftSpec {
  int n = 2;
  bool operator==(const FullShiftSpec&) const = default;
};

struct SftSpec {
  TransitionMatrix matrix;
  friend bool operator==(const SftSpec& a, const SftSpec& b) {
    return a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols() &&
           a.matrix == b.matrix;
  }
};

struct CircleSpec {
  int n = 2;
  int m = 512;
  bool operator==(const CircleSpec&) const = default;
};

using SystemSpec = std::variant<FullShiftSpec, SftSpec, CircleSpec>;

struct ConstantSpec {
  double c = 0.0;
  bool operator==(const ConstantSpec&) const = default;
};

struct LetterWeightsSpec {
  std::vector<double> weights;
  bool operator==(const LetterWeightsSpec&) const = default;
};

struct TableSpec {
  int depth = 1;
  std::map<std::string, double> values;
  bool operator==(const TableSpec&) const = default;
};

struct CosineSpec {
  double amplitude = 0.0;
  bool operator==(const CosineSpec&) const = default;
};

using PotentialSpec = std::variant<ConstantSpec, LetterWeightsSpec, TableSpec, CosineSpec>;

struct CheckCommand {
  bool operator==(const CheckCommand&) const = default;
};
struct EntropyCommand {
  bool operator==(const EntropyCommand&) const = default;
};
struct PressureCommand {
  double beta = 0.0;
  bool operator==(const PressureCommand&) const = default;
};
struct SweepCommand {
  double beta_from = 0.0;
  double beta_to = 1.0;
  int steps = 2;
  bool operator==(const SweepCommand&) const = default;
};
// rpf and measure act on phi, or on -beta phi when beta is given.
struct RpfCommand {
  std::optional<double> beta;
  bool operator==(const RpfCommand&) const = default;
};
struct MeasureCommand {
  int depth = 1;
  std::optional<double> beta;
  bool operator==(const MeasureCommand&) const = default;
};
struct PeriodicCommand {
  int max_period = 1;
  bool operator==(const PeriodicCommand&) const = default;
};
struct KmsCommand {
  bool operator==(const KmsCommand&) const = default;
};

using Command = std::variant<CheckCommand, EntropyCommand, PressureCommand, SweepCommand,
                             RpfCommand, MeasureCommand, PeriodicCommand, KmsCommand>;

struct NumericOptions {
  double tol = 1e-10;           // root width on beta
  double pressure_tol = 1e-9;   // |P| accepted as zero
  double zero_tol = 1e-9;       // |Birkhoff sum| accepted as zero
  double eigen_tol = 1e-12;     // relative eigen-residual
  int max_iter = 100'000;
  int max_period = 16;
  double scan_min = -50.0;
  double scan_max = 50.0;
  int scan_steps = 201;
  std::size_t word_cap = kDefaultWordCap;
  bool operator==(const NumericOptions&) const = default;
};

struct JobConfig {
  SystemSpec system;
  PotentialSpec potential;
  Command command;
  NumericOptions options;
  bool operator==(const JobConfig&) const = default;
};

// Parses and validates a JSON job. Unknown keys are rejected, and table
// potentials are checked against the admissible words of the system.
// Throws DomainError (module "config") on any problem.
JobConfig parse_config(std::string_view text);

nlohmann::json to_json(const JobConfig& job);

// FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const JobConfig& job);

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 inconclusive, 1 error
  nlohmann::json report;
  std::vector<std::pair<double, double>> sweep;  // (beta, pressure)
};

// Never throws for computational failures: they become exit code 1 with an
// "error" field naming the module.
RunResult run(const JobConfig& job);

// CSV with a mandatory "beta,pressure" header.
void write_sweep_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points);

// Formatting used for every floating value in reports: 15 significant digits.
double round15(double value);

}  // namespace gibbs
