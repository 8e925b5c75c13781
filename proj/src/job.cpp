#include "gibbs/job.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <ostream>

#include "gibbs/circle.hpp"
#include "gibbs/error.hpp"
#include "gibbs/kms.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/transfer.hpp"

namespace gibbs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw DomainError("config", what); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::ranges::find(allowed, std::string_view(key)) == allowed.end())
      fail("unknown key \"" + key + "\" in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail("missing key \"" + key + "\" in " + where);
  return obj.at(key);
}

double get_number(const json& value, const std::string& what) {
  if (!value.is_number()) fail(what + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(what + " must be finite");
  return x;
}

int get_int(const json& value, const std::string& what) {
  if (!value.is_number_integer()) fail(what + " must be an integer");
  return value.get<int>();
}

std::string get_type(const json& obj, const std::string& where) {
  const json& t = require(obj, "type", where);
  if (!t.is_string()) fail("\"type\" in " + where + " must be a string");
  return t.get<std::string>();
}

SystemSpec parse_system(const json& obj) {
  const std::string type = get_type(obj, "system");
  if (type == "full_shift") {
    reject_unknown_keys(obj, "system", {"type", "n"});
    return FullShiftSpec{get_int(require(obj, "n", "system"), "system.n")};
  }
  if (type == "sft") {
    reject_unknown_keys(obj, "system", {"type", "matrix"});
    const json& rows = require(obj, "matrix", "system");
    if (!rows.is_array() || rows.empty()) fail("system.matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    SftSpec spec{TransitionMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        fail("system.matrix must be square");
      for (Eigen::Index j = 0; j < n; ++j)
        spec.matrix(i, j) = get_int(row[static_cast<std::size_t>(j)], "system.matrix entry");
    }
    return spec;
  }
  if (type == "circle") {
    reject_unknown_keys(obj, "system", {"type", "n", "m"});
    CircleSpec spec;
    spec.n = get_int(require(obj, "n", "system"), "system.n");
    if (obj.contains("m")) spec.m = get_int(obj.at("m"), "system.m");
    return spec;
  }
  fail("unknown system type \"" + type + "\"");
}

PotentialSpec parse_potential(const json& obj) {
  const std::string type = get_type(obj, "potential");
  if (type == "constant") {
    reject_unknown_keys(obj, "potential", {"type", "c"});
    return ConstantSpec{get_number(require(obj, "c", "potential"), "potential.c")};
  }
  if (type == "letter_weights") {
    reject_unknown_keys(obj, "potential", {"type", "weights"});
    const json& w = require(obj, "weights", "potential");
    if (!w.is_array()) fail("potential.weights must be an array");
    LetterWeightsSpec spec;
    for (const auto& x : w) spec.weights.push_back(get_number(x, "potential weight"));
    return spec;
  }
  if (type == "table") {
    reject_unknown_keys(obj, "potential", {"type", "depth", "values"});
    TableSpec spec;
    spec.depth = get_int(require(obj, "depth", "potential"), "potential.depth");
    const json& values = require(obj, "values", "potential");
    if (!values.is_object()) fail("potential.values must be an object mapping words to numbers");
    for (const auto& [word, value] : values.items())
      spec.values.emplace(word, get_number(value, "value of word \"" + word + "\""));
    return spec;
  }
  if (type == "cosine") {
    reject_unknown_keys(obj, "potential", {"type", "amplitude"});
    return CosineSpec{get_number(require(obj, "amplitude", "potential"), "potential.amplitude")};
  }
  fail("unknown potential type \"" + type + "\"");
}

Command parse_command(const json& obj) {
  const std::string type = get_type(obj, "command");
  auto optional_beta = [&]() -> std::optional<double> {
    if (!obj.contains("beta")) return std::nullopt;
    return get_number(obj.at("beta"), "command.beta");
  };
  if (type == "check") {
    reject_unknown_keys(obj, "command", {"type"});
    return CheckCommand{};
  }
  if (type == "entropy") {
    reject_unknown_keys(obj, "command", {"type"});
    return EntropyCommand{};
  }
  if (type == "pressure") {
    reject_unknown_keys(obj, "command", {"type", "beta"});
    return PressureCommand{get_number(require(obj, "beta", "command"), "command.beta")};
  }
  if (type == "sweep") {
    reject_unknown_keys(obj, "command", {"type", "beta_from", "beta_to", "steps"});
    SweepCommand c;
    c.beta_from = get_number(require(obj, "beta_from", "command"), "command.beta_from");
    c.beta_to = get_number(require(obj, "beta_to", "command"), "command.beta_to");
    c.steps = get_int(require(obj, "steps", "command"), "command.steps");
    if (!(c.beta_from < c.beta_to)) fail("sweep requires beta_from < beta_to");
    if (c.steps < 2) fail("sweep requires at least 2 steps");
    return c;
  }
  if (type == "rpf") {
    reject_unknown_keys(obj, "command", {"type", "beta"});
    return RpfCommand{optional_beta()};
  }
  if (type == "measure") {
    reject_unknown_keys(obj, "command", {"type", "depth", "beta"});
    MeasureCommand c;
    c.depth = get_int(require(obj, "depth", "command"), "command.depth");
    if (c.depth < 1) fail("measure depth must be at least 1");
    c.beta = optional_beta();
    return c;
  }
  if (type == "periodic") {
    reject_unknown_keys(obj, "command", {"type", "max_period"});
    PeriodicCommand c{get_int(require(obj, "max_period", "command"), "command.max_period")};
    if (c.max_period < 1) fail("periodic max_period must be at least 1");
    return c;
  }
  if (type == "kms") {
    reject_unknown_keys(obj, "command", {"type"});
    return KmsCommand{};
  }
  fail("unknown command type \"" + type + "\"");
}

NumericOptions parse_options(const json& obj) {
  reject_unknown_keys(obj, "options",
                      {"tol", "pressure_tol", "zero_tol", "eigen_tol", "max_iter", "max_period",
                       "scan_min", "scan_max", "scan_steps", "word_cap"});
  NumericOptions o;
  auto num = [&](const char* key, double& field) {
    if (obj.contains(key)) field = get_number(obj.at(key), std::string("options.") + key);
  };
  auto integer = [&](const char* key, int& field) {
    if (obj.contains(key)) field = get_int(obj.at(key), std::string("options.") + key);
  };
  num("tol", o.tol);
  num("pressure_tol", o.pressure_tol);
  num("zero_tol", o.zero_tol);
  num("eigen_tol", o.eigen_tol);
  integer("max_iter", o.max_iter);
  integer("max_period", o.max_period);
  num("scan_min", o.scan_min);
  num("scan_max", o.scan_max);
  integer("scan_steps", o.scan_steps);
  if (obj.contains("word_cap")) {
    const json& cap = obj.at("word_cap");
    if (!cap.is_number_unsigned() || cap.get<std::size_t>() == 0)
      fail("options.word_cap must be a positive integer");
    o.word_cap = cap.get<std::size_t>();
  }
  if (!(o.tol > 0) || !(o.pressure_tol > 0) || !(o.zero_tol >= 0) || !(o.eigen_tol > 0))
    fail("tolerances must be positive");
  if (o.max_iter < 1) fail("options.max_iter must be positive");
  if (o.max_period < 1) fail("options.max_period must be at least 1");
  if (!(o.scan_min < o.scan_max)) fail("options.scan_min must be below options.scan_max");
  if (o.scan_steps < 3) fail("options.scan_steps must be at least 3");
  return o;
}

ShiftSystem make_shift(const SystemSpec& spec) {
  if (const auto* full = std::get_if<FullShiftSpec>(&spec)) return full_shift(full->n);
  const auto& sft = std::get<SftSpec>(spec);
  return validate_system(static_cast<int>(sft.matrix.rows()), sft.matrix);
}

LocallyConstantPotential make_potential(const ShiftSystem& sys, const PotentialSpec& spec,
                                        std::size_t cap) {
  return std::visit(
      overloaded{
          [&](const ConstantSpec& c) { return LocallyConstantPotential::constant(sys, c.c); },
          [&](const LetterWeightsSpec& w) {
            return LocallyConstantPotential::letter_weights(sys, w.weights);
          },
          [&](const TableSpec& t) {
            std::map<Word, double> values;
            for (const auto& [word, value] : t.values) values.emplace(Word::parse(word), value);
            return LocallyConstantPotential::from_table(sys, t.depth, values, cap);
          },
          [&](const CosineSpec&) -> LocallyConstantPotential {
            fail("cosine potentials are only available on circle systems");
          },
      },
      spec);
}

GridPotential make_grid(const CircleSpec& circle, const PotentialSpec& spec) {
  if (const auto* c = std::get_if<ConstantSpec>(&spec)) return GridPotential::constant(circle.m, c->c);
  if (const auto* cos = std::get_if<CosineSpec>(&spec))
    return GridPotential::cosine(circle.m, cos->amplitude);
  fail("circle systems accept only constant or cosine potentials");
}

void check_job(const JobConfig& job) {
  if (const auto* circle = std::get_if<CircleSpec>(&job.system)) {
    const auto sys = CircleSystem::make(circle->n);
    if (circle->m < 2 * sys.n) fail("circle grid size m must be at least 2n");
    make_grid(*circle, job.potential);
    const bool supported =
        std::holds_alternative<CheckCommand>(job.command) ||
        std::holds_alternative<EntropyCommand>(job.command) ||
        std::holds_alternative<PressureCommand>(job.command) ||
        std::holds_alternative<SweepCommand>(job.command);
    if (!supported) fail("circle systems support only check, entropy, pressure and sweep");
    return;
  }
  const ShiftSystem sys = make_shift(job.system);
  make_potential(sys, job.potential, job.options.word_cap);
}

// Problems found while building the system or potential are reported as
// config errors, keeping the original module in the message.
void validate_job(const JobConfig& job) {
  try {
    check_job(job);
  } catch (const DomainError& e) {
    if (e.module() == "config") throw;
    fail(e.what());
  } catch (const CapExceededError& e) {
    fail(e.what());
  }
}

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

json vec(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

json options_json(const NumericOptions& o) {
  return json{{"tol", o.tol},
              {"pressure_tol", o.pressure_tol},
              {"zero_tol", o.zero_tol},
              {"eigen_tol", o.eigen_tol},
              {"max_iter", o.max_iter},
              {"max_period", o.max_period},
              {"scan_min", o.scan_min},
              {"scan_max", o.scan_max},
              {"scan_steps", o.scan_steps},
              {"word_cap", o.word_cap}};
}

KmsOptions kms_options(const NumericOptions& o) {
  KmsOptions k;
  k.beta_tol = o.tol;
  k.pressure_tol = o.pressure_tol;
  k.zero_tol = o.zero_tol;
  k.scan_min = o.scan_min;
  k.scan_max = o.scan_max;
  k.scan_steps = o.scan_steps;
  k.max_period = o.max_period;
  k.rpf = {o.eigen_tol, o.max_iter};
  k.cap = o.word_cap;
  return k;
}

std::string theorem_case(const KmsReport& r) {
  switch (r.verdict) {
    case Verdict::unique_beta: return "iv";
    case Verdict::kms_exists: return r.unique_kms ? "i+ii" : "i";
    case Verdict::no_kms_nonprincipal: return "iii";
    case Verdict::no_kms_no_root: return "i";
    case Verdict::inconclusive: return "none";
  }
  return "none";
}

json kms_json(const KmsReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots)
    roots.push_back({{"beta", num(root.beta)},
                     {"pressure", num(root.pressure)},
                     {"bracket", {num(root.lo), num(root.hi)}}});
  json violations = json::array();
  for (const auto& v : r.principality.violations)
    violations.push_back({{"orbit", v.orbit.representative.str()},
                          {"birkhoff_sum", num(v.birkhoff_sum)}});
  json curve = json::array();
  for (const auto& [beta, p] : r.pressure_curve) curve.push_back({num(beta), num(p)});
  json out{{"entropy", num(r.entropy)},
           {"sign_class", to_string(r.sign_class)},
           {"roots", roots},
           {"beta", r.roots.size() == 1 ? num(r.roots.front().beta) : json(nullptr)},
           {"bracket_used", r.bracket_used ? json{num(r.bracket_used->first),
                                                  num(r.bracket_used->second)}
                                           : json(nullptr)},
           {"cycle_means", {{"min", num(r.cycle_means.min_mean)},
                            {"max", num(r.cycle_means.max_mean)}}},
           {"principality", {{"principal", r.principality.principal},
                             {"up_to_period", r.principality.max_period},
                             {"by_sign", r.principality.by_sign},
                             {"violations", violations}}},
           {"bowen", {{"delta", num(r.bowen.delta)}, {"C", num(r.bowen.c)}}},
           {"verdict", to_string(r.verdict)},
           {"theorem_case", theorem_case(r)},
           {"unique_kms", r.unique_kms},
           {"warnings", r.warnings},
           {"pressure_curve", curve}};
  return out;
}

std::vector<double> linspace(double from, double to, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    out[static_cast<std::size_t>(i)] =
        i + 1 == steps ? to : from + (to - from) * i / static_cast<double>(steps - 1);
  return out;
}

std::string command_name(const Command& c) {
  return std::visit(overloaded{
                        [](const CheckCommand&) { return "check"; },
                        [](const EntropyCommand&) { return "entropy"; },
                        [](const PressureCommand&) { return "pressure"; },
                        [](const SweepCommand&) { return "sweep"; },
                        [](const RpfCommand&) { return "rpf"; },
                        [](const MeasureCommand&) { return "measure"; },
                        [](const PeriodicCommand&) { return "periodic"; },
                        [](const KmsCommand&) { return "kms"; },
                    },
                    c);
}

void run_circle(const JobConfig& job, RunResult& result) {
  const auto& spec = std::get<CircleSpec>(job.system);
  const auto sys = CircleSystem::make(spec.n);
  const GridPotential phi = make_grid(spec, job.potential);
  const RpfOptions rpf{job.options.eigen_tol, job.options.max_iter};
  json& report = result.report;
  std::visit(overloaded{
                 [&](const CheckCommand&) {
                   report["exact"] = true;
                   report["degree"] = spec.n;
                 },
                 [&](const EntropyCommand&) {
                   const auto p = circle_pressure(sys, phi * 0.0, rpf);
                   report["entropy"] = num(p.pressure);
                 },
                 [&](const PressureCommand& c) {
                   const auto p = circle_pressure(sys, phi * -c.beta, rpf);
                   report["beta"] = num(c.beta);
                   report["pressure"] = num(p.pressure);
                   report["err_estimate"] = num(p.err_estimate);
                 },
                 [&](const SweepCommand& c) {
                   json points = json::array();
                   for (double beta : linspace(c.beta_from, c.beta_to, c.steps)) {
                     const auto p = circle_pressure(sys, phi * -beta, rpf);
                     result.sweep.emplace_back(beta, p.pressure);
                     points.push_back({{"beta", num(beta)},
                                       {"pressure", num(p.pressure)},
                                       {"err_estimate", num(p.err_estimate)}});
                   }
                   report["points"] = points;
                 },
                 [&](const auto&) { fail("command not supported for circle systems"); },
             },
             job.command);
}

void run_shift(const JobConfig& job, RunResult& result) {
  const ShiftSystem sys = make_shift(job.system);
  const std::size_t cap = job.options.word_cap;
  const LocallyConstantPotential phi = make_potential(sys, job.potential, cap);
  const RpfOptions rpf{job.options.eigen_tol, job.options.max_iter};
  json& report = result.report;
  auto scaled = [&](std::optional<double> beta) { return beta ? phi * -*beta : phi; };

  std::visit(
      overloaded{
          [&](const CheckCommand&) {
            report["alphabet_size"] = sys.alphabet_size();
            report["full_shift"] = sys.is_full_shift();
            report["irreducible"] = sys.irreducible();
            report["primitive"] = sys.primitive();
            report["exact"] = is_exact(sys);
            report["primitivity_exponent"] =
                sys.primitivity_exponent() ? json(*sys.primitivity_exponent()) : json(nullptr);
          },
          [&](const EntropyCommand&) { report["entropy"] = num(entropy(sys)); },
          [&](const PressureCommand& c) {
            report["beta"] = num(c.beta);
            report["pressure"] = num(pressure_at(sys, phi, c.beta, rpf));
          },
          [&](const SweepCommand& c) {
            const PressureFunction g(sys, phi, rpf, cap);
            json points = json::array();
            for (double beta : linspace(c.beta_from, c.beta_to, c.steps)) {
              result.sweep.emplace_back(beta, g(beta));
              points.push_back({{"beta", num(beta)}, {"pressure", num(g(beta))}});
            }
            report["points"] = points;
          },
          [&](const RpfCommand& c) {
            const auto potential = scaled(c.beta);
            if (!is_exact(sys)) throw NotExactError("transfer", "rpf requires an exact system");
            const auto m = build_transfer_matrix(sys, potential, cap);
            const auto data = rpf_eigendata(m, rpf);
            json index = json::array();
            for (const auto& w : m.index) index.push_back(w.str());
            report["beta"] = c.beta ? num(*c.beta) : json(nullptr);
            report["level"] = m.level;
            report["index"] = index;
            report["lambda"] = num(data.lambda);
            report["pressure"] = num(std::log(data.lambda));
            report["h"] = vec(data.h);
            report["nu"] = vec(data.nu);
            report["right_residual"] = num(data.right_residual);
            report["left_residual"] = num(data.left_residual);
            report["iterations"] = data.iterations;
          },
          [&](const MeasureCommand& c) {
            const auto potential = scaled(c.beta);
            if (!is_exact(sys)) throw NotExactError("transfer", "measure requires an exact system");
            const auto m = build_transfer_matrix(sys, potential, cap);
            const auto data = rpf_eigendata(m, rpf);
            const auto mu = cylinder_measure(sys, potential, data, c.depth, cap);
            json cylinders = json::array();
            for (std::size_t i = 0; i < mu.words.size(); ++i)
              cylinders.push_back({{"word", mu.words[i].str()},
                                   {"mass", num(mu.masses(static_cast<Eigen::Index>(i)))}});
            report["beta"] = c.beta ? num(*c.beta) : json(nullptr);
            report["depth"] = mu.depth;
            report["lambda"] = num(data.lambda);
            report["cylinders"] = cylinders;
          },
          [&](const PeriodicCommand& c) {
            json orbits = json::array();
            for (const auto& orbit : periodic_orbits(sys, c.max_period, cap))
              orbits.push_back({{"orbit", orbit.representative.str()},
                                {"period", orbit.period()},
                                {"birkhoff_sum", num(birkhoff_sum(phi, orbit))}});
            report["max_period"] = c.max_period;
            report["count"] = orbits.size();
            report["orbits"] = orbits;
          },
          [&](const KmsCommand&) {
            const auto r = classify(sys, phi, kms_options(job.options));
            report.update(kms_json(r));
            if (r.verdict == Verdict::inconclusive) result.exit_code = 2;
          },
      },
      job.command);
}

}  // namespace

double round15(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return std::strtod(buffer, nullptr);
}

JobConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown_keys(doc, "config", {"system", "potential", "command", "options"});
  JobConfig job;
  job.system = parse_system(require(doc, "system", "config"));
  job.potential = doc.contains("potential") ? parse_potential(doc.at("potential"))
                                            : PotentialSpec{ConstantSpec{0.0}};
  job.command = parse_command(require(doc, "command", "config"));
  if (doc.contains("options")) job.options = parse_options(doc.at("options"));
  validate_job(job);
  return job;
}

json to_json(const JobConfig& job) {
  json doc;
  doc["system"] = std::visit(
      overloaded{
          [](const FullShiftSpec& s) { return json{{"type", "full_shift"}, {"n", s.n}}; },
          [](const SftSpec& s) {
            json rows = json::array();
            for (Eigen::Index i = 0; i < s.matrix.rows(); ++i) {
              json row = json::array();
              for (Eigen::Index j = 0; j < s.matrix.cols(); ++j) row.push_back(s.matrix(i, j));
              rows.push_back(row);
            }
            return json{{"type", "sft"}, {"matrix", rows}};
          },
          [](const CircleSpec& s) { return json{{"type", "circle"}, {"n", s.n}, {"m", s.m}}; },
      },
      job.system);
  doc["potential"] = std::visit(
      overloaded{
          [](const ConstantSpec& p) { return json{{"type", "constant"}, {"c", p.c}}; },
          [](const LetterWeightsSpec& p) {
            return json{{"type", "letter_weights"}, {"weights", p.weights}};
          },
          [](const TableSpec& p) {
            return json{{"type", "table"}, {"depth", p.depth}, {"values", p.values}};
          },
          [](const CosineSpec& p) { return json{{"type", "cosine"}, {"amplitude", p.amplitude}}; },
      },
      job.potential);
  doc["command"] = std::visit(
      overloaded{
          [](const CheckCommand&) { return json{{"type", "check"}}; },
          [](const EntropyCommand&) { return json{{"type", "entropy"}}; },
          [](const PressureCommand& c) { return json{{"type", "pressure"}, {"beta", c.beta}}; },
          [](const SweepCommand& c) {
            return json{{"type", "sweep"},
                        {"beta_from", c.beta_from},
                        {"beta_to", c.beta_to},
                        {"steps", c.steps}};
          },
          [](const RpfCommand& c) {
            json out{{"type", "rpf"}};
            if (c.beta) out["beta"] = *c.beta;
            return out;
          },
          [](const MeasureCommand& c) {
            json out{{"type", "measure"}, {"depth", c.depth}};
            if (c.beta) out["beta"] = *c.beta;
            return out;
          },
          [](const PeriodicCommand& c) {
            return json{{"type", "periodic"}, {"max_period", c.max_period}};
          },
          [](const KmsCommand&) { return json{{"type", "kms"}}; },
      },
      job.command);
  doc["options"] = options_json(job.options);
  return doc;
}

std::string config_hash(const JobConfig& job) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : to_json(job).dump()) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

RunResult run(const JobConfig& job) {
  RunResult result;
  result.report = json{{"command", command_name(job.command)},
                       {"config_hash", config_hash(job)},
                       {"tolerances", options_json(job.options)}};
  try {
    if (std::holds_alternative<CircleSpec>(job.system))
      run_circle(job, result);
    else
      run_shift(job, result);
    result.report["status"] = result.exit_code == 2 ? "inconclusive" : "ok";
  } catch (const Error& e) {
    result.exit_code = 1;
    result.sweep.clear();
    result.report["status"] = "error";
    result.report["error"] = e.what();
    result.report["error_module"] = e.module();
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points) {
  out << "beta,pressure\n";
  char buffer[64];
  for (const auto& [beta, p] : points) {
    std::snprintf(buffer, sizeof buffer, "%.15g,%.15g\n", beta, p);
    out << buffer;
  }
}

}  // namespace gibbs
