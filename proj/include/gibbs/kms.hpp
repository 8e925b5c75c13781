#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gibbs/potential.hpp"
#include "gibbs/symbolic.hpp"
#include "gibbs/transfer.hpp"

namespace gibbs {

struct KmsOptions {
  double beta_tol = 1e-10;      // bisection width on beta
  double pressure_tol = 1e-9;   // |P| accepted as zero at a root
  double zero_tol = 1e-9;       // |Birkhoff sum| treated as zero
  double scan_min = -50.0;
  double scan_max = 50.0;
  int scan_steps = 201;
  int max_period = 16;
  RpfOptions rpf{};
  std::size_t cap = kDefaultWordCap;
};

// beta -> P(T, -beta phi), memoized per beta. Not thread-safe.
class PressureFunction {
 public:
  PressureFunction(ShiftSystem sys, LocallyConstantPotential phi, RpfOptions opts = {},
                   std::size_t cap = kDefaultWordCap);

  double operator()(double beta) const;
  std::size_t evaluations() const noexcept { return cache_.size(); }

 private:
  ShiftSystem sys_;
  LocallyConstantPotential phi_;
  RpfOptions opts_;
  std::size_t cap_;
  mutable std::map<double, double> cache_;
};

double pressure_at(const ShiftSystem& sys, const LocallyConstantPotential& phi, double beta,
                   const RpfOptions& opts = {});

enum class SignClass { strictly_positive, strictly_negative, mixed, has_zero };

// Which part of the existence/uniqueness theorem decided the outcome.
enum class Verdict {
  unique_beta,        // strict sign: exactly one inverse temperature
  kms_exists,         // P(T, -beta phi) = 0 has roots
  no_kms_nonprincipal,  // a periodic orbit with zero Birkhoff sum; P > 0 everywhere
  no_kms_no_root,     // principal, but the pressure never vanishes
  inconclusive,
};

std::string to_string(SignClass c);
std::string to_string(Verdict v);

SignClass sign_class(const LocallyConstantPotential& phi);

struct KmsRoot {
  double beta = 0.0;
  double pressure = 0.0;  // P(T, -beta phi) at the reported beta
  double lo = 0.0;        // final bisection bracket
  double hi = 0.0;
};

struct OrbitViolation {
  PeriodicOrbit orbit;
  double birkhoff_sum = 0.0;
};

struct PrincipalityResult {
  bool principal = true;
  int max_period = 0;
  // Strict-sign potentials are principal without enumerating orbits.
  bool by_sign = false;
  std::vector<OrbitViolation> violations;
};

struct KmsReport {
  double entropy = 0.0;
  SignClass sign_class = SignClass::mixed;
  std::vector<KmsRoot> roots;
  std::optional<std::pair<double, double>> bracket_used;
  std::vector<std::pair<double, double>> pressure_curve;  // (beta, P), sorted by beta
  CycleMeanRange cycle_means;

  PrincipalityResult principality;
  BowenConstant bowen;
  Verdict verdict = Verdict::inconclusive;
  bool unique_kms = false;
  bool inconclusive = false;
  std::vector<std::string> warnings;
};

// Roots of beta -> P(T, -beta phi). Fills entropy, sign class, roots, bracket,
// curve and warnings; the principality and verdict fields are left default.
KmsReport find_kms_beta(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                        const KmsOptions& opts = {});

// Unique beta with sum_j exp(-beta lambda_j) = 1, when all lambda_j share a
// strict sign; nullopt otherwise.
std::optional<double> evans_solve(std::span<const double> lambda, double tol = 1e-14);

// Spectral radius of diag(exp(-beta lambda_i)) A.
double zacharias_check(const ShiftSystem& sys, std::span<const double> lambda, double beta,
                       const RpfOptions& opts = {});

PrincipalityResult check_principality(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                      int max_period, double tol,
                                      std::size_t cap = kDefaultWordCap);

KmsReport classify(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                   const KmsOptions& opts = {});

}  // namespace gibbs
