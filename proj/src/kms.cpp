#include "gibbs/kms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gibbs/error.hpp"
#include "gibbs/perron.hpp"

namespace gibbs {

namespace {

// Tail searches stop once |beta| would exceed this; beyond it the pressure is
// dominated by cancellation between the shift and log(lambda).
constexpr double kMaxTailBeta = 1e6;

int sign_of(double value, double tol) { return value > tol ? 1 : (value < -tol ? -1 : 0); }

// Bisection on [a, b] with g(a), g(b) of opposite (raw) sign. Stops when the
// bracket is below beta_tol and |g| is below pressure_tol, or when the
// bracket can no longer be split in floating point.
KmsRoot bisect(const PressureFunction& g, double a, double b, const KmsOptions& opts) {
  double ga = g(a);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if (gm == 0.0 || mid <= a || mid >= b ||
        ((b - a) <= opts.beta_tol && std::abs(gm) <= opts.pressure_tol))
      return {mid, gm, a, b};
    if ((gm > 0.0) == (ga > 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, g(mid), a, b};
}

// Minimum of a convex function on [a, b] by golden-section search.
std::pair<double, double> golden_min(const PressureFunction& g, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > tol) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
    if (c <= a || d >= b) break;
  }
  const double x = 0.5 * (a + b);
  return {x, g(x)};
}

KmsRoot bisect_between(const PressureFunction& g, double x, double y, const KmsOptions& opts) {
  return bisect(g, std::min(x, y), std::max(x, y), opts);
}

struct TailOutcome {
  std::vector<KmsRoot> roots;
  bool inconclusive = false;
  std::vector<std::string> warnings;
};

// Roots of the convex pressure curve beyond one end of the scan.
//   start, g0   scan end point and its pressure
//   inner       the scan sample next to it (further inside)
//   dir         +1 for the right tail, -1 for the left
//   limit_slope asymptotic slope of g in the outward direction
TailOutcome search_tail(const PressureFunction& g, double start, double inner, int dir,
                        double limit_slope, const KmsOptions& opts) {
  TailOutcome out;
  const double g0 = g(start);
  const double spacing = std::abs(start - inner);
  const double outward_secant = (g0 - g(inner)) / spacing;
  const int limit_sign = sign_of(limit_slope, opts.zero_tol);
  const double ptol = opts.pressure_tol;
  if (std::abs(g0) <= ptol) return out;  // reported by the scan

  const char* side = dir > 0 ? "right" : "left";
  auto give_up = [&] {
    out.inconclusive = true;
    out.warnings.push_back(std::string("no decision on the ") + side +
                           " tail within |beta| <= 1e6");
    return out;
  };

  // March outward with doubling steps until `stop(g(next))`; returns the
  // last two points or nullopt when the march leaves the search window.
  double prev_prev = inner;
  double prev = start;
  double step = spacing;
  auto march = [&](auto stop) -> std::optional<std::pair<double, double>> {
    while (true) {
      const double next = prev + dir * step;
      if (std::abs(next) > kMaxTailBeta) return std::nullopt;
      if (stop(g(next), g(prev))) return std::make_pair(prev, next);
      prev_prev = prev;
      prev = next;
      step *= 2.0;
    }
  };

  if (g0 < 0.0) {
    // Non-increasing outward: stays negative.
    if (limit_sign <= 0) return out;
    const auto hit = march([&](double gn, double) { return gn > -ptol; });
    if (!hit) return give_up();
    out.roots.push_back(bisect_between(g, hit->first, hit->second, opts));
    return out;
  }

  // g0 > 0. A zero limit slope means g decreases to a finite limit that it
  // never reaches (the pressure is analytic in beta and positive at 0).
  if (limit_sign == 0) return out;
  if (limit_sign < 0) {
    const auto hit = march([&](double gn, double) { return gn < ptol; });
    if (!hit) return give_up();
    out.roots.push_back(bisect_between(g, hit->first, hit->second, opts));
    return out;
  }
  // Eventually increasing; nothing to find if it already is.
  if (outward_secant >= 0.0) return out;
  const auto turn = march([&](double gn, double gp) { return gn < ptol || gn > gp; });
  if (!turn) return give_up();
  const auto [last, next] = *turn;
  if (g(next) < ptol) {
    out.roots.push_back(bisect_between(g, last, next, opts));
    prev_prev = last;
    prev = next;
    const auto back_up = march([&](double gn, double) { return gn > -ptol; });
    if (!back_up) return give_up();
    out.roots.push_back(bisect_between(g, back_up->first, back_up->second, opts));
    return out;
  }
  const auto [x, gx] = golden_min(g, std::min(prev_prev, next), std::max(prev_prev, next),
                                  opts.beta_tol);
  if (gx < -ptol) {
    out.roots.push_back(bisect_between(g, prev_prev, x, opts));
    out.roots.push_back(bisect_between(g, x, next, opts));
  } else if (gx <= ptol) {
    out.roots.push_back({x, gx, x, x});
    out.warnings.push_back("tangential root: the pressure minimum is numerically zero");
  }
  return out;
}

void require_exact(const ShiftSystem& sys) {
  if (!is_exact(sys))
    throw NotExactError("kms", "KMS analysis requires an exact (primitive) system");
}

void validate(const KmsOptions& opts) {
  if (!(opts.scan_min < opts.scan_max))
    throw DomainError("kms", "scan range must satisfy scan_min < scan_max");
  if (opts.scan_steps < 3) throw DomainError("kms", "scan needs at least 3 points");
  if (!(opts.beta_tol > 0.0) || !(opts.pressure_tol > 0.0) || !(opts.zero_tol >= 0.0))
    throw DomainError("kms", "tolerances must be positive");
}

}  // namespace

PressureFunction::PressureFunction(ShiftSystem sys, LocallyConstantPotential phi, RpfOptions opts,
                                   std::size_t cap)
    : sys_(std::move(sys)), phi_(std::move(phi)), opts_(opts), cap_(cap) {
  require_exact(sys_);
}

double PressureFunction::operator()(double beta) const {
  if (const auto it = cache_.find(beta); it != cache_.end()) return it->second;
  const double value = pressure(sys_, phi_ * (-beta), opts_, cap_);
  cache_.emplace(beta, value);
  return value;
}

double pressure_at(const ShiftSystem& sys, const LocallyConstantPotential& phi, double beta,
                   const RpfOptions& opts) {
  require_exact(sys);
  return pressure(sys, phi * (-beta), opts);
}

std::string to_string(SignClass c) {
  switch (c) {
    case SignClass::strictly_positive: return "strictly_positive";
    case SignClass::strictly_negative: return "strictly_negative";
    case SignClass::mixed: return "mixed";
    case SignClass::has_zero: return "has_zero";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unique_beta: return "unique_beta";
    case Verdict::kms_exists: return "kms_exists";
    case Verdict::no_kms_nonprincipal: return "no_kms_nonprincipal";
    case Verdict::no_kms_no_root: return "no_kms_no_root";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

SignClass sign_class(const LocallyConstantPotential& phi) {
  if (phi.min_value() > 0.0) return SignClass::strictly_positive;
  if (phi.max_value() < 0.0) return SignClass::strictly_negative;
  if (phi.min_value() < 0.0 && phi.max_value() > 0.0) return SignClass::mixed;
  return SignClass::has_zero;
}

KmsReport find_kms_beta(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                        const KmsOptions& opts) {
  require_exact(sys);
  validate(opts);
  const PressureFunction g(sys, phi, opts.rpf, opts.cap);

  KmsReport report;
  report.entropy = g(0.0);
  report.sign_class = sign_class(phi);
  report.cycle_means = cycle_mean_range(phi, opts.cap);

  const int steps = opts.scan_steps;
  const double spacing = (opts.scan_max - opts.scan_min) / (steps - 1);
  std::vector<double> betas(static_cast<std::size_t>(steps));
  std::vector<double> values(betas.size());
  for (int i = 0; i < steps; ++i) {
    const double beta = i + 1 == steps ? opts.scan_max : opts.scan_min + i * spacing;
    betas[static_cast<std::size_t>(i)] = beta;
    values[static_cast<std::size_t>(i)] = g(beta);
    report.pressure_curve.emplace_back(beta, values[static_cast<std::size_t>(i)]);
  }

  if (report.sign_class == SignClass::strictly_positive ||
      report.sign_class == SignClass::strictly_negative) {
    // The root lies between h / sup(phi) and h / inf(phi).
    const double a = report.entropy / phi.max_value();
    const double b = report.entropy / phi.min_value();
    double lo = std::min(a, b);
    double hi = std::max(a, b);
    report.bracket_used = std::make_pair(lo, hi);
    if (hi - lo <= opts.beta_tol) {
      const double mid = 0.5 * (lo + hi);
      report.roots.push_back({mid, g(mid), lo, hi});
    } else {
      // g is monotone; widen slightly if rounding puts an endpoint on the
      // wrong side of zero.
      const int direction = report.sign_class == SignClass::strictly_positive ? -1 : 1;
      double pad = opts.beta_tol;
      for (int i = 0; i < 60 && direction * g(lo) > 0.0; ++i, pad *= 2.0) lo -= pad;
      pad = opts.beta_tol;
      for (int i = 0; i < 60 && direction * g(hi) < 0.0; ++i, pad *= 2.0) hi += pad;
      report.roots.push_back(bisect(g, lo, hi, opts));
    }
  } else {
    std::vector<int> signs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) signs[i] = sign_of(values[i], opts.pressure_tol);
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n;) {
      if (signs[i] == 0) {
        std::size_t j = i;
        while (j + 1 < n && signs[j + 1] == 0) ++j;
        const int left = i > 0 ? signs[i - 1] : 0;
        const int right = j + 1 < n ? signs[j + 1] : 0;
        if (j > i) {
          report.roots.push_back({betas[i], values[i], betas[i], betas[i]});
          report.roots.push_back({betas[j], values[j], betas[j], betas[j]});
          report.warnings.push_back("pressure is numerically zero on an interval of beta; "
                                    "reporting its endpoints");
        } else if (left != 0 && right != 0 && left != right) {
          report.roots.push_back(bisect(g, betas[i - 1], betas[i + 1], opts));
        } else {
          report.roots.push_back({betas[i], values[i], betas[i], betas[i]});
        }
        i = j + 1;
        continue;
      }
      if (i + 1 < n && signs[i + 1] != 0 && signs[i + 1] != signs[i])
        report.roots.push_back(bisect(g, betas[i], betas[i + 1], opts));
      ++i;
    }

    // Convexity: an interior minimum between samples may dip below zero.
    if (report.roots.empty() && std::ranges::all_of(signs, [](int s) { return s > 0; })) {
      const auto idx = static_cast<std::size_t>(std::ranges::min_element(values) - values.begin());
      if (idx > 0 && idx + 1 < n) {
        const auto [x, gx] = golden_min(g, betas[idx - 1], betas[idx + 1], opts.beta_tol);
        if (gx < -opts.pressure_tol) {
          report.roots.push_back(bisect(g, betas[idx - 1], x, opts));
          report.roots.push_back(bisect(g, x, betas[idx + 1], opts));
        } else if (gx <= opts.pressure_tol) {
          report.roots.push_back({x, gx, x, x});
          report.warnings.push_back("tangential root: the pressure minimum is numerically zero");
        }
      }
    }

    // g'(beta) tends to -min_mean at +inf and -max_mean at -inf.
    for (auto tail : {search_tail(g, betas[n - 1], betas[n - 2], +1,
                                  -report.cycle_means.min_mean, opts),
                      search_tail(g, betas[0], betas[1], -1, report.cycle_means.max_mean, opts)}) {
      report.roots.insert(report.roots.end(), tail.roots.begin(), tail.roots.end());
      report.warnings.insert(report.warnings.end(), tail.warnings.begin(), tail.warnings.end());
      report.inconclusive = report.inconclusive || tail.inconclusive;
    }

    std::ranges::sort(report.roots, {}, &KmsRoot::beta);
    const auto dup = std::ranges::unique(report.roots, [&](const KmsRoot& a, const KmsRoot& b) {
      return std::abs(a.beta - b.beta) <= opts.beta_tol;
    });
    report.roots.erase(dup.begin(), dup.end());
    if (report.roots.size() > 2) {
      report.inconclusive = true;
      report.warnings.push_back("more than two roots found for a convex pressure curve");
    }
  }

  for (const auto& root : report.roots) {
    if (std::abs(g(root.beta)) > opts.pressure_tol) {
      report.inconclusive = true;
      report.warnings.push_back("root at beta = " + std::to_string(root.beta) +
                                " does not meet the pressure tolerance");
    }
  }
  if (report.inconclusive) report.verdict = Verdict::inconclusive;
  return report;
}

std::optional<double> evans_solve(std::span<const double> lambda, double tol) {
  if (lambda.size() < 2) throw DomainError("kms", "Evans' equation needs at least two weights");
  const bool positive = std::ranges::all_of(lambda, [](double l) { return l > 0.0; });
  const bool negative = std::ranges::all_of(lambda, [](double l) { return l < 0.0; });
  if (!positive && !negative) return std::nullopt;
  const double sign = positive ? 1.0 : -1.0;

  // F(beta) = log sum exp(-beta * lambda_j) with lambda made positive; F is
  // convex and decreasing, so Newton from beta = 0 (F = log n > 0) climbs
  // monotonically to the root.
  auto f_and_slope = [&](double beta) {
    double top = -std::numeric_limits<double>::infinity();
    for (double l : lambda) top = std::max(top, -beta * sign * l);
    double sum = 0.0, weighted = 0.0;
    for (double l : lambda) {
      const double w = std::exp(-beta * sign * l - top);
      sum += w;
      weighted += sign * l * w;
    }
    return std::make_pair(top + std::log(sum), -weighted / sum);
  };
  double beta = 0.0;
  for (int it = 0; it < 500; ++it) {
    const auto [f, slope] = f_and_slope(beta);
    const double step = -f / slope;
    beta += step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(beta))) break;
  }
  return sign * beta;
}

double zacharias_check(const ShiftSystem& sys, std::span<const double> lambda, double beta,
                       const RpfOptions& opts) {
  require_exact(sys);
  const int n = sys.alphabet_size();
  if (static_cast<int>(lambda.size()) != n)
    throw DomainError("kms", "expected " + std::to_string(n) + " weights, got " +
                                 std::to_string(lambda.size()));
  Eigen::VectorXd exponents(n);
  for (int i = 0; i < n; ++i) exponents(i) = -beta * lambda[static_cast<std::size_t>(i)];
  const double shift = exponents.maxCoeff();
  const Eigen::MatrixXd scaled = (exponents.array() - shift).exp().matrix().asDiagonal() *
                                 sys.transitions().cast<double>();
  return std::exp(shift) * perron_vector(scaled, opts.tol, opts.max_iter).value;
}

PrincipalityResult check_principality(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                      int max_period, double tol, std::size_t cap) {
  if (max_period < 1) throw DomainError("kms", "maximum period must be at least 1");
  PrincipalityResult out;
  out.max_period = max_period;
  const auto cls = sign_class(phi);
  if (cls == SignClass::strictly_positive || cls == SignClass::strictly_negative) {
    out.by_sign = true;
    return out;
  }
  for (auto& orbit : periodic_orbits(sys, max_period, cap)) {
    const double sum = birkhoff_sum(phi, orbit);
    if (std::abs(sum) <= tol) out.violations.push_back({std::move(orbit), sum});
  }
  out.principal = out.violations.empty();
  return out;
}

KmsReport classify(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                   const KmsOptions& opts) {
  KmsReport report = find_kms_beta(sys, phi, opts);
  report.bowen = bowen_constant(phi);
  const bool bowen_certified = report.bowen.c == 0.0;

  int period = opts.max_period;
  const bool strict = report.sign_class == SignClass::strictly_positive ||
                      report.sign_class == SignClass::strictly_negative;
  if (!strict) {
    const auto counts = orbit_counts(sys, period);
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    while (period > 1 && total > static_cast<double>(opts.cap))
      total -= counts[static_cast<std::size_t>(--period)];
    if (period < opts.max_period)
      report.warnings.push_back("principality checked only up to period " +
                                std::to_string(period) + " to stay within the orbit cap");
  }
  report.principality = check_principality(sys, phi, period, opts.zero_tol, opts.cap);

  if (strict) {
    report.verdict = report.inconclusive || report.roots.size() != 1 ? Verdict::inconclusive
                                                                     : Verdict::unique_beta;
    report.unique_kms = report.verdict == Verdict::unique_beta && bowen_certified;
    return report;
  }
  if (report.inconclusive) {
    report.verdict = Verdict::inconclusive;
    return report;
  }
  const bool principal = report.principality.principal;
  if (!principal) {
    // The measure on a zero-sum orbit gives P >= 0, and equality would make
    // it an equilibrium state, which is impossible. P > 0 everywhere, so a
    // numerically vanishing pressure is an asymptote, not a root.
    const bool all_positive = std::ranges::all_of(
        report.pressure_curve, [&](const auto& s) { return s.second > -opts.pressure_tol; });
    if (!all_positive) {
      report.verdict = Verdict::inconclusive;
      report.warnings.push_back("non-principal potential with a negative sampled pressure; "
                                "the zero test may be too coarse");
      return report;
    }
    for (const auto& root : report.roots)
      report.warnings.push_back("pressure is numerically zero near beta = " +
                                std::to_string(root.beta) +
                                " but stays positive along a zero-sum orbit");
    report.roots.clear();
    report.verdict = Verdict::no_kms_nonprincipal;
    return report;
  }
  if (!report.roots.empty()) {
    report.verdict = Verdict::kms_exists;
    report.unique_kms = bowen_certified;
    return report;
  }
  report.verdict = Verdict::no_kms_no_root;
  return report;
}

}  // namespace gibbs
