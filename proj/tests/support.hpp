#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the library's eigen or enumeration
// code paths; the oracles recompute everything from the raw 0/1 matrix.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "gibbs/potential.hpp"
#include "gibbs/symbolic.hpp"

namespace testing_support {

using gibbs::LocallyConstantPotential;
using gibbs::ShiftSystem;
using gibbs::TransitionMatrix;
using gibbs::Word;

inline TransitionMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  TransitionMatrix a(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

inline ShiftSystem period_two() { return gibbs::validate_system(2, matrix({{0, 1}, {1, 0}})); }

// Primitive, not a full shift, and not symmetric.
inline ShiftSystem three_state() {
  return gibbs::validate_system(3, matrix({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
}

// log(4/3) on the cylinder [01], -log 3 elsewhere, on the full 2-shift.
inline LocallyConstantPotential nonpos_potential() {
  const auto sys = gibbs::full_shift(2);
  return LocallyConstantPotential::from_function(sys, 2, [](const Word& w) {
    return (w[0] == 0 && w[1] == 1) ? std::log(4.0 / 3.0) : -std::log(3.0);
  });
}

struct Fixture {
  std::string name;
  ShiftSystem sys;
  LocallyConstantPotential phi;
};

// Exact systems with potentials of depth 1 to 3.
inline std::vector<Fixture> fixtures() {
  using P = LocallyConstantPotential;
  const auto f2 = gibbs::full_shift(2);
  const auto f3 = gibbs::full_shift(3);
  const auto gm = gibbs::golden_mean_shift();
  const auto t3 = three_state();
  const std::vector<double> w2{0.3, -0.7};
  const std::vector<double> w3{0.5, 1.25, -0.4};
  const std::vector<double> wg{1.0, 2.0};
  std::vector<Fixture> out;
  out.push_back({"full2 zero", f2, P::constant(f2, 0.0)});
  out.push_back({"full2 letters", f2, P::letter_weights(f2, w2)});
  out.push_back({"full2 nonpos", f2, nonpos_potential()});
  out.push_back({"full2 depth3", f2, P::from_function(f2, 3, [](const Word& w) {
                   return 0.1 * w[0] - 0.35 * w[1] + 0.2 * w[0] * w[2] + 0.05;
                 })});
  out.push_back({"full3 letters", f3, P::letter_weights(f3, w3)});
  out.push_back({"full3 depth2", f3, P::from_function(f3, 2, [](const Word& w) {
                   return std::sin(1.0 + w[0] + 2.0 * w[1]);
                 })});
  out.push_back({"golden letters", gm, P::letter_weights(gm, wg)});
  out.push_back({"golden depth3", gm, P::from_function(gm, 3, [](const Word& w) {
                   return 0.4 * w[0] + 0.3 * w[2] - 0.2;
                 })});
  out.push_back({"three-state depth2", t3, P::from_function(t3, 2, [](const Word& w) {
                   return 0.25 * w[0] - 0.5 * w[1] + 0.1;
                 })});
  return out;
}

// Admissibility straight from the matrix.
inline bool naive_admissible(const TransitionMatrix& a, const std::vector<int>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (a(w[i], w[i + 1]) == 0) return false;
  return true;
}

// Every string of the given length over n letters, admissible or not.
inline std::vector<std::vector<int>> all_strings(int n, int length) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(length), 0);
  const auto total = static_cast<std::size_t>(std::llround(std::pow(n, length)));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = length - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::size_t>(n));
      c /= static_cast<std::size_t>(n);
    }
    out.push_back(w);
  }
  return out;
}

// phi evaluated on its leading `depth` symbols starting at offset i.
inline double phi_at(const LocallyConstantPotential& phi, const std::vector<int>& w,
                     std::size_t i) {
  return phi(std::span<const int>(w).subspan(i, static_cast<std::size_t>(phi.depth())));
}

// (L^n 1)(u) for every admissible word u of length `level`, by summing
// exp(S_n phi) over all admissible strings v u with |v| = n. Result is in
// lexicographic order of u.
inline std::vector<double> brute_force_iterate(const ShiftSystem& sys,
                                               const LocallyConstantPotential& phi, int level,
                                               int n) {
  const auto& a = sys.transitions();
  const int q = sys.alphabet_size();
  std::vector<double> out;
  for (const auto& u : all_strings(q, level)) {
    if (!naive_admissible(a, u)) continue;
    double total = 0.0;
    for (const auto& v : all_strings(q, n)) {
      std::vector<int> w = v;
      w.insert(w.end(), u.begin(), u.end());
      if (!naive_admissible(a, w)) continue;
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += phi_at(phi, w, static_cast<std::size_t>(i));
      total += std::exp(s);
    }
    out.push_back(total);
  }
  return out;
}

// Spectral radius via a general dense eigensolver.
inline double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double best = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    best = std::max(best, std::abs(es.eigenvalues()(i)));
  return best;
}

// Pressure of a depth-<=2 potential from the edge-weighted matrix
// W(a, b) = A(a, b) exp(phi(ab)) and a dense eigensolver.
inline double oracle_pressure(const ShiftSystem& sys, const LocallyConstantPotential& phi) {
  const int q = sys.alphabet_size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (!sys.allowed(a, b)) continue;
      const std::vector<int> ab{a, b};
      w(a, b) = std::exp(phi(std::span<const int>(ab)));
    }
  return std::log(spectral_radius(w));
}

// Number of points of period dividing p: trace(A^p).
inline double fixed_points(const TransitionMatrix& a, int p) {
  Eigen::MatrixXd m = a.cast<double>();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) power = power * m;
  return power.trace();
}

// Random strictly positive potential of depth 1 or 2.
inline LocallyConstantPotential random_positive(const ShiftSystem& sys, std::mt19937& rng) {
  std::uniform_int_distribution<int> depth(1, 2);
  std::uniform_real_distribution<double> value(0.05, 3.0);
  const int k = depth(rng);
  return LocallyConstantPotential::from_function(sys, k, [&](const Word&) { return value(rng); });
}

}  // namespace testing_support
