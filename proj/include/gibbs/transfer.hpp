#pragma once

#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "gibbs/potential.hpp"
#include "gibbs/symbolic.hpp"

namespace gibbs {

// The transfer operator L_phi restricted to functions of the first `level`
// coordinates, level = max(depth - 1, 1). Row u is the cylinder where L f is
// evaluated; column v = v_0 u_0 ... u_{level-2} is the preimage cylinder:
//
//   entries(u, v) = exp(phi(v_0 u))  if v_0 u is admissible, else 0.
//
// This is the transpose of the matrix that weights transitions v_0 -> u_0.
// Spectral radius and the (right, left) eigenvector pair only swap roles
// under transposition, so nothing downstream depends on the choice.
struct TransferMatrix {
  int level = 1;
  std::vector<Word> index;
  Eigen::MatrixXd entries;

  Eigen::Index size() const noexcept { return entries.rows(); }
  // Position of a word of length `level` in `index`, or -1.
  Eigen::Index position(const Word& w) const;

  std::unordered_map<std::uint64_t, Eigen::Index> lookup;
  int alphabet_size = 0;
  // Set when built from a primitive system. The pattern of `entries` can
  // lose edges to underflow, so the structure is taken from the system.
  bool primitive = false;
};

TransferMatrix build_transfer_matrix(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                     std::size_t cap = kDefaultWordCap);

struct RpfOptions {
  double tol = 1e-12;
  int max_iter = 100'000;
};

// Ruelle-Perron-Frobenius triple. h is the right eigenvector (eigenfunction),
// nu the left one (eigenmeasure), normalized so sum(nu) = 1 and nu . h = 1.
// Residuals are relative: ||M h - lambda h||_inf / (lambda ||h||_inf), and
// likewise for nu.
struct RpfData {
  double lambda = 0.0;
  Eigen::VectorXd h;
  Eigen::VectorXd nu;
  double right_residual = 0.0;
  double left_residual = 0.0;
  int iterations = 0;
};

// Throws NotExactError if the pattern of M is not primitive and
// ConvergenceError if either power iteration stalls.
RpfData rpf_eigendata(const TransferMatrix& m, const RpfOptions& opts = {});

// P(T, phi) = log of the Perron root. The potential is shifted by its maximum
// before exponentiation, so large |phi| does not overflow.
double pressure(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                const RpfOptions& opts = {}, std::size_t cap = kDefaultWordCap);

// min and max over level cylinders of (1/n) log (L^n 1), computed by direct
// enumeration of all admissible preimage words of length n. The eigenvalue
// route is checked to lie inside [lo, hi].
struct PressureSandwich {
  double lo = 0.0;
  double hi = 0.0;
  double pressure = 0.0;

  double width() const noexcept { return hi - lo; }
};

PressureSandwich pressure_sandwich(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                   int n, const RpfOptions& opts = {},
                                   std::size_t cap = kDefaultWordCap);

// Masses of all admissible cylinders of a fixed depth, words in lexicographic
// order.
struct CylinderMeasure {
  int depth = 0;
  std::vector<Word> words;
  Eigen::VectorXd masses;

  // Mass of an admissible word of length `depth`; 0 for inadmissible words.
  double mass(const Word& w) const;
  // Push-forward to a shallower depth by summing over right extensions.
  CylinderMeasure marginal(int shallower) const;
};

// Gibbs measure from the eigenmeasure nu at the level, extended to depth m
// by the conformal recursion mass[u] = exp(phi(u)) mass[u_1...] / lambda.
CylinderMeasure cylinder_measure(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                 const RpfData& rpf, int m, std::size_t cap = kDefaultWordCap);

}  // namespace gibbs
