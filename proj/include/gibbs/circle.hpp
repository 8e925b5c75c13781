#pragma once

#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gibbs/transfer.hpp"

namespace gibbs {

// The expanding circle map x -> n x (mod 1).
struct CircleSystem {
  int n = 2;

  static CircleSystem make(int n);
};

// A potential sampled on the uniform grid x_i = i / m.
class GridPotential {
 public:
  explicit GridPotential(Eigen::VectorXd samples);

  static GridPotential sample(int m, const std::function<double(double)>& fn);
  static GridPotential constant(int m, double c);
  // amplitude * cos(2 pi x)
  static GridPotential cosine(int m, double amplitude);

  int size() const noexcept { return static_cast<int>(samples_.size()); }
  const Eigen::VectorXd& samples() const noexcept { return samples_; }
  // Periodic linear interpolation.
  double at(double x) const;

  GridPotential operator*(double c) const { return GridPotential(samples_ * c); }
  GridPotential operator+(double c) const {
    return GridPotential((samples_.array() + c).matrix());
  }
  // Every other sample; requires an even grid size.
  GridPotential coarsened() const;

 private:
  Eigen::VectorXd samples_;
};

using CircleOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Collocation matrix of L_phi on the grid:
//   (L f)(x_i) = sum_j exp(phi(y_ij)) f(y_ij),  y_ij = (x_i + j) / n,
// with f and phi at off-grid points taken by periodic linear interpolation.
// Each row has at most 2n nonzeros. Requires m >= 2n.
CircleOperator build_circle_operator(const CircleSystem& sys, const GridPotential& phi);

struct CirclePressure {
  double pressure = 0.0;
  // |P(m) - P(m/2)|; +inf when the grid cannot be halved (m odd or m/2 < 2n).
  double err_estimate = 0.0;
};

CirclePressure circle_pressure(const CircleSystem& sys, const GridPotential& phi,
                               const RpfOptions& opts = {});

}  // namespace gibbs
