#pragma once

#include <cmath>
#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include "gibbs/error.hpp"

namespace gibbs {

template <typename Scalar>
struct PerronPair {
  Scalar value{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // nonnegative, sums to 1
  Scalar residual{};  // ||M v - value v||_inf / (value ||v||_inf)
  int iterations = 0;
};

namespace detail {

// Power iteration on the shifted operator M + s I with s = value / 2. The
// shift keeps the Perron root dominant and damps the rest of the peripheral
// circle, so nearly periodic patterns still converge. Works for any Eigen
// expression supporting `m * v`: dense, sparse and transposes.
template <typename MatrixType>
std::optional<PerronPair<typename MatrixType::Scalar>> power_iterate(
    const MatrixType& m, typename MatrixType::Scalar tol, int max_iter,
    PerronPair<typename MatrixType::Scalar>* last = nullptr) {
  using Scalar = typename MatrixType::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw DomainError("perron", "matrix must be square and non-empty");

  PerronPair<Scalar> out;
  Vector v = Vector::Constant(n, Scalar(1) / static_cast<Scalar>(n));
  for (int it = 1; it <= max_iter; ++it) {
    const Vector y = m * v;
    const Scalar value = y.sum();
    if (!(value > Scalar(0)) || !std::isfinite(static_cast<double>(value)))
      throw ConvergenceError("perron", "iterate lost positivity (value " +
                                           std::to_string(static_cast<double>(value)) + ")");
    const Scalar residual = (y - value * v).cwiseAbs().maxCoeff() / (value * v.maxCoeff());
    if (residual <= tol) {
      out.value = value;
      out.vector = v;
      out.residual = residual;
      out.iterations = it;
      return out;
    }
    v = (y + Scalar(0.5) * value * v) / (Scalar(1.5) * value);
    if (last != nullptr) {
      last->value = value;
      last->vector = v;
      last->residual = residual;
      last->iterations = it;
    }
  }
  return std::nullopt;
}

// Noda iteration: x <- (s I - M)^-1 x with s = max_i (M x)_i / x_i, the
// Collatz-Wielandt upper bound. s > rho(M) keeps the resolvent nonnegative,
// and convergence is quadratic however close the subdominant eigenvalue is.
template <typename Scalar>
std::optional<PerronPair<Scalar>> noda_iterate(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x, Scalar tol, int max_iter) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = m.rows();
  x /= x.sum();
  for (int it = 1; it <= max_iter; ++it) {
    const Vector y = m * x;
    const Scalar value = y.sum();
    const Scalar residual = (y - value * x).cwiseAbs().maxCoeff() / (value * x.maxCoeff());
    if (residual <= tol) return PerronPair<Scalar>{value, x, residual, it};
    if ((x.array() <= Scalar(0)).any()) return std::nullopt;
    const Scalar upper = y.cwiseQuotient(x).maxCoeff();
    const Matrix shifted = upper * Matrix::Identity(n, n) - m;
    Vector z = shifted.partialPivLu().solve(x);
    if (!z.allFinite()) return std::nullopt;
    z = z.cwiseAbs();
    x = z / z.sum();
  }
  return std::nullopt;
}

// Osborne balancing with power-of-two factors: returns d such that
// diag(d) M diag(d)^-1 has comparable off-diagonal row and column norms.
// Nonnegative matrices with a huge dynamic range are close to defective
// before balancing and close to normal after it.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> balancing_scale(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = m.rows();
  Matrix b = m;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Ones(n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar col(0), row(0);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += b(j, i) * b(j, i);
        row += b(i, j) * b(i, j);
      }
      if (!(col > Scalar(0)) || !(row > Scalar(0))) continue;
      const int exponent = static_cast<int>(std::lround(std::log2(static_cast<double>(row / col)) / 4));
      if (exponent == 0) continue;
      const Scalar f = std::ldexp(Scalar(1), exponent);
      // row i scaled by 1/f, column i by f
      b.row(i) /= f;
      b.col(i) *= f;
      d(i) /= f;
      changed = true;
    }
    if (!changed) break;
  }
  return d;
}

}  // namespace detail

// Perron root and vector of a nonnegative matrix with a primitive pattern.
// Dense matrices are balanced first; the returned vector is in the original
// coordinates and the residual is measured there. If power iteration has
// not converged after 2000 steps, Noda iteration finishes the job.
template <typename Derived>
PerronPair<typename Derived::Scalar> perron_vector(const Eigen::MatrixBase<Derived>& m,
                                                   typename Derived::Scalar tol, int max_iter) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix dense = m;
  const auto d = detail::balancing_scale(dense);
  const Matrix balanced = d.asDiagonal() * dense * d.cwiseInverse().asDiagonal();
  // Power iteration first; a tight subdominant eigenvalue hands over to Noda.
  constexpr int kPowerBudget = 2000;
  PerronPair<Scalar> last;
  auto found = detail::power_iterate(balanced, tol, std::min(max_iter, kPowerBudget), &last);
  if (!found && max_iter > kPowerBudget) {
    found = detail::noda_iterate<Scalar>(balanced, last.vector, tol, 200);
    if (found) found->iterations += last.iterations;
  }
  if (!found)
    throw ConvergenceError("perron", "no convergence within " + std::to_string(max_iter) +
                                         " iterations");
  auto out = *found;
  // M' = D M D^-1, so M (D^-1 x) = value D^-1 x.
  out.vector = out.vector.cwiseQuotient(d);
  out.vector /= out.vector.sum();
  out.residual = (dense * out.vector - out.value * out.vector).cwiseAbs().maxCoeff() /
                 (out.value * out.vector.maxCoeff());
  // Undoing the scaling can cost a few digits; polish in original coordinates.
  if (out.residual > tol) {
    if (auto polished = detail::noda_iterate<Scalar>(dense, out.vector, tol, 8)) {
      polished->iterations += out.iterations;
      out = *polished;
    }
  }
  return out;
}

template <typename Derived>
PerronPair<typename Derived::Scalar> perron_vector(const Eigen::SparseMatrixBase<Derived>& m,
                                                   typename Derived::Scalar tol, int max_iter) {
  auto found = detail::power_iterate(m.derived(), tol, max_iter);
  if (!found)
    throw ConvergenceError("perron", "no convergence within " + std::to_string(max_iter) +
                                         " iterations");
  return *found;
}

// Period of the directed graph with an edge u -> v wherever m(u, v) > 0;
// returns 0 when the graph is not strongly connected. Primitive iff 1.
template <typename Derived>
int pattern_period(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index n = m.rows();
  auto reach = [&](bool transpose) {
    Eigen::VectorXi level = Eigen::VectorXi::Constant(n, -1);
    Eigen::VectorXi queue(n);
    Eigen::Index head = 0, tail = 0;
    level(0) = 0;
    queue(tail++) = 0;
    while (head < tail) {
      const Eigen::Index u = queue(head++);
      for (Eigen::Index w = 0; w < n; ++w) {
        const auto entry = transpose ? m(w, u) : m(u, w);
        if (entry > 0 && level(w) < 0) {
          level(w) = level(u) + 1;
          queue(tail++) = static_cast<int>(w);
        }
      }
    }
    return level;
  };
  const Eigen::VectorXi forward = reach(false);
  if ((forward.array() < 0).any() || (reach(true).array() < 0).any()) return 0;
  int g = 0;
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index w = 0; w < n; ++w)
      if (m(u, w) > 0) g = std::gcd(g, std::abs(forward(u) + 1 - forward(w)));
  return g;
}

}  // namespace gibbs
