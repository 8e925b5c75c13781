#include "gibbs/circle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gibbs/error.hpp"
#include "gibbs/perron.hpp"

namespace gibbs {

CircleSystem CircleSystem::make(int n) {
  if (n < 2) throw DomainError("circle", "expansion degree must be at least 2");
  return CircleSystem{n};
}

GridPotential::GridPotential(Eigen::VectorXd samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("circle", "grid needs at least 2 samples");
  if (!samples_.allFinite()) throw DomainError("circle", "grid samples must be finite");
}

GridPotential GridPotential::sample(int m, const std::function<double(double)>& fn) {
  if (m < 2) throw DomainError("circle", "grid needs at least 2 samples");
  Eigen::VectorXd s(m);
  for (int i = 0; i < m; ++i) s(i) = fn(static_cast<double>(i) / m);
  return GridPotential(std::move(s));
}

GridPotential GridPotential::constant(int m, double c) {
  return sample(m, [c](double) { return c; });
}

GridPotential GridPotential::cosine(int m, double amplitude) {
  return sample(m, [amplitude](double x) { return amplitude * std::cos(2.0 * std::numbers::pi * x); });
}

double GridPotential::at(double x) const {
  const int m = size();
  const double pos = (x - std::floor(x)) * m;
  const double base = std::floor(pos);
  const double t = pos - base;
  const int i0 = static_cast<int>(base) % m;
  return (1.0 - t) * samples_(i0) + t * samples_((i0 + 1) % m);
}

GridPotential GridPotential::coarsened() const {
  if (size() % 2 != 0) throw DomainError("circle", "cannot halve an odd grid");
  Eigen::VectorXd s(size() / 2);
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = samples_(2 * i);
  return GridPotential(std::move(s));
}

CircleOperator build_circle_operator(const CircleSystem& sys, const GridPotential& phi) {
  const int m = phi.size();
  const int n = sys.n;
  if (m < 2 * n)
    throw DomainError("circle", "grid size " + std::to_string(m) + " is below 2n = " +
                                    std::to_string(2 * n));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * n * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      // Preimage (x_i + j) / n in grid units; integer arithmetic keeps the
      // node index exact.
      const long numerator = static_cast<long>(i) + static_cast<long>(j) * m;
      const long node = numerator / n;
      const double t = static_cast<double>(numerator % n) / n;
      const int left = static_cast<int>(node % m);
      const int right = (left + 1) % m;
      const double weight =
          std::exp((1.0 - t) * phi.samples()(left) + t * phi.samples()(right));
      triplets.emplace_back(i, left, weight * (1.0 - t));
      if (t > 0.0) triplets.emplace_back(i, right, weight * t);
    }
  }
  CircleOperator op(m, m);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

namespace {

double collocation_pressure(const CircleSystem& sys, const GridPotential& phi,
                            const RpfOptions& opts) {
  const double shift = phi.samples().maxCoeff();
  const CircleOperator op = build_circle_operator(sys, phi + (-shift));
  return shift + std::log(perron_vector(op, opts.tol, opts.max_iter).value);
}

}  // namespace

CirclePressure circle_pressure(const CircleSystem& sys, const GridPotential& phi,
                               const RpfOptions& opts) {
  CirclePressure out;
  out.pressure = collocation_pressure(sys, phi, opts);
  const int m = phi.size();
  if (m % 2 == 0 && m / 2 >= 2 * sys.n)
    out.err_estimate = std::abs(out.pressure - collocation_pressure(sys, phi.coarsened(), opts));
  else
    out.err_estimate = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace gibbs
