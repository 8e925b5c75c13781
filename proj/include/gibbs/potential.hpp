#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gibbs/symbolic.hpp"

namespace gibbs {

// A potential that depends only on the first `depth` coordinates, stored as a
// dense table indexed by the base-n code of the leading word. Inadmissible
// codes hold NaN and are never read through the checked accessors.
class LocallyConstantPotential {
 public:
  // The table domain must be exactly the admissible words of length `depth`.
  static LocallyConstantPotential from_table(const ShiftSystem& sys, int depth,
                                             const std::map<Word, double>& values,
                                             std::size_t cap = kDefaultWordCap);
  static LocallyConstantPotential from_function(const ShiftSystem& sys, int depth,
                                                const std::function<double(const Word&)>& fn,
                                                std::size_t cap = kDefaultWordCap);
  static LocallyConstantPotential constant(const ShiftSystem& sys, double c);
  // Depth-1 potential x -> weights[x_0].
  static LocallyConstantPotential letter_weights(const ShiftSystem& sys,
                                                 std::span<const double> weights);

  int depth() const noexcept { return depth_; }
  const ShiftSystem& system() const noexcept { return system_; }
  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }

  // Value on the cylinder of the first depth() symbols. No admissibility check.
  double operator()(std::span<const Symbol> leading) const {
    return table_[word_code(leading.first(static_cast<std::size_t>(depth_)),
                            system_.alphabet_size())];
  }

  // Table entries in lexicographic order of the words.
  std::vector<std::pair<Word, double>> entries() const;

  // Same function viewed as a depth-`depth` table (depth >= this->depth()).
  LocallyConstantPotential extended(int depth, std::size_t cap = kDefaultWordCap) const;

  LocallyConstantPotential operator*(double c) const;
  LocallyConstantPotential operator+(double c) const;
  LocallyConstantPotential operator-() const { return *this * -1.0; }
  // Pointwise sum; the shallower table is extended to the common depth.
  LocallyConstantPotential operator+(const LocallyConstantPotential& other) const;

  friend bool operator==(const LocallyConstantPotential& a, const LocallyConstantPotential& b) {
    return a.system_ == b.system_ && a.depth_ == b.depth_ && a.entries() == b.entries();
  }

 private:
  LocallyConstantPotential(ShiftSystem sys, int depth, std::vector<double> table);
  void refresh_extrema();

  ShiftSystem system_;
  int depth_ = 1;
  std::vector<double> table_;
  double min_ = 0.0;
  double max_ = 0.0;
};

// phi(x) = psi(Tx) - psi(x) for a table psi; its Birkhoff sums vanish on
// every periodic orbit.
LocallyConstantPotential coboundary(const LocallyConstantPotential& psi);

// Checked lookup: w must be admissible with |w| >= depth.
double evaluate(const LocallyConstantPotential& phi, const Word& w);

// phi(x) + phi(Tx) + ... + phi(T^{p-1}x) at the periodic point of the orbit.
double birkhoff_sum(const LocallyConstantPotential& phi, const PeriodicOrbit& orbit);

// Bowen/Walters certificate relative to the metric d(x,y) = 2^-min{i : x_i != y_i}.
struct BowenConstant {
  double delta = 0.0;
  double c = 0.0;
};

BowenConstant bowen_constant(const LocallyConstantPotential& phi);

// Extreme Birkhoff averages over all periodic orbits (Karp's minimum and
// maximum mean cycle on the graph of cylinders). Their negatives are the
// asymptotic slopes of beta -> P(T, -beta phi) at -inf (max) and +inf (min).
struct CycleMeanRange {
  double min_mean = 0.0;
  double max_mean = 0.0;
};

CycleMeanRange cycle_mean_range(const LocallyConstantPotential& phi,
                                std::size_t cap = kDefaultWordCap);

}  // namespace gibbs
