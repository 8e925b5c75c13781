#include "gibbs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "gibbs/error.hpp"

namespace gibbs {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::size_t table_size(int n, int depth, std::size_t cap) {
  if (depth < 1) throw DomainError("potential", "depth must be at least 1");
  double size = std::pow(static_cast<double>(n), depth);
  if (size > static_cast<double>(cap))
    throw CapExceededError("potential", "table of depth " + std::to_string(depth) +
                                            " exceeds the cap of " + std::to_string(cap));
  return static_cast<std::size_t>(size);
}

}  // namespace

LocallyConstantPotential::LocallyConstantPotential(ShiftSystem sys, int depth,
                                                   std::vector<double> table)
    : system_(std::move(sys)), depth_(depth), table_(std::move(table)) {
  refresh_extrema();
}

void LocallyConstantPotential::refresh_extrema() {
  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (std::isnan(v)) continue;
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
}

LocallyConstantPotential LocallyConstantPotential::from_table(const ShiftSystem& sys, int depth,
                                                              const std::map<Word, double>& values,
                                                              std::size_t cap) {
  const int n = sys.alphabet_size();
  std::vector<double> table(table_size(n, depth, cap), kMissing);
  for (const auto& [word, value] : values) {
    if (static_cast<int>(word.size()) != depth)
      throw DomainError("potential", "word \"" + word.str() + "\" does not have length " +
                                         std::to_string(depth));
    if (!sys.is_admissible(word))
      throw DomainError("potential", "word \"" + word.str() + "\" is not admissible");
    if (!std::isfinite(value))
      throw DomainError("potential", "value for word \"" + word.str() + "\" is not finite");
    table[word_code(word.symbols(), n)] = value;
  }
  for (const auto& word : admissible_words(sys, depth, cap))
    if (std::isnan(table[word_code(word.symbols(), n)]))
      throw DomainError("potential", "missing value for word \"" + word.str() + "\"");
  return LocallyConstantPotential(sys, depth, std::move(table));
}

LocallyConstantPotential LocallyConstantPotential::from_function(
    const ShiftSystem& sys, int depth, const std::function<double(const Word&)>& fn,
    std::size_t cap) {
  const int n = sys.alphabet_size();
  std::vector<double> table(table_size(n, depth, cap), kMissing);
  for (const auto& word : admissible_words(sys, depth, cap)) {
    const double value = fn(word);
    if (!std::isfinite(value))
      throw DomainError("potential", "value for word \"" + word.str() + "\" is not finite");
    table[word_code(word.symbols(), n)] = value;
  }
  return LocallyConstantPotential(sys, depth, std::move(table));
}

LocallyConstantPotential LocallyConstantPotential::constant(const ShiftSystem& sys, double c) {
  return from_function(sys, 1, [c](const Word&) { return c; });
}

LocallyConstantPotential LocallyConstantPotential::letter_weights(const ShiftSystem& sys,
                                                                  std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != sys.alphabet_size())
    throw DomainError("potential", "expected " + std::to_string(sys.alphabet_size()) +
                                       " letter weights, got " + std::to_string(weights.size()));
  return from_function(sys, 1, [&](const Word& w) { return weights[static_cast<std::size_t>(w[0])]; });
}

std::vector<std::pair<Word, double>> LocallyConstantPotential::entries() const {
  std::vector<std::pair<Word, double>> out;
  for (auto& word : admissible_words(system_, depth_, table_.size())) {
    const double value = (*this)(word.symbols());
    out.emplace_back(std::move(word), value);
  }
  return out;
}

LocallyConstantPotential LocallyConstantPotential::extended(int depth, std::size_t cap) const {
  if (depth < depth_)
    throw DomainError("potential", "cannot extend a depth-" + std::to_string(depth_) +
                                       " potential to depth " + std::to_string(depth));
  if (depth == depth_) return *this;
  return from_function(system_, depth, [this](const Word& w) { return (*this)(w.symbols()); },
                       cap);
}

LocallyConstantPotential LocallyConstantPotential::operator*(double c) const {
  LocallyConstantPotential out = *this;
  for (double& v : out.table_) v *= c;
  out.refresh_extrema();
  return out;
}

LocallyConstantPotential LocallyConstantPotential::operator+(double c) const {
  LocallyConstantPotential out = *this;
  for (double& v : out.table_) v += c;
  out.refresh_extrema();
  return out;
}

LocallyConstantPotential LocallyConstantPotential::operator+(
    const LocallyConstantPotential& other) const {
  if (!(system_ == other.system_))
    throw DomainError("potential", "cannot add potentials on different systems");
  const int depth = std::max(depth_, other.depth_);
  return from_function(system_, depth,
                       [&](const Word& w) { return (*this)(w.symbols()) + other(w.symbols()); });
}

LocallyConstantPotential coboundary(const LocallyConstantPotential& psi) {
  const int depth = psi.depth() + 1;
  return LocallyConstantPotential::from_function(psi.system(), depth, [&](const Word& w) {
    return psi(w.symbols().subspan(1)) - psi(w.symbols());
  });
}

double evaluate(const LocallyConstantPotential& phi, const Word& w) {
  if (static_cast<int>(w.size()) < phi.depth())
    throw DomainError("potential", "word \"" + w.str() + "\" is shorter than the depth " +
                                       std::to_string(phi.depth()));
  if (!phi.system().is_admissible(w))
    throw DomainError("potential", "word \"" + w.str() + "\" is not admissible");
  return phi(w.symbols());
}

double birkhoff_sum(const LocallyConstantPotential& phi, const PeriodicOrbit& orbit) {
  const auto& rep = orbit.representative;
  const std::size_t p = rep.size();
  if (p == 0 || !phi.system().is_cyclically_admissible(rep))
    throw DomainError("potential", "orbit \"" + rep.str() + "\" is not cyclically admissible");
  const auto k = static_cast<std::size_t>(phi.depth());
  // Periodic extension long enough that every rotation has k leading symbols.
  std::vector<Symbol> periodic(p + k);
  for (std::size_t i = 0; i < periodic.size(); ++i) periodic[i] = rep[i % p];
  const std::span<const Symbol> view(periodic);
  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) sum += phi(view.subspan(i, k));
  return sum;
}

BowenConstant bowen_constant(const LocallyConstantPotential& phi) {
  return {std::ldexp(1.0, -(phi.depth() + 1)), 0.0};
}

namespace {

// Karp's maximum mean cycle with every vertex as a source.
double max_cycle_mean(int vertices, const std::vector<std::tuple<int, int, double>>& edges) {
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  const auto nv = static_cast<std::size_t>(vertices);
  std::vector<std::vector<double>> best(nv + 1, std::vector<double>(nv, kNone));
  std::ranges::fill(best[0], 0.0);
  for (std::size_t j = 1; j <= nv; ++j)
    for (const auto& [from, to, weight] : edges) {
      const double prev = best[j - 1][static_cast<std::size_t>(from)];
      if (prev != kNone)
        best[j][static_cast<std::size_t>(to)] =
            std::max(best[j][static_cast<std::size_t>(to)], prev + weight);
    }
  double result = kNone;
  for (std::size_t v = 0; v < nv; ++v) {
    if (best[nv][v] == kNone) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nv; ++j)
      if (best[j][v] != kNone)
        worst = std::min(worst, (best[nv][v] - best[j][v]) / static_cast<double>(nv - j));
    result = std::max(result, worst);
  }
  return result;
}

}  // namespace

CycleMeanRange cycle_mean_range(const LocallyConstantPotential& phi, std::size_t cap) {
  constexpr std::size_t kMaxVertices = 2048;
  const ShiftSystem& sys = phi.system();
  const int level = std::max(phi.depth() - 1, 1);
  const auto vertices = admissible_words(sys, level, cap);
  if (vertices.size() > kMaxVertices)
    throw CapExceededError("potential", "cycle graph with " + std::to_string(vertices.size()) +
                                            " vertices is too large");
  const int n = sys.alphabet_size();
  std::unordered_map<std::uint64_t, int> position;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    position.emplace(word_code(vertices[i].symbols(), n), static_cast<int>(i));

  // One edge per admissible word w of length level + 1, from its head to its tail.
  std::vector<std::tuple<int, int, double>> edges;
  for (const auto& w : admissible_words(sys, level + 1, cap)) {
    const auto symbols = w.symbols();
    const auto len = static_cast<std::size_t>(level);
    edges.emplace_back(position.at(word_code(symbols.first(len), n)),
                       position.at(word_code(symbols.subspan(1), n)), phi(symbols));
  }
  const int nv = static_cast<int>(vertices.size());
  CycleMeanRange out;
  out.max_mean = max_cycle_mean(nv, edges);
  for (auto& [from, to, weight] : edges) weight = -weight;
  out.min_mean = -max_cycle_mean(nv, edges);
  return out;
}

}  // namespace gibbs
