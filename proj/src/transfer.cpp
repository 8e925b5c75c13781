#include "gibbs/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gibbs/error.hpp"
#include "gibbs/perron.hpp"

namespace gibbs {

namespace {

// Dense matrices beyond this many rows are not worth materializing.
constexpr std::size_t kMaxDenseIndex = 8192;

int level_for(const LocallyConstantPotential& phi) { return std::max(phi.depth() - 1, 1); }

void require_exact(const ShiftSystem& sys, const char* what) {
  if (!is_exact(sys))
    throw NotExactError("transfer", std::string(what) + " requires an exact (primitive) system");
}

void require_same_system(const ShiftSystem& sys, const LocallyConstantPotential& phi) {
  if (!(phi.system() == sys))
    throw DomainError("transfer", "potential is defined on a different system");
}

}  // namespace

Eigen::Index TransferMatrix::position(const Word& w) const {
  if (static_cast<int>(w.size()) != level) return -1;
  const auto it = lookup.find(word_code(w.symbols(), alphabet_size));
  return it == lookup.end() ? -1 : it->second;
}

TransferMatrix build_transfer_matrix(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                     std::size_t cap) {
  require_same_system(sys, phi);
  TransferMatrix m;
  m.level = level_for(phi);
  m.alphabet_size = sys.alphabet_size();
  m.primitive = sys.primitive();
  m.index = admissible_words(sys, m.level, cap);
  if (m.index.size() > kMaxDenseIndex)
    throw CapExceededError("transfer", "transfer matrix index of " +
                                           std::to_string(m.index.size()) + " words is too large");
  const auto size = static_cast<Eigen::Index>(m.index.size());
  for (Eigen::Index i = 0; i < size; ++i)
    m.lookup.emplace(word_code(m.index[static_cast<std::size_t>(i)].symbols(), m.alphabet_size), i);

  m.entries = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index row = 0; row < size; ++row) {
    const Word& u = m.index[static_cast<std::size_t>(row)];
    for (Symbol a = 0; a < sys.alphabet_size(); ++a) {
      if (!sys.allowed(a, u[0])) continue;
      const Word extension = u.prepended(a);  // length level + 1 >= depth
      const Eigen::Index col = m.position(extension.prefix(static_cast<std::size_t>(m.level)));
      m.entries(row, col) = std::exp(phi(extension.symbols()));
    }
  }
  return m;
}

RpfData rpf_eigendata(const TransferMatrix& m, const RpfOptions& opts) {
  if (opts.tol <= 0.0) throw DomainError("transfer", "tolerance must be positive");
  if (!m.primitive && pattern_period(m.entries) != 1)
    throw NotExactError("transfer", "transfer matrix pattern is not primitive");

  const auto right = perron_vector(m.entries, opts.tol, opts.max_iter);
  const auto left = perron_vector(m.entries.transpose(), opts.tol, opts.max_iter);

  RpfData out;
  out.lambda = right.value;
  out.nu = left.vector / left.vector.sum();
  out.h = right.vector / out.nu.dot(right.vector);
  out.right_residual = right.residual;
  out.left_residual = left.residual;
  out.iterations = std::max(right.iterations, left.iterations);
  return out;
}

double pressure(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                const RpfOptions& opts, std::size_t cap) {
  require_exact(sys, "pressure");
  const double shift = phi.max_value();
  const auto m = build_transfer_matrix(sys, phi + (-shift), cap);
  if (opts.tol <= 0.0) throw DomainError("transfer", "tolerance must be positive");
  return shift + std::log(perron_vector(m.entries, opts.tol, opts.max_iter).value);
}

PressureSandwich pressure_sandwich(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                   int n, const RpfOptions& opts, std::size_t cap) {
  if (n < 1) throw DomainError("transfer", "sandwich length must be at least 1");
  require_exact(sys, "pressure sandwich");
  require_same_system(sys, phi);
  const int level = level_for(phi);
  const auto index = admissible_words(sys, level, cap);
  const double shift = phi.max_value();
  const auto k = static_cast<std::size_t>(phi.depth());
  const auto len = static_cast<std::size_t>(n + level);

  std::size_t leaves = 0;
  std::vector<Symbol> buffer(len);
  // Sum over admissible a_0 ... a_{n-1} u of exp(S_n phi - n * shift), built
  // right to left so each new symbol adds one Birkhoff term.
  auto enumerate = [&](auto&& self, int pos, double partial) -> double {
    if (pos < 0) {
      if (++leaves > cap)
        throw CapExceededError("transfer", "preimage enumeration exceeds the cap of " +
                                               std::to_string(cap));
      return std::exp(partial);
    }
    double total = 0.0;
    const auto p = static_cast<std::size_t>(pos);
    for (Symbol a = 0; a < sys.alphabet_size(); ++a) {
      if (!sys.allowed(a, buffer[p + 1])) continue;
      buffer[p] = a;
      const double term = phi(std::span<const Symbol>(buffer).subspan(p, k)) - shift;
      total += self(self, pos - 1, partial + term);
    }
    return total;
  };

  PressureSandwich out;
  out.lo = std::numeric_limits<double>::infinity();
  out.hi = -std::numeric_limits<double>::infinity();
  for (const auto& u : index) {
    std::ranges::copy(u.symbols(), buffer.begin() + n);
    const double sum = enumerate(enumerate, n - 1, 0.0);
    const double value = shift + std::log(sum) / n;
    out.lo = std::min(out.lo, value);
    out.hi = std::max(out.hi, value);
  }
  out.pressure = pressure(sys, phi, opts, cap);
  const double slack = 1e-10 * std::max(1.0, std::abs(out.pressure));
  if (out.pressure < out.lo - slack || out.pressure > out.hi + slack)
    throw Error("transfer", "eigenvalue pressure lies outside the enumeration sandwich");
  return out;
}

double CylinderMeasure::mass(const Word& w) const {
  const auto it = std::ranges::lower_bound(words, w);
  if (it == words.end() || *it != w) return 0.0;
  return masses(it - words.begin());
}

CylinderMeasure CylinderMeasure::marginal(int shallower) const {
  if (shallower < 1 || shallower > depth)
    throw DomainError("transfer", "marginal depth must lie in [1, " + std::to_string(depth) + "]");
  CylinderMeasure out;
  out.depth = shallower;
  std::vector<double> sums;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word head = words[i].prefix(static_cast<std::size_t>(shallower));
    // Words are sorted, so equal prefixes are contiguous.
    if (out.words.empty() || out.words.back() != head) {
      out.words.push_back(std::move(head));
      sums.push_back(0.0);
    }
    sums.back() += masses(static_cast<Eigen::Index>(i));
  }
  out.masses = Eigen::Map<Eigen::VectorXd>(sums.data(), static_cast<Eigen::Index>(sums.size()));
  return out;
}

CylinderMeasure cylinder_measure(const ShiftSystem& sys, const LocallyConstantPotential& phi,
                                 const RpfData& rpf, int m, std::size_t cap) {
  require_same_system(sys, phi);
  const int level = level_for(phi);
  if (m < level)
    throw DomainError("transfer", "measure depth " + std::to_string(m) +
                                      " is below the transfer level " + std::to_string(level));
  const int n = sys.alphabet_size();

  CylinderMeasure current;
  current.depth = level;
  current.words = admissible_words(sys, level, cap);
  if (static_cast<Eigen::Index>(current.words.size()) != rpf.nu.size())
    throw DomainError("transfer", "eigendata does not match the transfer level of the potential");
  current.masses = rpf.nu;

  const double log_lambda = std::log(rpf.lambda);
  for (int d = level + 1; d <= m; ++d) {
    std::unordered_map<std::uint64_t, double> previous;
    previous.reserve(current.words.size());
    for (std::size_t i = 0; i < current.words.size(); ++i)
      previous.emplace(word_code(current.words[i].symbols(), n),
                       current.masses(static_cast<Eigen::Index>(i)));

    CylinderMeasure next;
    next.depth = d;
    next.words = admissible_words(sys, d, cap);
    next.masses.resize(static_cast<Eigen::Index>(next.words.size()));
    for (std::size_t i = 0; i < next.words.size(); ++i) {
      const auto symbols = next.words[i].symbols();
      const double tail = previous.at(word_code(symbols.subspan(1), n));
      next.masses(static_cast<Eigen::Index>(i)) = std::exp(phi(symbols) - log_lambda) * tail;
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace gibbs
