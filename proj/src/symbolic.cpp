#include "gibbs/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "gibbs/error.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/transfer.hpp"

namespace gibbs {

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

std::vector<int> bfs_levels(const TransitionMatrix& a, bool transpose) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> level(n, -1);
  std::queue<int> frontier;
  level[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < n; ++v) {
      const int edge = transpose ? a(v, u) : a(u, v);
      if (edge != 0 && level[v] < 0) {
        level[v] = level[u] + 1;
        frontier.push(v);
      }
    }
  }
  return level;
}

// Period of an irreducible graph: gcd over edges u->v of level(u)+1-level(v).
int graph_period(const TransitionMatrix& a, const std::vector<int>& level) {
  const int n = static_cast<int>(a.rows());
  int g = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (a(u, v) != 0) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
  return g;
}

std::optional<int> positive_power_exponent(const TransitionMatrix& a) {
  const int n = static_cast<int>(a.rows());
  const int bound = (n - 1) * (n - 1) + 1;
  TransitionMatrix power = a;
  for (int k = 1; k <= bound; ++k) {
    if ((power.array() > 0).all()) return k;
    power = ((power * a).array() > 0).cast<int>().matrix();
  }
  return std::nullopt;
}

// Number of admissible words of each length 1..len, as doubles so the cap
// check cannot overflow.
double admissible_word_count(const ShiftSystem& sys, int length) {
  const Eigen::MatrixXd a = sys.transitions().cast<double>();
  Eigen::VectorXd paths = Eigen::VectorXd::Ones(a.rows());
  for (int i = 1; i < length; ++i) paths = a * paths;
  return paths.sum();
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

// Depth-first prenecklace generation (Fredricksen-Kessler-Maiorana) restricted
// to admissible transitions. A node of length t whose current period equals t
// is a Lyndon word; it is emitted when it also closes up cyclically.
void extend_prenecklaces(const ShiftSystem& sys, int max_period, std::vector<Symbol>& word,
                         int period, std::vector<PeriodicOrbit>& out) {
  const int t = static_cast<int>(word.size());
  if (period == t && sys.allowed(word.back(), word.front()))
    out.push_back(PeriodicOrbit{Word(word)});
  if (t == max_period) return;
  const int n = sys.alphabet_size();
  for (Symbol next = word[t - period]; next < n; ++next) {
    if (!sys.allowed(word.back(), next)) continue;
    word.push_back(next);
    extend_prenecklaces(sys, max_period, word, next == word[t - period] ? period : t + 1, out);
    word.pop_back();
  }
}

}  // namespace

Word Word::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    const auto pos = kDigits.find(c);
    if (pos == std::string_view::npos)
      throw DomainError("symbolic", "invalid symbol '" + std::string(1, c) + "' in word \"" +
                                        std::string(text) + "\"");
    symbols.push_back(static_cast<Symbol>(pos));
  }
  return Word(std::move(symbols));
}

Word Word::prefix(std::size_t len) const {
  return Word({symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(len)});
}

Word Word::suffix_from(std::size_t start) const {
  return Word({symbols_.begin() + static_cast<std::ptrdiff_t>(start), symbols_.end()});
}

Word Word::rotated(std::size_t by) const {
  std::vector<Symbol> out(symbols_);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(by % out.size()), out.end());
  return Word(std::move(out));
}

Word Word::prepended(Symbol a) const {
  std::vector<Symbol> out;
  out.reserve(symbols_.size() + 1);
  out.push_back(a);
  out.insert(out.end(), symbols_.begin(), symbols_.end());
  return Word(std::move(out));
}

Word Word::appended(Symbol a) const {
  std::vector<Symbol> out(symbols_);
  out.push_back(a);
  return Word(std::move(out));
}

std::string Word::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) out.push_back(kDigits[static_cast<std::size_t>(s)]);
  return out;
}

bool ShiftSystem::is_admissible(std::span<const Symbol> word) const {
  const int n = alphabet_size();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < 0 || word[i] >= n) return false;
    if (i > 0 && !allowed(word[i - 1], word[i])) return false;
  }
  return true;
}

bool ShiftSystem::is_cyclically_admissible(const Word& w) const {
  return !w.empty() && is_admissible(w) && allowed(w[w.size() - 1], w[0]);
}

ShiftSystem validate_system(int n, const TransitionMatrix& a) {
  if (n < 2) throw DomainError("symbolic", "alphabet size must be at least 2");
  if (a.rows() != n || a.cols() != n)
    throw DomainError("symbolic", "transition matrix must be " + std::to_string(n) + "x" +
                                      std::to_string(n));
  if (n > static_cast<int>(kDigits.size()))
    throw DomainError("symbolic", "alphabet size above 36 is not supported");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) != 0 && a(i, j) != 1)
        throw DomainError("symbolic", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") is not 0 or 1");
  for (int i = 0; i < n; ++i) {
    if (a.row(i).sum() == 0) throw DomainError("symbolic", "row " + std::to_string(i) + " is zero");
    if (a.col(i).sum() == 0)
      throw DomainError("symbolic", "column " + std::to_string(i) + " is zero");
  }

  ShiftSystem sys;
  sys.transitions_ = a;
  sys.full_shift_ = (a.array() == 1).all();
  const auto forward = bfs_levels(a, false);
  const auto backward = bfs_levels(a, true);
  sys.irreducible_ = std::ranges::all_of(forward, [](int l) { return l >= 0; }) &&
                     std::ranges::all_of(backward, [](int l) { return l >= 0; });
  if (sys.irreducible_ && graph_period(a, forward) == 1) {
    sys.primitive_ = true;
    sys.exponent_ = positive_power_exponent(a);
  }
  return sys;
}

ShiftSystem full_shift(int n) { return validate_system(n, TransitionMatrix::Ones(n, n)); }

ShiftSystem golden_mean_shift() {
  TransitionMatrix a(2, 2);
  a << 1, 1, 1, 0;
  return validate_system(2, a);
}

bool is_exact(const ShiftSystem& sys) { return sys.primitive(); }

std::vector<Word> admissible_words(const ShiftSystem& sys, int length, std::size_t cap) {
  if (length < 1) throw DomainError("symbolic", "word length must be at least 1");
  if (admissible_word_count(sys, length) > static_cast<double>(cap))
    throw CapExceededError("symbolic", "admissible words of length " + std::to_string(length) +
                                           " exceed the cap of " + std::to_string(cap));
  const int n = sys.alphabet_size();
  std::vector<Word> out;
  std::vector<Symbol> word(static_cast<std::size_t>(length), 0);
  // Odometer over admissible words: advance the deepest position that can move.
  int depth = 0;
  word[0] = 0;
  while (depth >= 0) {
    auto& sym = word[static_cast<std::size_t>(depth)];
    if (sym >= n) {
      --depth;
      if (depth >= 0) ++word[static_cast<std::size_t>(depth)];
      continue;
    }
    if (depth > 0 && !sys.allowed(word[static_cast<std::size_t>(depth) - 1], sym)) {
      ++sym;
      continue;
    }
    if (depth + 1 == length) {
      out.emplace_back(word);
      ++sym;
    } else {
      ++depth;
      word[static_cast<std::size_t>(depth)] = 0;
    }
  }
  return out;
}

std::vector<double> orbit_counts(const ShiftSystem& sys, int max_period) {
  const Eigen::MatrixXd a = sys.transitions().cast<double>();
  std::vector<double> traces(static_cast<std::size_t>(max_period) + 1, 0.0);
  Eigen::MatrixXd power = a;
  for (int p = 1; p <= max_period; ++p) {
    traces[static_cast<std::size_t>(p)] = power.trace();
    power = power * a;
  }
  std::vector<double> counts(static_cast<std::size_t>(max_period), 0.0);
  for (int p = 1; p <= max_period; ++p) {
    double sum = 0.0;
    for (int d = 1; d <= p; ++d)
      if (p % d == 0) sum += moebius(p / d) * traces[static_cast<std::size_t>(d)];
    counts[static_cast<std::size_t>(p) - 1] = sum / p;
  }
  return counts;
}

std::vector<PeriodicOrbit> periodic_orbits(const ShiftSystem& sys, int max_period,
                                           std::size_t cap) {
  if (max_period < 1) throw DomainError("symbolic", "maximum period must be at least 1");
  const auto counts = orbit_counts(sys, max_period);
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (total > static_cast<double>(cap))
    throw CapExceededError("symbolic", "periodic orbits up to period " +
                                           std::to_string(max_period) + " exceed the cap of " +
                                           std::to_string(cap));
  std::vector<PeriodicOrbit> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Symbol> word;
  for (Symbol first = 0; first < sys.alphabet_size(); ++first) {
    word.assign(1, first);
    extend_prenecklaces(sys, max_period, word, 1, out);
  }
  std::ranges::sort(out, [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.period() != b.period()) return a.period() < b.period();
    return a.representative < b.representative;
  });
  return out;
}

double entropy(const ShiftSystem& sys) {
  if (!is_exact(sys)) throw NotExactError("symbolic", "entropy requires a primitive matrix");
  const double h = pressure(sys, LocallyConstantPotential::constant(sys, 0.0));
  if (!(h > 0.0)) throw Error("symbolic", "non-positive entropy for an exact system");
  return h;
}

std::uint64_t word_code(std::span<const Symbol> symbols, int n) {
  std::uint64_t code = 0;
  for (Symbol s : symbols) code = code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(s);
  return code;
}

}  // namespace gibbs
