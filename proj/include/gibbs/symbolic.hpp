#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gibbs {

using Symbol = int;
using TransitionMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Default guard against exponential blowup of word and orbit enumerations.
inline constexpr std::size_t kDefaultWordCap = 1'000'000;

// A finite sequence of symbols. Symbols print as 0-9 then a-z, so words over
// alphabets of up to 36 letters round-trip through strings.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  Word prefix(std::size_t len) const;
  Word suffix_from(std::size_t start) const;
  Word rotated(std::size_t by) const;
  Word prepended(Symbol a) const;
  Word appended(Symbol a) const;

  std::string str() const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// A one-sided subshift of finite type given by a 0/1 transition matrix.
// Only obtainable through validate_system, so every instance satisfies the
// structural invariants (0/1 entries, no zero rows or columns).
class ShiftSystem {
 public:
  int alphabet_size() const noexcept { return static_cast<int>(transitions_.rows()); }
  const TransitionMatrix& transitions() const noexcept { return transitions_; }
  bool allowed(Symbol a, Symbol b) const { return transitions_(a, b) != 0; }

  bool is_full_shift() const noexcept { return full_shift_; }
  bool irreducible() const noexcept { return irreducible_; }
  bool primitive() const noexcept { return primitive_; }
  // Least k with A^k entrywise positive; set only for primitive systems.
  std::optional<int> primitivity_exponent() const noexcept { return exponent_; }

  bool is_admissible(std::span<const Symbol> word) const;
  bool is_admissible(const Word& w) const { return is_admissible(w.symbols()); }
  bool is_cyclically_admissible(const Word& w) const;

  friend bool operator==(const ShiftSystem& a, const ShiftSystem& b) {
    return a.transitions_ == b.transitions_;
  }

 private:
  friend ShiftSystem validate_system(int n, const TransitionMatrix& a);

  TransitionMatrix transitions_;
  bool full_shift_ = false;
  bool irreducible_ = false;
  bool primitive_ = false;
  std::optional<int> exponent_;
};

struct PeriodicOrbit {
  Word representative;  // lexicographically least rotation

  int period() const noexcept { return static_cast<int>(representative.size()); }
  bool operator==(const PeriodicOrbit&) const = default;
};

ShiftSystem validate_system(int n, const TransitionMatrix& a);
ShiftSystem full_shift(int n);
ShiftSystem golden_mean_shift();

// Exactness of an SFT is equivalent to primitivity of its matrix.
bool is_exact(const ShiftSystem& sys);

// All admissible words of the given length in lexicographic order.
std::vector<Word> admissible_words(const ShiftSystem& sys, int length,
                                   std::size_t cap = kDefaultWordCap);

// One representative per periodic orbit of least period <= max_period,
// ordered by period then lexicographically.
std::vector<PeriodicOrbit> periodic_orbits(const ShiftSystem& sys, int max_period,
                                           std::size_t cap = kDefaultWordCap);

// Exact number of periodic orbits of least period p, for p = 1..max_period,
// via Moebius inversion of trace(A^p). Used to size enumerations up front.
std::vector<double> orbit_counts(const ShiftSystem& sys, int max_period);

// Topological entropy h(T) = P(T, 0). Throws NotExactError for non-primitive A.
double entropy(const ShiftSystem& sys);

// Base-n code of a word, used as a dense index into per-word tables.
std::uint64_t word_code(std::span<const Symbol> symbols, int n);

}  // namespace gibbs
