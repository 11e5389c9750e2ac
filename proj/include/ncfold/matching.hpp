#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ncfold/errors.hpp"
#include "ncfold/rational.hpp"
#include "ncfold/word.hpp"

namespace ncfold {

/// A matched pair of 1-based positions, left < right.
struct IndexPair {
  std::size_t left = 0;
  std::size_t right = 0;
  friend constexpr auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Pairs of positions in a word of length n.
struct Matching {
  std::size_t n = 0;
  std::vector<IndexPair> pairs;
};

struct LengthResult {
  std::size_t unmatched = 0;
  Matching witness;
};

/// True iff every position is used at most once, no two pairs cross and
/// each pair joins a letter with its inverse. Throws std::invalid_argument
/// when m.n differs from the word length.
bool validate_matching(const Word& w, const Matching& m);

/// Interval dynamic program for the maximum non-crossing matching of
/// letters with their inverses. Holds its table between calls so repeated
/// use on same-sized words does not reallocate.
///
/// The table stores, for every interval [i, j], the number of pairs in an
/// optimal matching. Row i is filled from row i+1 ("leave i unmatched") and
/// then raised by `1 + best(i+1, t-1) + best(t+1, .)` for each partner t of
/// i; that inner update is a contiguous elementwise max, which the compiler
/// vectorizes. O(n^3 / 2k) expected work, (n+1)(n+2)/2 16-bit cells.
class ExactMatcher {
 public:
  /// Longest word accepted (pair counts must fit in 16 bits).
  static constexpr std::size_t kMaxLength = 65534;

  /// Minimum number of unmatched letters.
  std::size_t unmatched(const Word& w);

  /// Minimum plus a witness. Traceback prefers pairing a position with its
  /// leftmost admissible partner over leaving it unmatched.
  LengthResult solve(const Word& w);

  /// Same as unmatched(), on raw letter codes (see Letter::code).
  std::size_t unmatched(std::span<const std::uint32_t> codes, std::size_t k);

 private:
  void fill(std::span<const std::uint32_t> codes, std::size_t k);
  std::int16_t at(std::size_t row, std::size_t col) const {
    return table_[offsets_[row] + (col + 1 - row)];
  }

  std::size_t n_ = 0;
  std::vector<std::uint32_t> codes_;
  std::vector<std::vector<std::uint32_t>> positions_;
  std::vector<std::size_t> offsets_;
  std::vector<std::int16_t> table_;
};

LengthResult optimal_length(const Word& w);

/// Default length cap for brute_force_length.
inline constexpr std::size_t kBruteForceLimit = 14;

/// Exhaustive search over every admissible non-crossing matching. Test
/// oracle; throws std::length_error above `limit` letters.
LengthResult brute_force_length(const Word& w, std::size_t limit = kBruteForceLimit);

/// Number of words of length n with each value of the length, over all
/// (2k)^n words. Throws BudgetExceeded when (2k)^n > budget.
std::map<std::size_t, std::uint64_t> length_census(std::size_t n, std::size_t k,
                                                   std::uint64_t budget = kDefaultBudget);

/// Exact E[length] / n over all (2k)^n words.
Rational rho_exact(std::size_t n, std::size_t k, std::uint64_t budget = kDefaultBudget);

}  // namespace ncfold
