#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ncfold/errors.hpp"
#include "ncfold/rational.hpp"
#include "ncfold/word.hpp"

namespace ncfold {

/// Words in which no letter occurs together with its inverse. Starting from
/// the empty word, the accessible-word chain never leaves this set.
bool in_omega0(const Word& w);

/// All words of the set above with length <= max_len, shortlex order.
std::vector<Word> enumerate_omega0(std::size_t k, std::size_t max_len,
                                   std::uint64_t budget = kDefaultBudget);

/// a[j-1] = a_j(w); a_1 + ... + a_j is the length of the longest prefix of w
/// with at most j distinct letters.
struct AProfile {
  std::vector<std::size_t> a;

  /// Number of leading positive entries.
  std::size_t distinct() const noexcept;
  std::size_t total() const noexcept;
};

/// Throws std::invalid_argument when w is outside the chain's state set.
AProfile a_profile(const Word& w);

/// tau_j = (j+1) / (j(2k+1) - 1), j = 1..k, and the normalizer Z of the
/// product-form stationary distribution.
struct ChainParams {
  std::size_t k = 0;
  std::vector<Rational> tau;  ///< tau[j-1] = tau_j
  Rational Z;
};

/// Throws std::invalid_argument for k < 2.
ChainParams chain_params(std::size_t k);

/// sigma(w) = prod_j tau_j^{a_j(w)} (unnormalized stationary weight).
Rational stationary_weight(const Word& w, const ChainParams& params);

/// pi(w) = sigma(w) / Z.
Rational stationary_pi(const Word& w, const ChainParams& params);

/// Number of chain states with the given a-profile:
/// 2^r k(k-1)...(k-r+1) * 2^{a_2-1} 3^{a_3-1} ... r^{a_r-1}.
/// The profile must have k entries: positive ones followed by zeros.
BigInt count_words_with_profile(const AProfile& profile, std::size_t k);

struct BalanceViolation {
  Word word;
  Rational inflow;    ///< sum of sigma over one-step predecessors
  Rational expected;  ///< 2k sigma(w)
  bool divergent = false;  ///< a filler series does not converge; inflow unset
};

struct BalanceReport {
  std::size_t k = 0;
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  std::vector<BalanceViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks sum_{w' -> w} sigma(w') = 2k sigma(w) exactly for every chain state
/// of length <= max_len. Predecessors of w are w minus its last letter, and
/// w x y_1 t_1 y_2 ... (a matched letter x, new letters t_i, filler blocks
/// y_i); the filler blocks are summed as geometric series, the rest is
/// enumerated letter by letter. A divergent series counts as a violation.
BalanceReport verify_balance(const ChainParams& params, std::size_t max_len);
BalanceReport verify_balance(std::size_t k, std::size_t max_len);

/// How the finite chain on words of length <= L treats a letter that would
/// make the word longer than L.
enum class Blocking {
  SelfLoop,     ///< the chain stays put
  Renormalize,  ///< the letter is redrawn among the allowed ones
};

std::string to_string(Blocking convention);
/// Accepts "blocked-selfloop"/"selfloop" and "blocked-renormalize"/"renormalize".
Blocking parse_blocking(const std::string& text);

struct TruncatedChain {
  std::size_t k = 0;
  std::size_t max_len = 0;
  Blocking convention = Blocking::SelfLoop;
  std::vector<Word> states;
  std::vector<double> pi;  ///< stationary probabilities, aligned with states
};

/// Stationary distribution of the truncated chain via a sparse LU solve.
/// Throws BudgetExceeded when the state count exceeds budget and
/// std::runtime_error when the linear system is singular.
TruncatedChain truncated_chain_pi(std::size_t k, std::size_t max_len, Blocking convention,
                                  std::uint64_t budget = kDefaultBudget);

/// Comparison of a truncated stationary vector with the exact one on words
/// shorter than the truncation length.
struct TruncationComparison {
  std::size_t words_compared = 0;
  double max_abs_diff_normalized = 0;  ///< pi_L against pi, both summing to 1
  double max_abs_diff_anchored = 0;    ///< pi_L rescaled so that pi_L(empty) = pi(empty)
  double short_mass_truncated = 0;     ///< pi_L mass on the compared words
  double short_mass_exact = 0;         ///< pi mass on the compared words
};

TruncationComparison compare_with_stationary(const TruncatedChain& chain);

/// Limiting unmatched fraction of the greedy algorithm:
/// 1 - (sum_{r=1}^k r 2^r C(k,r) prod_{j<=r} j(j+1)/(j(2k-j)-1)) / (k Z).
Rational lambda_tilde(std::size_t k);

}  // namespace ncfold
