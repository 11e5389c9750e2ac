#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncfold/matching.hpp"
#include "ncfold/word.hpp"

namespace ncfold {

/// Record of a one-sided greedy run.
struct GreedyTrace {
  std::vector<IndexPair> matched_pairs;  ///< sorted, 1-based
  std::size_t reductions = 0;            ///< equals matched_pairs.size()
  Word final_state;                      ///< accessible letters after the last step
  std::vector<std::size_t> discarded;    ///< positions dropped from the accessible word
  std::size_t unmatched = 0;             ///< n - 2 * reductions
};

/// One-sided greedy matching. Each arriving letter is paired with the most
/// recent accessible occurrence of its inverse, and every accessible letter
/// after that occurrence becomes permanently unmatched. Without an
/// accessible inverse the letter is appended.
GreedyTrace greedy_match(const Word& w);

struct StepResult {
  Word state;
  bool reduced = false;
};

/// One transition of the accessible-word chain.
StepResult chain_step(const Word& state, Letter letter);

/// Streaming version of the chain for long runs: O(1) amortized per letter,
/// no history kept.
class GreedySimulator {
 public:
  explicit GreedySimulator(std::size_t k);

  /// Returns true when the letter caused a reduction.
  bool push(std::uint32_t code);
  bool push(Letter letter) { return push(letter.code()); }

  std::size_t steps() const noexcept { return steps_; }
  std::size_t reductions() const noexcept { return reductions_; }
  std::size_t accessible_length() const noexcept { return stack_.size(); }

 private:
  std::vector<std::uint32_t> stack_;
  std::vector<std::size_t> counts_;
  std::size_t steps_ = 0;
  std::size_t reductions_ = 0;
};

}  // namespace ncfold
