#include "ncfold/greedy.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncfold {

GreedyTrace greedy_match(const Word& w) {
  struct Entry {
    Letter letter;
    std::size_t position;  // 1-based
  };
  std::vector<Entry> stack;
  std::vector<std::size_t> counts(2 * w.k(), 0);
  GreedyTrace trace{{}, 0, Word(w.k()), {}, 0};

  for (std::size_t t = 0; t < w.size(); ++t) {
    const Letter x = w[t];
    const std::uint32_t want = x.inverse().code();
    if (counts[want] == 0) {
      stack.push_back({x, t + 1});
      ++counts[x.code()];
      continue;
    }
    while (stack.back().letter.code() != want) {
      trace.discarded.push_back(stack.back().position);
      --counts[stack.back().letter.code()];
      stack.pop_back();
    }
    trace.matched_pairs.push_back({stack.back().position, t + 1});
    --counts[want];
    stack.pop_back();
    ++trace.reductions;
  }

  for (const auto& entry : stack) trace.final_state.push_back(entry.letter);
  std::sort(trace.matched_pairs.begin(), trace.matched_pairs.end());
  std::sort(trace.discarded.begin(), trace.discarded.end());
  trace.unmatched = w.size() - 2 * trace.reductions;
  return trace;
}

StepResult chain_step(const Word& state, Letter letter) {
  const Letter target = letter.inverse();
  for (std::size_t j = state.size(); j-- > 0;) {
    if (state[j] == target) {
      Word next = state;
      next.truncate(j);
      return {std::move(next), true};
    }
  }
  Word next = state;
  next.push_back(letter);
  return {std::move(next), false};
}

GreedySimulator::GreedySimulator(std::size_t k) : counts_(2 * k, 0) {
  if (k < 1) throw std::invalid_argument("GreedySimulator: k must be at least 1");
}

bool GreedySimulator::push(std::uint32_t code) {
  if (code >= counts_.size()) throw std::invalid_argument("GreedySimulator: letter code out of range");
  ++steps_;
  const std::uint32_t want = code ^ 1u;
  if (counts_[want] == 0) {
    stack_.push_back(code);
    ++counts_[code];
    return false;
  }
  while (stack_.back() != want) {
    --counts_[stack_.back()];
    stack_.pop_back();
  }
  --counts_[want];
  stack_.pop_back();
  ++reductions_;
  return true;
}

}  // namespace ncfold
