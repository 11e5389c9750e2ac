#include "ncfold/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ncfold {

bool validate_matching(const Word& w, const Matching& m) {
  if (m.n != w.size()) {
    throw std::invalid_argument("validate_matching: matching is for length " +
                                std::to_string(m.n) + ", word has " + std::to_string(w.size()));
  }
  std::vector<bool> used(m.n + 1, false);
  for (const auto& [i, j] : m.pairs) {
    if (i < 1 || i >= j || j > m.n) return false;
    if (used[i] || used[j]) return false;
    used[i] = used[j] = true;
    if (w[i - 1] != w[j - 1].inverse()) return false;
  }
  for (const auto& p : m.pairs) {
    for (const auto& q : m.pairs) {
      if (p.left < q.left && q.left < p.right && p.right < q.right) return false;
    }
  }
  return true;
}

void ExactMatcher::fill(std::span<const std::uint32_t> codes, std::size_t k) {
  const std::size_t n = codes.size();
  if (n > kMaxLength) {
    throw std::length_error("ExactMatcher: word longer than " + std::to_string(kMaxLength));
  }
  n_ = n;
  codes_.assign(codes.begin(), codes.end());
  positions_.resize(2 * k);
  for (auto& list : positions_) list.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (codes_[i] >= 2 * k) throw std::invalid_argument("ExactMatcher: letter code out of range");
    positions_[codes_[i]].push_back(static_cast<std::uint32_t>(i));
  }

  // Row r holds columns r-1 .. n-1; column r-1 is the empty interval.
  offsets_.resize(n + 1);
  std::size_t total = 0;
  for (std::size_t r = 0; r <= n; ++r) {
    offsets_[r] = total;
    total += n - r + 1;
  }
  table_.resize(total);
  table_[offsets_[n]] = 0;

  for (std::size_t i = n; i-- > 0;) {
    std::int16_t* row = table_.data() + offsets_[i];
    const std::int16_t* below = table_.data() + offsets_[i + 1];
    row[0] = 0;
    std::copy(below, below + (n - i), row + 1);

    const auto& partners = positions_[codes_[i] ^ 1u];
    auto it = std::upper_bound(partners.begin(), partners.end(), static_cast<std::uint32_t>(i));
    for (; it != partners.end(); ++it) {
      const std::size_t t = *it;
      const auto c = static_cast<std::int16_t>(1 + below[t - 1 - i]);
      std::int16_t* __restrict dest = row + 1 + (t - i);
      const std::int16_t* __restrict src = table_.data() + offsets_[t + 1];
      const std::size_t len = n - t;
      for (std::size_t x = 0; x < len; ++x) {
        const auto v = static_cast<std::int16_t>(c + src[x]);
        dest[x] = dest[x] < v ? v : dest[x];
      }
    }
  }
}

std::size_t ExactMatcher::unmatched(std::span<const std::uint32_t> codes, std::size_t k) {
  if (codes.empty()) return 0;
  fill(codes, k);
  return n_ - 2 * static_cast<std::size_t>(at(0, n_ - 1));
}

std::size_t ExactMatcher::unmatched(const Word& w) {
  const auto codes = w.codes();
  return unmatched(codes, w.k());
}

LengthResult ExactMatcher::solve(const Word& w) {
  LengthResult result;
  result.witness.n = w.size();
  if (w.empty()) return result;
  const auto codes = w.codes();
  fill(codes, w.k());
  result.unmatched = n_ - 2 * static_cast<std::size_t>(at(0, n_ - 1));

  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n_ - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    const std::int16_t target = at(i, j);
    if (target == 0) continue;
    bool paired = false;
    const auto& partners = positions_[codes_[i] ^ 1u];
    auto it = std::upper_bound(partners.begin(), partners.end(), static_cast<std::uint32_t>(i));
    for (; it != partners.end() && *it <= j; ++it) {
      const std::size_t t = *it;
      if (1 + at(i + 1, t - 1) + at(t + 1, j) == target) {
        result.witness.pairs.push_back({i + 1, t + 1});
        if (i + 1 < t) stack.emplace_back(i + 1, t - 1);
        if (t < j) stack.emplace_back(t + 1, j);
        paired = true;
        break;
      }
    }
    if (!paired) stack.emplace_back(i + 1, j);
  }
  std::sort(result.witness.pairs.begin(), result.witness.pairs.end());
  return result;
}

LengthResult optimal_length(const Word& w) {
  ExactMatcher matcher;
  return matcher.solve(w);
}

namespace {

struct BruteForce {
  const std::vector<std::uint32_t>& codes;
  std::vector<int> partner;
  std::vector<IndexPair> current;
  std::vector<IndexPair> best;
  std::size_t best_pairs = 0;
  bool have_best = false;

  void run(std::size_t i) {
    const std::size_t n = codes.size();
    // (n - i) / 2 bounds the pairs still addable.
    if (have_best && current.size() + (n - i) / 2 <= best_pairs) return;
    if (i == n) {
      best = current;
      best_pairs = current.size();
      have_best = true;
      return;
    }
    if (partner[i] >= 0) {
      run(i + 1);
      return;
    }
    for (std::size_t t = i + 1; t < n; ++t) {
      if (partner[t] >= 0 || codes[t] != (codes[i] ^ 1u)) continue;
      bool crosses = false;
      for (const auto& p : current) {
        // Open pair (a, b) with a < i < b must enclose t as well.
        if (p.left - 1 < i && i < p.right - 1 && p.right - 1 < t) {
          crosses = true;
          break;
        }
      }
      if (crosses) continue;
      partner[i] = static_cast<int>(t);
      partner[t] = static_cast<int>(i);
      current.push_back({i + 1, t + 1});
      run(i + 1);
      current.pop_back();
      partner[i] = partner[t] = -1;
    }
    run(i + 1);
  }
};

}  // namespace

LengthResult brute_force_length(const Word& w, std::size_t limit) {
  if (w.size() > limit) {
    throw std::length_error("brute_force_length: word length " + std::to_string(w.size()) +
                            " exceeds limit " + std::to_string(limit));
  }
  const auto codes = w.codes();
  BruteForce search{codes, std::vector<int>(codes.size(), -1), {}, {}, 0, false};
  search.run(0);
  LengthResult result;
  result.witness.n = w.size();
  result.witness.pairs = search.best;
  std::sort(result.witness.pairs.begin(), result.witness.pairs.end());
  result.unmatched = w.size() - 2 * search.best_pairs;
  return result;
}

namespace {

std::uint64_t word_count_checked(std::size_t n, std::size_t k, std::uint64_t budget) {
  if (k < 1) throw std::invalid_argument("alphabet size k must be at least 1");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > budget / (2 * k)) {
      throw BudgetExceeded("enumerating (" + std::to_string(2 * k) + ")^" + std::to_string(n) +
                           " words exceeds budget " + std::to_string(budget));
    }
    count *= 2 * k;
  }
  if (count > budget) throw BudgetExceeded("enumeration exceeds budget");
  return count;
}

}  // namespace

std::map<std::size_t, std::uint64_t> length_census(std::size_t n, std::size_t k,
                                                   std::uint64_t budget) {
  const std::uint64_t total = word_count_checked(n, k, budget);
  std::map<std::size_t, std::uint64_t> census;
  std::vector<std::uint32_t> codes(n, 0);
  ExactMatcher matcher;
  const auto letters = static_cast<std::uint32_t>(2 * k);
  for (std::uint64_t index = 0; index < total; ++index) {
    ++census[matcher.unmatched(codes, k)];
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (++codes[pos] < letters) break;
      codes[pos] = 0;
    }
  }
  return census;
}

Rational rho_exact(std::size_t n, std::size_t k, std::uint64_t budget) {
  if (n == 0) throw std::invalid_argument("rho_exact: n must be positive");
  const auto census = length_census(n, k, budget);
  BigInt total_length = 0;
  BigInt words = 0;
  for (const auto& [ell, count] : census) {
    total_length += BigInt(ell) * count;
    words += count;
  }
  return Rational(total_length, words * n);
}

}  // namespace ncfold
