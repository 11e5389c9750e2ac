#include <doctest.h>

#include <stdexcept>

#include <functional>

#include "ncfold/matching.hpp"
#include "ncfold/rng.hpp"

using namespace ncfold;

namespace {

void for_each_word(std::size_t n, std::size_t k, const std::function<void(const Word&)>& fn) {
  std::vector<std::uint32_t> digits(n, 0);
  while (true) {
    Word w(k);
    for (auto d : digits) w.push_back(Letter::from_code(d));
    fn(w);
    std::size_t i = n;
    while (i > 0 && ++digits[i - 1] == 2 * k) digits[--i] = 0;
    if (i == 0) return;
  }
}

/// Oracle: try every subset of letter/inverse pairs, keep the largest one
/// that is disjoint and non-crossing. Exponential in the number of
/// admissible pairs; meant for n <= 10.
std::size_t subset_oracle(const Word& w) {
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j] == w[i].inverse()) candidates.emplace_back(i, j);
    }
  }
  REQUIRE(candidates.size() <= 24);
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (mask & (1u << c)) chosen.push_back(candidates[c]);
    }
    if (chosen.size() <= best) continue;
    bool ok = true;
    for (std::size_t x = 0; x < chosen.size() && ok; ++x) {
      for (std::size_t y = x + 1; y < chosen.size() && ok; ++y) {
        auto [i, j] = chosen[x];
        auto [s, t] = chosen[y];
        const bool shared = i == s || i == t || j == s || j == t;
        const bool crossing = (i < s && s < j && j < t) || (s < i && i < t && t < j);
        ok = !shared && !crossing;
      }
    }
    if (ok) best = chosen.size();
  }
  return w.size() - 2 * best;
}

Word word(const char* text, std::size_t k = 2) { return parse_word(text, k); }

}  // namespace

TEST_CASE("small words") {
  CHECK(optimal_length(word("")).unmatched == 0);
  CHECK(optimal_length(word("a")).unmatched == 1);
  CHECK(optimal_length(word("ab")).unmatched == 2);
  CHECK(optimal_length(word("aA")).unmatched == 0);
  CHECK(optimal_length(word("abAB")).unmatched == 2);
  CHECK(optimal_length(word("abBA")).unmatched == 0);
  CHECK(optimal_length(word("aabAA")).unmatched == 1);
}

TEST_CASE("conjugates of a generator have length one") {
  for (std::size_t n = 0; n <= 3; ++n) {
    for_each_word(n, 2, [](const Word& h) {
      CHECK(optimal_length(conjugate(word("a"), h)).unmatched == 1);
      CHECK(optimal_length(conjugate(word("B"), h)).unmatched == 1);
    });
  }
}

TEST_CASE("interval DP agrees with the subset oracle") {
  SUBCASE("exhaustive k=2, n <= 6") {
    for (std::size_t n = 0; n <= 6; ++n) {
      for_each_word(n, 2, [](const Word& w) { CHECK(optimal_length(w).unmatched == subset_oracle(w)); });
    }
  }
  SUBCASE("exhaustive k=3, n <= 4") {
    for (std::size_t n = 0; n <= 4; ++n) {
      for_each_word(n, 3, [](const Word& w) { CHECK(optimal_length(w).unmatched == subset_oracle(w)); });
    }
  }
  SUBCASE("random k in {2,3}, n in 7..10") {
    Rng rng(11);
    ExactMatcher matcher;
    for (int i = 0; i < 300; ++i) {
      const std::size_t k = 2 + rng.uniform_below(2);
      const Word w = sample_word(7 + rng.uniform_below(4), k, rng);
      CHECK(matcher.unmatched(w) == subset_oracle(w));
    }
  }
}

TEST_CASE("brute force search agrees with the DP") {
  Rng rng(5);
  ExactMatcher matcher;
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + rng.uniform_below(2);
    const Word w = sample_word(1 + rng.uniform_below(kBruteForceLimit), k, rng);
    const LengthResult brute = brute_force_length(w);
    CHECK(brute.unmatched == matcher.unmatched(w));
    CHECK(validate_matching(w, brute.witness));
  }
  CHECK_THROWS_AS(brute_force_length(Word(2, std::vector<Letter>(kBruteForceLimit + 1, Letter{1, false}))),
                  std::length_error);
  CHECK(brute_force_length(Word(2, std::vector<Letter>(20, Letter{1, false})), 20).unmatched == 20);
}

TEST_CASE("witness is a valid optimal matching") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 1 + rng.uniform_below(3);
    const Word w = sample_word(rng.uniform_below(40), k, rng);
    const LengthResult r = optimal_length(w);
    CHECK(r.witness.n == w.size());
    CHECK(validate_matching(w, r.witness));
    CHECK(r.unmatched == w.size() - 2 * r.witness.pairs.size());
    CHECK(r.unmatched % 2 == w.size() % 2);
  }
}

TEST_CASE("traceback pairs with the leftmost partner") {
  const LengthResult r = optimal_length(word("aAaA"));
  CHECK(r.witness.pairs == std::vector<IndexPair>{{1, 2}, {3, 4}});
  const LengthResult s = optimal_length(word("aAbAB", 2));
  CHECK(s.unmatched == 1);
  CHECK(s.witness.pairs == std::vector<IndexPair>{{1, 2}, {3, 5}});
}

TEST_CASE("validate_matching") {
  const Word w = word("abBA");
  CHECK(validate_matching(w, Matching{4, {{1, 4}, {2, 3}}}));
  CHECK(validate_matching(w, Matching{4, {}}));
  CHECK_FALSE(validate_matching(w, Matching{4, {{1, 2}}}));             // a, b are not inverse
  CHECK_FALSE(validate_matching(w, Matching{4, {{1, 4}, {1, 4}}}));     // reused position
  CHECK_FALSE(validate_matching(w, Matching{4, {{0, 3}}}));             // out of range
  CHECK_FALSE(validate_matching(w, Matching{4, {{2, 5}}}));             // out of range
  CHECK_FALSE(validate_matching(w, Matching{4, {{4, 1}}}));             // left > right
  const Word x = word("abAB");
  CHECK_FALSE(validate_matching(x, Matching{4, {{1, 3}, {2, 4}}}));     // crossing
  CHECK_THROWS_AS(validate_matching(w, Matching{3, {}}), std::invalid_argument);
}

TEST_CASE("length is subadditive under concatenation") {
  ExactMatcher matcher;
  for_each_word(3, 2, [&](const Word& u) {
    for_each_word(3, 2, [&](const Word& v) {
      CHECK(matcher.unmatched(concat(u, v)) <= matcher.unmatched(u) + matcher.unmatched(v));
    });
  });
}

TEST_CASE("length zero exactly for trivial words") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for_each_word(n, 2, [](const Word& w) {
      CHECK((optimal_length(w).unmatched == 0) == free_reduce(w).empty());
    });
  }
}

TEST_CASE("census of length 4 over two generators") {
  // 28, 168 and 60 of the 256 words have length 0, 2 and 4.
  const auto census = length_census(4, 2);
  CHECK(census == std::map<std::size_t, std::uint64_t>{{0, 28}, {2, 168}, {4, 60}});
  CHECK(rho_exact(4, 2) == Rational(9, 16));
}

TEST_CASE("census bookkeeping") {
  CHECK(length_census(0, 2) == std::map<std::size_t, std::uint64_t>{{0, 1}});
  CHECK(length_census(1, 3) == std::map<std::size_t, std::uint64_t>{{1, 6}});
  for (std::size_t n = 1; n <= 5; ++n) {
    std::uint64_t total = 0;
    for (const auto& [value, count] : length_census(n, 2)) {
      CHECK(value % 2 == n % 2);
      total += count;
    }
    CHECK(total == (std::uint64_t{1} << (2 * n)));
  }
  CHECK(rho_exact(1, 2) == 1);
  CHECK(rho_exact(2, 2) == Rational(3, 4));
  CHECK_THROWS_AS(length_census(13, 2), BudgetExceeded);
  CHECK_THROWS_AS(length_census(4, 2, 255), BudgetExceeded);
  CHECK_NOTHROW(length_census(4, 2, 256));
  CHECK_THROWS_AS(rho_exact(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(length_census(2, 0), std::invalid_argument);
}

TEST_CASE("matcher handles letter codes and limits") {
  ExactMatcher matcher;
  std::vector<std::uint32_t> codes{0, 2, 3, 1};
  CHECK(matcher.unmatched(codes, 2) == 0);
  codes = {0, 4};
  CHECK_THROWS_AS(matcher.unmatched(codes, 2), std::invalid_argument);
  const std::vector<std::uint32_t> long_codes(ExactMatcher::kMaxLength + 1, 0);
  CHECK_THROWS_AS(matcher.unmatched(long_codes, 1), std::length_error);
  // Reuse across sizes must not leak state.
  CHECK(matcher.unmatched(word("abBA")) == 0);
  CHECK(matcher.unmatched(word("ab")) == 2);
  CHECK(matcher.unmatched(word("abBAaA")) == 0);
}
