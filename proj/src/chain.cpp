#include "ncfold/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "ncfold/greedy.hpp"

namespace ncfold {

namespace {

Rational power(const Rational& base, std::size_t exponent) {
  const auto e = static_cast<unsigned>(exponent);
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), e),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), e));
}

/// prod_{j=1}^r j(j+1) / (j(2k-j) - 1), equal to prod_j j tau_j / (1 - j tau_j).
/// Sums over profile classes r = 0..k of the class weight
/// W_r = C(k, r) 2^r prod_{j<=r} j(j+1) / (j(2k-j) - 1), kept over the common
/// denominator D = prod_{j<=k} (j(2k-j) - 1) so that no gcd is taken until
/// the end: total = sum W_r, first_moment = sum r W_r.
struct ClassSums {
  BigInt total;         ///< times D
  BigInt first_moment;  ///< times D
  BigInt denominator;   ///< D
};

ClassSums profile_class_sums(std::size_t k) {
  // Horner in r: W_r = W_{r-1} * 2(k-r+1)(r+1) / (r(2k-r) - 1).
  BigInt numerator = 1;
  ClassSums sums{1, 0, 1};
  for (std::size_t r = 1; r <= k; ++r) {
    const BigInt d = r * (2 * k - r) - 1;
    numerator *= 2 * (k - r + 1) * (r + 1);
    sums.total = sums.total * d + numerator;
    sums.first_moment = sums.first_moment * d + numerator * r;
    sums.denominator *= d;
  }
  return sums;
}

void require_k(std::size_t k, const char* what) {
  if (k < 2) throw std::invalid_argument(std::string(what) + ": k must be at least 2");
}

std::string state_key(const Word& w) {
  std::string key;
  key.reserve(w.size());
  for (const auto& letter : w.letters()) key.push_back(static_cast<char>(letter.code()));
  return key;
}

std::size_t distinct_letters(const Word& w) {
  std::vector<bool> seen(2 * w.k(), false);
  std::size_t d = 0;
  for (const auto& letter : w.letters()) {
    if (!seen[letter.code()]) {
      seen[letter.code()] = true;
      ++d;
    }
  }
  return d;
}

}  // namespace

bool in_omega0(const Word& w) {
  std::vector<bool> seen(2 * w.k(), false);
  for (const auto& letter : w.letters()) seen[letter.code()] = true;
  for (std::size_t c = 0; c < seen.size(); c += 2) {
    if (seen[c] && seen[c + 1]) return false;
  }
  return true;
}

std::vector<Word> enumerate_omega0(std::size_t k, std::size_t max_len, std::uint64_t budget) {
  std::vector<Word> out{Word(k)};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t s = level_begin; s < level_end; ++s) {
      std::vector<bool> present(2 * k, false);
      for (const auto& letter : out[s].letters()) present[letter.code()] = true;
      for (std::uint32_t c = 0; c < 2 * k; ++c) {
        if (present[c ^ 1u]) continue;
        if (out.size() >= budget) {
          throw BudgetExceeded("chain state enumeration exceeds budget " + std::to_string(budget));
        }
        Word next = out[s];
        next.push_back(Letter::from_code(c));
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::size_t AProfile::distinct() const noexcept {
  std::size_t r = 0;
  while (r < a.size() && a[r] > 0) ++r;
  return r;
}

std::size_t AProfile::total() const noexcept {
  std::size_t sum = 0;
  for (auto v : a) sum += v;
  return sum;
}

AProfile a_profile(const Word& w) {
  if (!in_omega0(w)) {
    throw std::invalid_argument("a_profile: word contains a letter and its inverse");
  }
  AProfile profile{std::vector<std::size_t>(w.k(), 0)};
  std::vector<bool> seen(2 * w.k(), false);
  std::size_t distinct = 0;
  for (const auto& letter : w.letters()) {
    if (!seen[letter.code()]) {
      seen[letter.code()] = true;
      ++distinct;
    }
    ++profile.a[distinct - 1];
  }
  return profile;
}

ChainParams chain_params(std::size_t k) {
  require_k(k, "chain_params");
  ChainParams params;
  params.k = k;
  for (std::size_t j = 1; j <= k; ++j) {
    params.tau.emplace_back(BigInt(j + 1), BigInt(j * (2 * k + 1) - 1));
  }
  const ClassSums sums = profile_class_sums(k);
  params.Z = Rational(sums.total, sums.denominator);
  return params;
}

Rational stationary_weight(const Word& w, const ChainParams& params) {
  if (w.k() != params.k) throw std::invalid_argument("stationary_weight: alphabet size mismatch");
  const AProfile profile = a_profile(w);
  Rational sigma = 1;
  for (std::size_t j = 0; j < params.k; ++j) {
    if (profile.a[j] > 0) sigma *= power(params.tau[j], profile.a[j]);
  }
  return sigma;
}

Rational stationary_pi(const Word& w, const ChainParams& params) {
  return stationary_weight(w, params) / params.Z;
}

BigInt count_words_with_profile(const AProfile& profile, std::size_t k) {
  if (profile.a.size() != k) throw std::invalid_argument("count_words_with_profile: profile must have k entries");
  const std::size_t r = profile.distinct();
  for (std::size_t j = r; j < profile.a.size(); ++j) {
    if (profile.a[j] != 0) {
      throw std::invalid_argument("count_words_with_profile: profile must be positive entries then zeros");
    }
  }
  if (r > k) throw std::invalid_argument("count_words_with_profile: more than k distinct letters");
  BigInt count = 1;
  for (std::size_t i = 1; i <= r; ++i) count *= 2 * (k - i + 1);
  for (std::size_t j = 2; j <= r; ++j) {
    count *= boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(profile.a[j - 1] - 1));
  }
  return count;
}

namespace {

class PredecessorSum {
 public:
  PredecessorSum(const Word& target, const ChainParams& params) : target_(target), params_(params) {}

  /// Adds every predecessor obtained from `skeleton` by inserting filler
  /// blocks and appending further new letters. The arriving inverse of
  /// `matched` hits the copy of `matched` placed right after the target word,
  /// so `matched` may not appear in any filler block.
  void extend(const Word& skeleton, Rational factor, std::uint32_t matched) {
    if (divergent_) return;
    std::vector<bool> present(2 * params_.k, false);
    for (const auto& letter : skeleton.letters()) present[letter.code()] = true;

    std::size_t fillers = 0;
    for (std::uint32_t c = 0; c < present.size(); ++c) {
      if (present[c] && c != matched) ++fillers;
    }
    const std::size_t d = distinct_letters(skeleton);
    if (fillers > 0) {
      const Rational ratio = Rational(fillers) * params_.tau[d - 1];
      if (ratio >= 1) {
        divergent_ = true;
        return;
      }
      factor /= (1 - ratio);
    }

    const StepResult step = chain_step(skeleton, Letter::from_code(matched).inverse());
    if (!(step.state == target_)) {
      throw std::logic_error("verify_balance: constructed word is not a predecessor");
    }
    total_ += stationary_weight(skeleton, params_) * factor;

    for (std::uint32_t c = 0; c < present.size(); ++c) {
      if (present[c & ~1u] || present[c | 1u]) continue;
      Word next = skeleton;
      next.push_back(Letter::from_code(c));
      extend(next, factor, matched);
    }
  }

  void add(const Rational& value) { total_ += value; }
  const Rational& total() const noexcept { return total_; }
  bool divergent() const noexcept { return divergent_; }

 private:
  const Word& target_;
  const ChainParams& params_;
  Rational total_ = 0;
  bool divergent_ = false;
};

}  // namespace

BalanceReport verify_balance(const ChainParams& params, std::size_t max_len) {
  require_k(params.k, "verify_balance");
  const std::size_t k = params.k;
  BalanceReport report;
  report.k = k;
  report.max_len = max_len;

  for (const Word& w : enumerate_omega0(k, max_len)) {
    PredecessorSum sum(w, params);
    std::vector<bool> present(2 * k, false);
    for (const auto& letter : w.letters()) present[letter.code()] = true;

    // w without its last letter, followed by that letter.
    if (!w.empty()) {
      Word shorter = w;
      shorter.pop_back();
      sum.add(stationary_weight(shorter, params));
    }
    // A letter already in w, matched and removed together with everything after it.
    for (std::uint32_t x = 0; x < 2 * k; ++x) {
      if (!present[x]) continue;
      Word skeleton = w;
      skeleton.push_back(Letter::from_code(x));
      sum.extend(skeleton, 1, x);
    }
    // A new letter in the same role.
    for (std::uint32_t t = 0; t < 2 * k; ++t) {
      if (present[t] || present[t ^ 1u]) continue;
      Word skeleton = w;
      skeleton.push_back(Letter::from_code(t));
      sum.extend(skeleton, 1, t);
    }

    ++report.words_checked;
    const Rational expected = Rational(2 * k) * stationary_weight(w, params);
    if (sum.divergent()) {
      report.violations.push_back({w, Rational(0), expected, true});
    } else if (sum.total() != expected) {
      report.violations.push_back({w, sum.total(), expected, false});
    }
  }
  return report;
}

BalanceReport verify_balance(std::size_t k, std::size_t max_len) {
  return verify_balance(chain_params(k), max_len);
}

std::string to_string(Blocking convention) {
  return convention == Blocking::SelfLoop ? "blocked-selfloop" : "blocked-renormalize";
}

Blocking parse_blocking(const std::string& text) {
  if (text == "blocked-selfloop" || text == "selfloop") return Blocking::SelfLoop;
  if (text == "blocked-renormalize" || text == "renormalize") return Blocking::Renormalize;
  throw std::invalid_argument("unknown blocking convention '" + text + "'");
}

TruncatedChain truncated_chain_pi(std::size_t k, std::size_t max_len, Blocking convention,
                                  std::uint64_t budget) {
  require_k(k, "truncated_chain_pi");
  if (2 * k > 255) throw std::invalid_argument("truncated_chain_pi: k too large");
  TruncatedChain chain;
  chain.k = k;
  chain.max_len = max_len;
  chain.convention = convention;
  chain.states = enumerate_omega0(k, max_len, budget);
  const std::size_t n = chain.states.size();

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(n);
  for (std::size_t s = 0; s < n; ++s) index.emplace(state_key(chain.states[s]), s);

  // Rows of (P^T - I), with the last row replaced by the normalization.
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n * (2 * k + 2));
  const std::size_t last = n - 1;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> targets;
    std::size_t blocked = 0;
    for (std::uint32_t c = 0; c < 2 * k; ++c) {
      StepResult step = chain_step(chain.states[s], Letter::from_code(c));
      if (step.state.size() > max_len) {
        ++blocked;
        if (convention == Blocking::SelfLoop) targets.push_back(s);
        continue;
      }
      targets.push_back(index.at(state_key(step.state)));
    }
    const double p = convention == Blocking::SelfLoop
                         ? 1.0 / static_cast<double>(2 * k)
                         : 1.0 / static_cast<double>(2 * k - blocked);
    for (std::size_t to : targets) {
      if (to != last) triplets.emplace_back(static_cast<int>(to), static_cast<int>(s), p);
    }
    if (s != last) triplets.emplace_back(static_cast<int>(s), static_cast<int>(s), -1.0);
    triplets.emplace_back(static_cast<int>(last), static_cast<int>(s), 1.0);
  }

  Eigen::SparseMatrix<double> system(static_cast<int>(n), static_cast<int>(n));
  system.setFromTriplets(triplets.begin(), triplets.end());
  system.makeCompressed();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<int>(n));
  rhs(static_cast<int>(last)) = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> solver;
  solver.compute(system);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("truncated_chain_pi: singular system (" + solver.lastErrorMessage() + ")");
  }
  const Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw std::runtime_error("truncated_chain_pi: solve failed");
  chain.pi.assign(x.data(), x.data() + n);
  return chain;
}

TruncationComparison compare_with_stationary(const TruncatedChain& chain) {
  const ChainParams params = chain_params(chain.k);
  TruncationComparison cmp;
  const double anchor = to_double(stationary_pi(Word(chain.k), params)) / chain.pi.at(0);
  for (std::size_t s = 0; s < chain.states.size(); ++s) {
    const Word& w = chain.states[s];
    if (w.size() + 1 > chain.max_len) continue;
    const double exact = to_double(stationary_pi(w, params));
    cmp.max_abs_diff_normalized = std::max(cmp.max_abs_diff_normalized, std::abs(chain.pi[s] - exact));
    cmp.max_abs_diff_anchored = std::max(cmp.max_abs_diff_anchored, std::abs(chain.pi[s] * anchor - exact));
    cmp.short_mass_truncated += chain.pi[s];
    cmp.short_mass_exact += exact;
    ++cmp.words_compared;
  }
  return cmp;
}

Rational lambda_tilde(std::size_t k) {
  require_k(k, "lambda_tilde");
  const ClassSums sums = profile_class_sums(k);
  return 1 - Rational(sums.first_moment, sums.total * k);
}

}  // namespace ncfold
