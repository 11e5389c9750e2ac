#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncfold/rational.hpp"

namespace ncfold {

/// Exponential decay rate of the probability that a random word is trivial:
/// sqrt(2k - 1) / k.
double theta(std::size_t k);

/// Exact number of words of length p that reduce to the identity, by
/// counting walks of the reduced-length process (0 -> 1 in 2k ways, d -> d+1
/// in 2k-1 ways, d -> d-1 in one way).
BigInt trivial_word_count(std::size_t p, std::size_t k);

/// (2k-1)^m / ((2k)^{2m} (m+1)) * C(2m, m): the Catalan-path estimate of the
/// return probability after 2m steps. It treats the step out of 0 like any
/// other up-step, so it undercounts at finite m (3/16 instead of 4/16 at
/// m = 1, k = 2); its 2m-th root still tends to theta(k). Underflows to 0
/// for large m; use log_tau_asymptotic there.
double tau_asymptotic(std::size_t m, std::size_t k);

/// Natural log of tau_asymptotic, finite for every m.
double log_tau_asymptotic(std::size_t m, std::size_t k);

/// Binary entropy in nats. Throws std::domain_error outside (0, 1).
double entropy(double delta);

/// Exponent in the bound P(length < n delta) <= exp(n * exponent).
enum class ExponentForm {
  /// h(delta) + log theta_k, as stated in the literature.
  Stated,
  /// h(delta) + (1 - delta) log theta_k: the triple count only pays
  /// theta_k for the 2m = n(1 - delta) matched letters.
  Rigorous,
};

double base_exponent(double delta, std::size_t k, ExponentForm form = ExponentForm::Stated);

/// Supremum of the delta with base_exponent < 0, by bisection to `tol`.
/// Stated form: searched on (1e-6, 1/2); when the exponent is already
/// negative at 1/2 every delta in (0, 1) qualifies and 1 is returned.
/// Rigorous form: the exponent has a single sign change on (0, 1).
/// Requires k >= 2.
double lower_bound_base(std::size_t k, double tol, ExponentForm form = ExponentForm::Stated);

/// h(delta) + delta log(3/4) + (1 - delta) log(sqrt(3)/2): the k = 2 bound
/// that counts unmatched letters before the last matched one with three
/// choices instead of four.
double refined_exponent_k2(double delta);
double lower_bound_refined_k2(double tol);

struct ElementaryBound {
  double value = 0;        ///< partial sum up to the truncation
  double tail_bound = 0;   ///< certified bound on the omitted terms
  std::size_t truncation = 0;
};

/// (1/4) E|2 xi - U| with U ~ Geometric(1/2) on {1, 2, ...} and
/// xi | U ~ Binomial(U, 1/2), summed for U <= truncation. The omitted mass
/// is at most (1/4) sum_{u > U} u 2^-u = (U + 2) 2^-U / 4. Throws
/// std::invalid_argument when that exceeds tol.
ElementaryBound upper_bound_elementary_k2(std::size_t truncation, double tol);

struct BoundReport {
  std::size_t k = 0;
  double lower_base = 0;
  double lower_base_rigorous = 0;
  std::optional<double> lower_refined;
  std::optional<double> upper_elementary;
  Rational upper_greedy;
  std::vector<std::string> notes;

  /// lower_base <= lower_refined < upper bounds, all in (0, 1).
  bool consistent() const;
};

BoundReport bound_report(std::size_t k, double tol = 1e-9);

/// Directional rounding to `digits` decimals.
double round_down(double x, int digits);
double round_up(double x, int digits);

}  // namespace ncfold
