#include "ncfold/bounds.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "ncfold/chain.hpp"

namespace ncfold {

namespace {

/// f(lo) < 0 <= f(hi); returns the left end of the final bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("bisection tolerance must be positive");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

constexpr double kBracketLow = 1e-6;

}  // namespace

double theta(std::size_t k) {
  if (k < 1) throw std::invalid_argument("theta: k must be at least 1");
  return std::sqrt(static_cast<double>(2 * k - 1)) / static_cast<double>(k);
}

BigInt trivial_word_count(std::size_t p, std::size_t k) {
  if (k < 1) throw std::invalid_argument("trivial_word_count: k must be at least 1");
  // walks[d]: words of the current length whose reduced form has length d.
  std::vector<BigInt> walks{1};
  for (std::size_t step = 0; step < p; ++step) {
    std::vector<BigInt> next(walks.size() + 1, 0);
    for (std::size_t d = 0; d < walks.size(); ++d) {
      if (walks[d] == 0) continue;
      if (d == 0) {
        next[1] += walks[0] * (2 * k);
      } else {
        next[d + 1] += walks[d] * (2 * k - 1);
        next[d - 1] += walks[d];
      }
    }
    walks = std::move(next);
  }
  return walks[0];
}

double log_tau_asymptotic(std::size_t m, std::size_t k) {
  if (k < 1) throw std::invalid_argument("tau_asymptotic: k must be at least 1");
  const double md = static_cast<double>(m);
  return md * std::log(2.0 * k - 1.0) - 2.0 * md * std::log(2.0 * k) - std::log(md + 1.0) +
         std::lgamma(2.0 * md + 1.0) - 2.0 * std::lgamma(md + 1.0);
}

double tau_asymptotic(std::size_t m, std::size_t k) { return std::exp(log_tau_asymptotic(m, k)); }

double entropy(double delta) {
  if (!(delta > 0 && delta < 1)) throw std::domain_error("entropy: delta must lie in (0, 1)");
  return -delta * std::log(delta) - (1 - delta) * std::log1p(-delta);
}

double base_exponent(double delta, std::size_t k, ExponentForm form) {
  const double log_theta = std::log(theta(k));
  return form == ExponentForm::Stated ? entropy(delta) + log_theta
                                      : entropy(delta) + (1 - delta) * log_theta;
}

double lower_bound_base(std::size_t k, double tol, ExponentForm form) {
  if (k < 2) throw std::invalid_argument("lower_bound_base: k must be at least 2");
  auto f = [&](double d) { return base_exponent(d, k, form); };
  if (form == ExponentForm::Stated) {
    if (f(0.5) < 0) return 1.0;
    return bisect(f, kBracketLow, 0.5, tol);
  }
  return bisect(f, kBracketLow, 1.0 - 1e-12, tol);
}

double refined_exponent_k2(double delta) {
  return entropy(delta) + delta * std::log(0.75) + (1 - delta) * std::log(theta(2));
}

double lower_bound_refined_k2(double tol) {
  return bisect(refined_exponent_k2, kBracketLow, 0.5, tol);
}

ElementaryBound upper_bound_elementary_k2(std::size_t truncation, double tol) {
  const double U = static_cast<double>(truncation);
  const double tail = (U + 2.0) * std::exp2(-U) / 4.0;
  if (tail > tol) {
    throw std::invalid_argument("upper_bound_elementary_k2: truncation " + std::to_string(truncation) +
                                " leaves tail " + std::to_string(tail) + " above tolerance");
  }
  double sum = 0;
  for (std::size_t u = 1; u <= truncation; ++u) {
    const double ud = static_cast<double>(u);
    double inner = 0;
    for (std::size_t x = 0; x <= u; ++x) {
      const double xd = static_cast<double>(x);
      const double log_pmf = std::lgamma(ud + 1) - std::lgamma(xd + 1) - std::lgamma(ud - xd + 1) -
                             ud * std::numbers::ln2;
      inner += std::exp(log_pmf) * std::abs(2.0 * xd - ud);
    }
    sum += std::exp2(-ud) * inner;
  }
  return {sum / 4.0, tail, truncation};
}

bool BoundReport::consistent() const {
  auto in_unit = [](double x) { return x > 0 && x < 1; };
  const double greedy = to_double(upper_greedy);
  double best_lower = lower_base;
  if (!in_unit(lower_base) || !in_unit(greedy)) return false;
  if (lower_refined) {
    if (!in_unit(*lower_refined) || *lower_refined < lower_base) return false;
    best_lower = *lower_refined;
  }
  if (best_lower >= greedy) return false;
  if (upper_elementary) {
    if (!in_unit(*upper_elementary) || best_lower >= *upper_elementary) return false;
  }
  return true;
}

BoundReport bound_report(std::size_t k, double tol) {
  if (k < 2) throw std::invalid_argument("bound_report: k must be at least 2");
  BoundReport report;
  report.k = k;
  report.lower_base = lower_bound_base(k, tol, ExponentForm::Stated);
  report.lower_base_rigorous = lower_bound_base(k, tol, ExponentForm::Rigorous);
  report.upper_greedy = lambda_tilde(k);
  report.notes.push_back("lower_base: sup delta with h(delta) + log theta_k < 0");
  report.notes.push_back("lower_base_rigorous: sup delta with h(delta) + (1 - delta) log theta_k < 0");
  report.notes.push_back("upper_greedy: limiting unmatched fraction of the one-sided greedy matching");
  if (k == 2) {
    report.lower_refined = lower_bound_refined_k2(tol);
    report.upper_elementary = upper_bound_elementary_k2(64, tol).value;
    report.notes.push_back("lower_refined: maximal-triple count, h + delta log(3/4) + (1 - delta) log(sqrt(3)/2)");
    report.notes.push_back("upper_elementary: (1/4) E|2 xi - U|, geometric runs of one generator");
  }
  return report;
}

double round_down(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::floor(x * scale) / scale;
}

double round_up(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::ceil(x * scale) / scale;
}

}  // namespace ncfold
