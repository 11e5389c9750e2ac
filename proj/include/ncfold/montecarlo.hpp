#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncfold/rational.hpp"

namespace ncfold {

/// Sampling is split into fixed-size chunks; chunk c draws from
/// Rng::stream(seed, c). Results are merged in chunk order, so they depend
/// only on (seed, chunk_size), never on the worker count.
struct SamplingConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 20240601;
  std::size_t workers = 1;
  std::size_t chunk_size = 64;
  /// Failure probability of the reported Hoeffding interval.
  double alpha = 0.05;
};

/// Minimum unmatched counts of `samples` uniform words of length n, in
/// sample order.
std::vector<std::uint32_t> sample_lengths(std::size_t n, std::size_t k, const SamplingConfig& config);

struct EstimateReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double mean_fraction = 0;        ///< estimate of E[length] / n
  double standard_error = 0;       ///< per_sample_sd / (n sqrt(samples))
  double per_sample_sd = 0;        ///< sample standard deviation of the length
  double hoeffding_halfwidth = 0;  ///< sqrt(8 log(2/alpha) / (n samples))
  double alpha = 0;
};

/// Half-width for the mean of `samples` words of length n. Each revealed
/// letter moves the length by at most 2, so the total length over all
/// samples is sub-Gaussian with variance proxy 4 n samples.
double hoeffding_halfwidth(std::size_t n, std::size_t samples, double alpha);

EstimateReport summarize(std::size_t n, std::size_t k, const SamplingConfig& config,
                         const std::vector<std::uint32_t>& lengths);

EstimateReport estimate_rho(std::size_t n, std::size_t k, const SamplingConfig& config);

struct ConcentrationReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t samples = 0;
  double center = 0;            ///< empirical mean length (stands in for n rho_k(n))
  double center_shift = 0;      ///< standard error of the center, in units of sqrt(n)
  double per_sample_sd = 0;
  std::vector<double> t_grid;
  std::vector<double> empirical_tail;  ///< fraction with |length - center| > t sqrt(n)
  std::vector<double> bound;           ///< 2 exp(-t^2 / 8)
  std::vector<double> slack;           ///< allowance: centering shift + 3 binomial s.e.
  std::vector<bool> within;            ///< empirical_tail <= bound + slack

  bool all_within() const;
};

ConcentrationReport concentration_experiment(std::size_t n, std::size_t k,
                                             const std::vector<double>& t_grid,
                                             const SamplingConfig& config);

struct SubadditivityReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;  ///< samples with length(uv) > length(u) + length(v)
  std::size_t equalities = 0;  ///< samples with length(uv) == length(u) + length(v)
  double mean_m = 0;           ///< estimate of L(m)
  double mean_n = 0;           ///< estimate of L(n)
  double mean_sum = 0;         ///< estimate of L(m + n)
  double halfwidth_m = 0;      ///< Hoeffding half-widths on the same scale
  double halfwidth_n = 0;
  double halfwidth_sum = 0;
  /// Exact L(m), L(n), L(m+n) when (2k)^(m+n) fits the budget.
  std::optional<Rational> exact_m;
  std::optional<Rational> exact_n;
  std::optional<Rational> exact_sum;
};

SubadditivityReport subadditivity_experiment(std::size_t m, std::size_t n, std::size_t k,
                                             const SamplingConfig& config,
                                             std::uint64_t exact_budget = 0);

struct MonotonicityReport {
  EstimateReport lower;   ///< the smaller alphabet
  EstimateReport higher;  ///< the larger alphabet
  bool ordered = false;    ///< lower.mean <= higher.mean
  bool separated = false;  ///< Hoeffding intervals are disjoint and ordered
};

/// Compares rho_{k_low}(n) with rho_{k_high}(n); both runs use the same seed.
MonotonicityReport monotonicity_experiment(std::size_t n, std::size_t k_low, std::size_t k_high,
                                           const SamplingConfig& config);

/// Unmatched fraction 1 - 2 reductions / n of one greedy run on a uniform
/// word of length n drawn from Rng(seed).
double greedy_longrun(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace ncfold
