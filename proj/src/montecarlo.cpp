#include "ncfold/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ncfold/greedy.hpp"
#include "ncfold/matching.hpp"
#include "ncfold/rng.hpp"

namespace ncfold {

namespace {

void check_config(const SamplingConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (config.chunk_size < 1) throw std::invalid_argument("chunk size must be at least 1");
  if (!(config.alpha > 0 && config.alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

/// Runs body(chunk_index, begin, end) for every chunk, spread over the
/// configured workers. body must only write to its own slice of the output.
template <typename Body>
void for_each_chunk(const SamplingConfig& config, Body body) {
  const std::size_t chunks = (config.samples + config.chunk_size - 1) / config.chunk_size;
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * config.chunk_size;
    const std::size_t end = std::min(config.samples, begin + config.chunk_size);
    body(c, begin, end);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct Moments {
  double mean = 0;
  double sd = 0;
};

/// Exact integer sums, so the result is independent of summation order.
Moments moments(const std::vector<std::uint32_t>& values) {
  unsigned long long sum = 0;
  unsigned long long sum_sq = 0;  // n <= 65534, so samples * n^2 stays far below 2^64
  for (auto v : values) {
    sum += v;
    sum_sq += static_cast<unsigned long long>(v) * v;
  }
  const double count = static_cast<double>(values.size());
  Moments out;
  out.mean = static_cast<double>(sum) / count;
  if (values.size() > 1) {
    const double centered = static_cast<double>(sum_sq) - static_cast<double>(sum) * out.mean;
    out.sd = std::sqrt(std::max(0.0, centered / (count - 1)));
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> sample_lengths(std::size_t n, std::size_t k, const SamplingConfig& config) {
  check_config(config);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<std::uint32_t> lengths(config.samples);
  for_each_chunk(config, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = Rng::stream(config.seed, chunk);
    ExactMatcher matcher;
    std::vector<std::uint32_t> codes(n);
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& c : codes) c = static_cast<std::uint32_t>(rng.uniform_below(2 * k));
      lengths[s] = static_cast<std::uint32_t>(matcher.unmatched(codes, k));
    }
  });
  return lengths;
}

double hoeffding_halfwidth(std::size_t n, std::size_t samples, double alpha) {
  return std::sqrt(8.0 * std::log(2.0 / alpha) /
                   (static_cast<double>(n) * static_cast<double>(samples)));
}

EstimateReport summarize(std::size_t n, std::size_t k, const SamplingConfig& config,
                         const std::vector<std::uint32_t>& lengths) {
  const Moments mom = moments(lengths);
  EstimateReport report;
  report.k = k;
  report.n = n;
  report.samples = lengths.size();
  report.seed = config.seed;
  report.alpha = config.alpha;
  const double nd = static_cast<double>(n);
  report.mean_fraction = n == 0 ? 0.0 : mom.mean / nd;
  report.per_sample_sd = mom.sd;
  report.standard_error = n == 0 ? 0.0 : mom.sd / (nd * std::sqrt(static_cast<double>(lengths.size())));
  report.hoeffding_halfwidth = n == 0 ? 0.0 : hoeffding_halfwidth(n, lengths.size(), config.alpha);
  return report;
}

EstimateReport estimate_rho(std::size_t n, std::size_t k, const SamplingConfig& config) {
  if (n < 1) throw std::invalid_argument("estimate_rho: n must be at least 1");
  return summarize(n, k, config, sample_lengths(n, k, config));
}

bool ConcentrationReport::all_within() const {
  for (bool ok : within) {
    if (!ok) return false;
  }
  return true;
}

ConcentrationReport concentration_experiment(std::size_t n, std::size_t k,
                                             const std::vector<double>& t_grid,
                                             const SamplingConfig& config) {
  if (n < 1) throw std::invalid_argument("concentration_experiment: n must be at least 1");
  const auto lengths = sample_lengths(n, k, config);
  const Moments mom = moments(lengths);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double samples = static_cast<double>(lengths.size());

  ConcentrationReport report;
  report.n = n;
  report.k = k;
  report.samples = lengths.size();
  report.center = mom.mean;
  report.per_sample_sd = mom.sd;
  report.center_shift = mom.sd / std::sqrt(samples) / root_n;
  report.t_grid = t_grid;
  for (double t : t_grid) {
    std::size_t exceed = 0;
    for (auto v : lengths) {
      if (std::abs(static_cast<double>(v) - mom.mean) > t * root_n) ++exceed;
    }
    const double tail = static_cast<double>(exceed) / samples;
    const double bound = 2.0 * std::exp(-t * t / 8.0);
    // Centering at the sample mean can move the threshold by center_shift.
    const double shifted_t = std::max(0.0, t - report.center_shift);
    const double shifted_bound = 2.0 * std::exp(-shifted_t * shifted_t / 8.0);
    const double p = std::min(1.0, shifted_bound);
    const double binomial_se = std::sqrt(std::max(p * (1 - p), 1.0 / samples) / samples);
    const double slack = (shifted_bound - bound) + 3.0 * binomial_se;
    report.empirical_tail.push_back(tail);
    report.bound.push_back(bound);
    report.slack.push_back(slack);
    report.within.push_back(tail <= bound + slack);
  }
  return report;
}

SubadditivityReport subadditivity_experiment(std::size_t m, std::size_t n, std::size_t k,
                                             const SamplingConfig& config, std::uint64_t exact_budget) {
  check_config(config);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<std::uint32_t> left(config.samples), right(config.samples), joined(config.samples);
  for_each_chunk(config, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = Rng::stream(config.seed, chunk);
    ExactMatcher matcher;
    std::vector<std::uint32_t> codes(m + n);
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& c : codes) c = static_cast<std::uint32_t>(rng.uniform_below(2 * k));
      const std::span<const std::uint32_t> all(codes);
      left[s] = static_cast<std::uint32_t>(matcher.unmatched(all.first(m), k));
      right[s] = static_cast<std::uint32_t>(matcher.unmatched(all.last(n), k));
      joined[s] = static_cast<std::uint32_t>(matcher.unmatched(all, k));
    }
  });

  SubadditivityReport report;
  report.m = m;
  report.n = n;
  report.k = k;
  report.samples = config.samples;
  for (std::size_t s = 0; s < config.samples; ++s) {
    const auto sum = left[s] + right[s];
    if (joined[s] > sum) ++report.violations;
    if (joined[s] == sum) ++report.equalities;
  }
  report.mean_m = moments(left).mean;
  report.mean_n = moments(right).mean;
  report.mean_sum = moments(joined).mean;
  // Half-width on the length scale: n * sqrt(8 log(2/alpha) / (n samples)).
  auto width = [&](std::size_t len) {
    return len == 0 ? 0.0
                    : static_cast<double>(len) * hoeffding_halfwidth(len, config.samples, config.alpha);
  };
  report.halfwidth_m = width(m);
  report.halfwidth_n = width(n);
  report.halfwidth_sum = width(m + n);

  if (exact_budget > 0) {
    auto exact_mean = [&](std::size_t len) -> std::optional<Rational> {
      if (len == 0) return Rational(0);
      try {
        return rho_exact(len, k, exact_budget) * Rational(len);
      } catch (const BudgetExceeded&) {
        return std::nullopt;
      }
    };
    report.exact_sum = exact_mean(m + n);
    if (report.exact_sum) {
      report.exact_m = exact_mean(m);
      report.exact_n = exact_mean(n);
    }
  }
  return report;
}

MonotonicityReport monotonicity_experiment(std::size_t n, std::size_t k_low, std::size_t k_high,
                                           const SamplingConfig& config) {
  if (k_low > k_high) throw std::invalid_argument("monotonicity_experiment: k_low must not exceed k_high");
  MonotonicityReport report;
  report.lower = estimate_rho(n, k_low, config);
  report.higher = estimate_rho(n, k_high, config);
  report.ordered = report.lower.mean_fraction <= report.higher.mean_fraction;
  report.separated = report.lower.mean_fraction + report.lower.hoeffding_halfwidth <
                     report.higher.mean_fraction - report.higher.hoeffding_halfwidth;
  return report;
}

double greedy_longrun(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("greedy_longrun: n must be at least 1");
  Rng rng(seed);
  GreedySimulator sim(k);
  for (std::size_t t = 0; t < n; ++t) sim.push(static_cast<std::uint32_t>(rng.uniform_below(2 * k)));
  return 1.0 - 2.0 * static_cast<double>(sim.reductions()) / static_cast<double>(n);
}

}  // namespace ncfold
