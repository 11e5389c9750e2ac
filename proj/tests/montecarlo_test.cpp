#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ncfold/chain.hpp"
#include "ncfold/matching.hpp"
#include "ncfold/montecarlo.hpp"

using namespace ncfold;

namespace {

SamplingConfig config(std::size_t samples, std::uint64_t seed, std::size_t workers = 1) {
  SamplingConfig c;
  c.samples = samples;
  c.seed = seed;
  c.workers = workers;
  return c;
}

}  // namespace

TEST_CASE("Hoeffding half-width") {
  CHECK(hoeffding_halfwidth(100, 50, 0.05) == doctest::Approx(std::sqrt(8 * std::log(40.0) / 5000)));
  CHECK(hoeffding_halfwidth(400, 50, 0.05) == doctest::Approx(hoeffding_halfwidth(100, 50, 0.05) / 2));
}

TEST_CASE("results do not depend on the worker count") {
  const auto one = sample_lengths(40, 2, config(300, 9, 1));
  const auto three = sample_lengths(40, 2, config(300, 9, 3));
  const auto eight = sample_lengths(40, 2, config(300, 9, 8));
  CHECK(one == three);
  CHECK(one == eight);
  CHECK(one != sample_lengths(40, 2, config(300, 10, 1)));

  const EstimateReport a = estimate_rho(30, 3, config(500, 4, 1));
  const EstimateReport b = estimate_rho(30, 3, config(500, 4, 4));
  CHECK(a.mean_fraction == b.mean_fraction);
  CHECK(a.per_sample_sd == b.per_sample_sd);

  // A prefix of the samples is the same run with fewer samples.
  const auto shorter = sample_lengths(40, 2, config(100, 9, 2));
  CHECK(std::equal(shorter.begin(), shorter.end(), one.begin()));
}

TEST_CASE("estimates agree with exact values on small lengths") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const EstimateReport r = estimate_rho(n, 2, config(20000, 100 + n));
    const double exact = to_double(rho_exact(n, 2));
    CHECK(std::abs(r.mean_fraction - exact) <= 4 * r.standard_error + 1e-12);
    CHECK(std::abs(r.mean_fraction - exact) <= r.hoeffding_halfwidth);
  }
}

TEST_CASE("estimates decrease along n = 4, 16, 64, 256") {
  // L(4n) <= 4 L(n), so rho is non-increasing along this sequence.
  std::optional<EstimateReport> previous;
  for (std::size_t n : {4, 16, 64, 256}) {
    const EstimateReport r = estimate_rho(n, 2, config(2000, 7 * n));
    if (previous) CHECK(r.mean_fraction <= previous->mean_fraction + 3 * std::hypot(r.standard_error, previous->standard_error));
    previous = r;
  }
}

TEST_CASE("long greedy runs") {
  CHECK(std::abs(greedy_longrun(1000000, 2, 1) - 3.0 / 13) <= 0.005);
  CHECK(std::abs(greedy_longrun(1000000, 3, 2) - 0.33) <= 0.005);
  CHECK(greedy_longrun(5000, 2, 3) == greedy_longrun(5000, 2, 3));
  CHECK_THROWS_AS(greedy_longrun(0, 2, 1), std::invalid_argument);
}

TEST_CASE("concentration experiment") {
  const ConcentrationReport r = concentration_experiment(100, 2, {0.5, 1, 2, 3}, config(4000, 5));
  CHECK(r.samples == 4000);
  REQUIRE(r.empirical_tail.size() == 4);
  CHECK(r.all_within());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.bound[i] == doctest::Approx(2 * std::exp(-r.t_grid[i] * r.t_grid[i] / 8)));
    CHECK(r.slack[i] > 0);
    if (i > 0) CHECK(r.empirical_tail[i] <= r.empirical_tail[i - 1]);
  }
  CHECK(r.center / 100 == doctest::Approx(estimate_rho(100, 2, config(4000, 5)).mean_fraction));
}

TEST_CASE("subadditivity experiment") {
  const SubadditivityReport r = subadditivity_experiment(20, 30, 2, config(500, 3));
  CHECK(r.violations == 0);
  CHECK(r.mean_sum <= r.mean_m + r.mean_n);
  CHECK(r.equalities > 0);
  CHECK_FALSE(r.exact_sum);

  // Exactly: L(8) <= 2 L(4).
  const SubadditivityReport e = subadditivity_experiment(4, 4, 2, config(200, 3), std::uint64_t{1} << 16);
  REQUIRE(e.exact_sum);
  REQUIRE(e.exact_m);
  REQUIRE(e.exact_n);
  CHECK(*e.exact_m == Rational(9, 4));
  CHECK(*e.exact_sum <= *e.exact_m + *e.exact_n);
  CHECK(e.violations == 0);
}

TEST_CASE("larger alphabets leave more letters unmatched") {
  const MonotonicityReport r = monotonicity_experiment(200, 2, 3, config(500, 8));
  CHECK(r.ordered);
  CHECK(r.separated);
  CHECK(r.lower.k == 2);
  CHECK(r.higher.k == 3);
  CHECK_THROWS_AS(monotonicity_experiment(20, 3, 2, config(10, 1)), std::invalid_argument);
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(estimate_rho(0, 2, config(10, 1)), std::invalid_argument);
  CHECK_THROWS_AS(estimate_rho(10, 2, config(0, 1)), std::invalid_argument);
  SamplingConfig bad = config(10, 1);
  bad.alpha = 1.5;
  CHECK_THROWS_AS(estimate_rho(10, 2, bad), std::invalid_argument);
  bad = config(10, 1);
  bad.chunk_size = 0;
  CHECK_THROWS_AS(sample_lengths(10, 2, bad), std::invalid_argument);
  CHECK_THROWS_AS(sample_lengths(10, 0, config(10, 1)), std::invalid_argument);
}
