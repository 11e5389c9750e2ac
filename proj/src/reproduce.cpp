#include "ncfold/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ncfold/bounds.hpp"
#include "ncfold/chain.hpp"
#include "ncfold/greedy.hpp"
#include "ncfold/matching.hpp"
#include "ncfold/montecarlo.hpp"
#include "ncfold/rng.hpp"

namespace ncfold {

namespace {

std::string fixed(double x, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << x;
  return out.str();
}

CheckResult start(int id, std::string group, std::string title) {
  CheckResult r;
  r.id = id;
  r.group = std::move(group);
  r.title = std::move(title);
  return r;
}

/// Calls fn on every word of length n over k generators.
void for_each_word(std::size_t n, std::size_t k, const std::function<void(const Word&)>& fn) {
  std::vector<std::uint32_t> digits(n, 0);
  const auto base = static_cast<std::uint32_t>(2 * k);
  while (true) {
    Word w(k);
    for (auto d : digits) w.push_back(Letter::from_code(d));
    fn(w);
    std::size_t i = n;
    while (i > 0 && ++digits[i - 1] == base) digits[--i] = 0;
    if (i == 0) return;
  }
}

CheckResult check_census(const ReproduceOptions& options) {
  CheckResult r = start(1, "census", "exhaustive census k=2, n=4");
  const auto census = length_census(4, 2, options.budget);
  const std::map<std::size_t, std::uint64_t> expected{{0, 28}, {2, 168}, {4, 60}};
  const Rational rho = rho_exact(4, 2, options.budget);
  Json rows = Json::array();
  for (const auto& [value, count] : census) rows.push_back(Json{{"ell_value", value}, {"count", count}});
  r.data = Json{{"n", 4}, {"k", 2}, {"census", rows}, {"rho", to_json(rho)}};
  r.passed = census == expected && rho == Rational(9, 16);
  r.detail = "census {0:" + std::to_string(census.count(0) ? census.at(0) : 0) + ", 2:" +
             std::to_string(census.count(2) ? census.at(2) : 0) + ", 4:" +
             std::to_string(census.count(4) ? census.at(4) : 0) + "}, rho(4) = " + to_string(rho) +
             " (expected {0:28, 2:168, 4:60}, 9/16)";
  return r;
}

CheckResult check_oracle(const ReproduceOptions& options) {
  CheckResult r = start(2, "oracle", "interval DP agrees with exhaustive search");
  ExactMatcher matcher;
  std::size_t exhaustive = 0, random_words = 0, mismatches = 0;
  Json first_mismatch;
  auto compare = [&](const Word& w) {
    const auto dp = matcher.unmatched(w);
    const auto brute = brute_force_length(w).unmatched;
    if (dp != brute) {
      if (mismatches == 0) first_mismatch = Json{{"word", to_json(w)}, {"dp", dp}, {"brute_force", brute}};
      ++mismatches;
    }
  };
  for_each_word(6, 2, [&](const Word& w) {
    compare(w);
    ++exhaustive;
  });
  Rng rng(derive_seed(options.seed, 2));
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t k = 2 + i % 2;
    const std::size_t n = 1 + rng.uniform_below(kBruteForceLimit);
    compare(sample_word(n, k, rng));
    ++random_words;
  }
  r.data = Json{{"exhaustive_words", exhaustive}, {"random_words", random_words}, {"mismatches", mismatches}};
  if (mismatches > 0) r.data["first_mismatch"] = first_mismatch;
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatches over " + std::to_string(exhaustive) +
             " exhaustive (k=2, n=6) and " + std::to_string(random_words) + " random words (n<=14, k=2,3)";
  return r;
}

CheckResult check_invariance(const ReproduceOptions&) {
  CheckResult r = start(3, "invariance", "length is invariant under free reduction and conjugation");
  ExactMatcher matcher;
  std::size_t reduction_checked = 0, reduction_violations = 0;
  for (std::size_t n = 0; n <= 6; ++n) {
    for_each_word(n, 2, [&](const Word& w) {
      ++reduction_checked;
      if (matcher.unmatched(w) != matcher.unmatched(free_reduce(w))) ++reduction_violations;
    });
  }
  std::vector<Word> conjugators;
  for (std::size_t n = 0; n <= 2; ++n) for_each_word(n, 2, [&](const Word& h) { conjugators.push_back(h); });
  std::size_t conjugation_checked = 0, conjugation_violations = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    for_each_word(n, 2, [&](const Word& w) {
      const auto base = matcher.unmatched(w);
      for (const auto& h : conjugators) {
        ++conjugation_checked;
        if (matcher.unmatched(conjugate(w, h)) != base) ++conjugation_violations;
      }
    });
  }
  r.data = Json{{"reduction", {{"k", 2}, {"max_len", 6}, {"checked", reduction_checked}, {"violations", reduction_violations}}},
                {"conjugation",
                 {{"k", 2}, {"max_word_len", 4}, {"max_conjugator_len", 2}, {"checked", conjugation_checked},
                  {"violations", conjugation_violations}}}};
  r.passed = reduction_violations == 0 && conjugation_violations == 0;
  r.detail = std::to_string(reduction_violations) + "/" + std::to_string(reduction_checked) +
             " reduction and " + std::to_string(conjugation_violations) + "/" +
             std::to_string(conjugation_checked) + " conjugation violations";
  return r;
}

CheckResult check_greedy(const ReproduceOptions&) {
  CheckResult r = start(4, "greedy", "greedy golden example");
  // alpha beta alpha beta alpha^-1 alpha beta^-1 beta
  const Word w = parse_word("ababAaBb", 2);
  const GreedyTrace trace = greedy_match(w);
  const std::vector<IndexPair> expected{{2, 7}, {3, 5}};
  r.data = to_json(trace);
  r.data["word"] = to_json(w);
  r.passed = trace.matched_pairs == expected && trace.unmatched == 4;
  std::string pairs;
  for (const auto& p : trace.matched_pairs) {
    pairs += (pairs.empty() ? "" : ", ") + std::string("(") + std::to_string(p.left) + "," + std::to_string(p.right) + ")";
  }
  r.detail = "pairs {" + pairs + "}, " + std::to_string(trace.unmatched) + " unmatched (expected {(2,7), (3,5)}, 4)";
  return r;
}

CheckResult check_constants(const ReproduceOptions&) {
  CheckResult r = start(5, "constants", "chain constants and lambda-tilde table");
  const ChainParams params = chain_params(2);
  bool ok = params.tau == std::vector<Rational>{Rational(1, 2), Rational(1, 3)} && params.Z == 13;
  // The published table, k = 2..5.
  const std::vector<std::pair<std::size_t, Rational>> table{
      {2, Rational(3, 13)}, {3, Rational(33, 100)}, {4, Rational(297, 455)}, {5, Rational(3126, 7115)}};
  Json rows = Json::array();
  std::string mismatches;
  for (const auto& [k, published] : table) {
    const Rational value = lambda_tilde(k);
    rows.push_back(Json{{"k", k}, {"computed", to_json(value)}, {"published", to_json(published)}, {"match", value == published}});
    if (value != published) {
      ok = false;
      mismatches += std::string(mismatches.empty() ? " " : "; ") + "k=" + std::to_string(k) + ": computed " + to_string(value) + " = " + fixed(to_double(value)) +
                    ", table " + to_string(published) + " = " + fixed(to_double(published));
    }
  }
  r.data = Json{{"chain_params_k2", to_json(params)}, {"lambda_tilde", rows}};
  r.passed = ok;
  r.detail = "tau=(" + to_string(params.tau[0]) + "," + to_string(params.tau[1]) + "), Z=" + to_string(params.Z) +
             (mismatches.empty() ? "; lambda-tilde 3/13, 33/100, 297/455, 3126/7115 all exact"
                                 : "; lambda-tilde mismatch:" + mismatches);
  return r;
}

CheckResult check_balance(const ReproduceOptions& options) {
  CheckResult r = start(6, "balance", "balance equations of the product-form stationary law");
  ChainParams k2 = chain_params(2);
  if (options.tau2_override) k2.tau[1] = *options.tau2_override;
  const BalanceReport report2 = verify_balance(k2, 4);
  const BalanceReport report3 = verify_balance(3, 3);
  ChainParams perturbed = chain_params(2);
  perturbed.tau[0] += Rational(1, 1000);
  const BalanceReport injected = verify_balance(perturbed, 4);
  r.data = Json{{"k2", to_json(report2)}, {"k3", to_json(report3)}, {"injected_perturbation", to_json(injected)}};
  if (options.tau2_override) r.data["tau2_override"] = to_json(*options.tau2_override);
  r.passed = report2.ok() && report3.ok() && !injected.ok();
  r.detail = std::to_string(report2.violations.size()) + " violations (k=2, L=4, " +
             std::to_string(report2.words_checked) + " words), " + std::to_string(report3.violations.size()) +
             " (k=3, L=3, " + std::to_string(report3.words_checked) + " words); perturbed tau_1 gives " +
             std::to_string(injected.violations.size()) + " violations";
  if (options.tau2_override) r.detail += "; tau_2 overridden to " + to_string(*options.tau2_override);
  return r;
}

CheckResult check_truncated(const ReproduceOptions& options) {
  CheckResult r = start(7, "truncated", "truncated chain matches the stationary law on short words");
  constexpr double kTolerance = 1e-10;
  Json rows = Json::array();
  std::vector<std::string> passing;
  std::string summary;
  for (Blocking convention : {Blocking::SelfLoop, Blocking::Renormalize}) {
    const TruncatedChain chain = truncated_chain_pi(2, 5, convention, options.budget);
    const TruncationComparison cmp = compare_with_stationary(chain);
    const bool ok = cmp.max_abs_diff_anchored <= kTolerance;
    Json row = to_json(chain, cmp);
    row["passes"] = ok;
    rows.push_back(row);
    if (ok) passing.push_back(to_string(convention));
    std::ostringstream line;
    line.precision(3);
    line << to_string(convention) << " anchored " << cmp.max_abs_diff_anchored << " (normalized "
         << cmp.max_abs_diff_normalized << ")";
    summary += (summary.empty() ? "" : "; ") + line.str();
  }
  r.data = Json{{"tolerance", kTolerance}, {"conventions", rows}, {"passing", passing}};
  r.passed = !passing.empty();
  r.detail = summary + (passing.empty() ? "; no convention passes" : "; passing convention: " + passing.front());
  return r;
}

CheckResult check_ergodic(const ReproduceOptions& options) {
  CheckResult r = start(8, "ergodic", "long greedy run approaches lambda-tilde");
  const std::vector<std::pair<std::size_t, Rational>> targets{{2, Rational(3, 13)}, {3, Rational(33, 100)}};
  Json rows = Json::array();
  bool ok = true;
  for (const auto& [k, target] : targets) {
    const std::uint64_t seed = derive_seed(options.seed, 80 + k);
    const double fraction = greedy_longrun(options.ergodic_length, k, seed);
    const double gap = std::abs(fraction - to_double(target));
    ok = ok && gap <= 0.005;
    rows.push_back(Json{{"k", k}, {"n", options.ergodic_length}, {"seed", seed}, {"fraction", fraction},
                        {"target", to_json(target)}, {"gap", gap}});
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + ": " + fixed(fraction, 5) +
                " vs " + to_string(target) + " (gap " + fixed(gap, 5) + ", limit 0.005)";
  }
  r.data = Json{{"runs", rows}};
  r.passed = ok;
  return r;
}

CheckResult check_bounds(const ReproduceOptions&) {
  CheckResult r = start(9, "bounds", "lower and upper bounds for k=2");
  const BoundReport report = bound_report(2);
  const double base_at = base_exponent(0.03, 2);
  const double refined_at = refined_exponent_k2(0.034);
  const double elementary = *report.upper_elementary;
  const bool base_ok = base_at < 0 && report.lower_base >= 0.03;
  const bool refined_ok = refined_at < 0 && *report.lower_refined >= 0.034;
  const bool elementary_ok = std::abs(elementary - 0.2886) <= 0.0005;
  const bool bracket_ok = report.consistent() && *report.lower_refined >= 0.034 && report.upper_greedy <= Rational(3, 13);
  r.data = to_json(report);
  r.data["checks"] = Json{{"base_exponent_at_0.03", base_at},
                          {"refined_exponent_at_0.034", refined_at},
                          {"base_ok", base_ok},
                          {"refined_ok", refined_ok},
                          {"elementary_ok", elementary_ok},
                          {"bracket_ok", bracket_ok}};
  r.passed = base_ok && refined_ok && elementary_ok && bracket_ok;
  r.detail = "base root " + fixed(report.lower_base) + " (exponent at 0.03: " + fixed(base_at) + "), refined root " +
             fixed(*report.lower_refined) + " (exponent at 0.034: " + fixed(refined_at) + "), elementary " +
             fixed(elementary) + ", bracket [" + fixed(*report.lower_refined) + ", " + to_string(report.upper_greedy) +
             "] " + (bracket_ok ? "consistent" : "inconsistent");
  return r;
}

CheckResult check_trivial(const ReproduceOptions& options) {
  CheckResult r = start(10, "trivial", "trivial-word counts");
  constexpr std::size_t kMaxP = 12;
  std::vector<BigInt> counts;
  for (std::size_t p = 0; p <= kMaxP; ++p) counts.push_back(trivial_word_count(p, 2));
  bool ok = counts[2] == 4 && counts[4] == 28;

  Json census_rows = Json::array();
  for (std::size_t n = 2; n <= 8; n += 2) {
    const auto census = length_census(n, 2, options.budget);
    const std::uint64_t zeros = census.count(0) ? census.at(0) : 0;
    const bool match = BigInt(zeros) == counts[n];
    ok = ok && match;
    census_rows.push_back(Json{{"n", n}, {"census_zero", zeros}, {"count", counts[n].str()}, {"match", match}});
  }
  // tau_{p+q} >= tau_p tau_q  <=>  T_{p+q} >= T_p T_q (common denominator 4^{p+q}).
  std::size_t supermult_violations = 0;
  for (std::size_t p = 1; p < kMaxP; ++p) {
    for (std::size_t q = 1; p + q <= kMaxP; ++q) {
      if (counts[p + q] < counts[p] * counts[q]) ++supermult_violations;
    }
  }
  // tau_p <= theta^p with theta^2 = 3/4: T_p^2 <= 3^p 4^p for every p.
  std::size_t theta_violations = 0;
  for (std::size_t p = 1; p <= kMaxP; ++p) {
    const auto e = static_cast<unsigned>(p);
    if (counts[p] * counts[p] > boost::multiprecision::pow(BigInt(12), e)) ++theta_violations;
  }
  ok = ok && supermult_violations == 0 && theta_violations == 0;
  Json count_rows = Json::array();
  for (std::size_t p = 0; p <= kMaxP; ++p) count_rows.push_back(Json{{"p", p}, {"count", counts[p].str()}});
  r.data = Json{{"k", 2}, {"counts", count_rows}, {"census", census_rows},
                {"supermultiplicativity_violations", supermult_violations}, {"theta_violations", theta_violations}};
  r.passed = ok;
  r.detail = "T_2=" + counts[2].str() + ", T_4=" + counts[4].str() + ", census zeros " +
             (std::all_of(census_rows.begin(), census_rows.end(), [](const Json& j) { return j["match"].get<bool>(); })
                  ? "match for n<=8"
                  : "MISMATCH") +
             ", " + std::to_string(supermult_violations) + " super-multiplicativity and " +
             std::to_string(theta_violations) + " theta violations (p<=12)";
  return r;
}

CheckResult check_concentration(const ReproduceOptions& options) {
  CheckResult r = start(11, "concentration", "concentration around the mean");
  SamplingConfig config;
  config.samples = options.concentration_samples;
  config.seed = derive_seed(options.seed, 11);
  config.workers = options.workers;
  const ConcentrationReport report = concentration_experiment(200, 2, {1.0, 2.0, 3.0}, config);
  r.data = to_json(report);
  r.data["seed"] = config.seed;
  r.passed = report.all_within();
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    r.detail += (i ? "; " : "") + std::string("t=") + fixed(report.t_grid[i], 0) + ": tail " +
                fixed(report.empirical_tail[i], 5) + " <= " + fixed(report.bound[i] + report.slack[i], 5);
  }
  r.detail += " (n=200, " + std::to_string(report.samples) + " samples)";
  return r;
}

CheckResult check_bracket(const ReproduceOptions& options) {
  CheckResult r = start(12, "bracket", "Monte Carlo estimate inside the proven bracket");
  SamplingConfig config;
  config.samples = options.bracket_samples;
  config.seed = derive_seed(options.seed, 12);
  config.workers = options.workers;
  const EstimateReport estimate = estimate_rho(options.bracket_n, 2, config);
  const bool inside = estimate.mean_fraction > 0.034 && estimate.mean_fraction < 0.231;

  // L(4n) <= 4 L(n), so rho is non-increasing along n = 4, 16, 64, 256.
  SamplingConfig trend_config = config;
  trend_config.samples = options.trend_samples;
  Json trend = Json::array();
  bool monotone = true;
  std::optional<EstimateReport> previous;
  for (std::size_t n : {4, 16, 64, 256}) {
    trend_config.seed = derive_seed(options.seed, 1200 + n);
    const EstimateReport point = estimate_rho(n, 2, trend_config);
    bool step_ok = true;
    if (previous) {
      const double allowance = 3.0 * std::hypot(previous->standard_error, point.standard_error);
      step_ok = point.mean_fraction <= previous->mean_fraction + allowance;
    }
    monotone = monotone && step_ok;
    Json row = to_json(point);
    row["non_increasing"] = step_ok;
    trend.push_back(row);
    previous = point;
  }
  r.data = Json{{"estimate", to_json(estimate)}, {"bracket", {0.034, 0.231}}, {"inside", inside},
                {"trend", trend}, {"trend_non_increasing", monotone}};
  r.passed = inside && monotone;
  r.detail = "rho_hat(" + std::to_string(options.bracket_n) + ") = " + fixed(estimate.mean_fraction, 5) +
             " +/- " + fixed(estimate.hoeffding_halfwidth, 5) + " (Hoeffding, 95%), s.e. " +
             fixed(estimate.standard_error, 5) + ", " + (inside ? "inside" : "outside") +
             " (0.034, 0.231); trend over n=4,16,64,256 " + (monotone ? "non-increasing" : "NOT non-increasing");
  return r;
}

struct CheckSpec {
  std::string group;
  CheckResult (*run)(const ReproduceOptions&);
};

const std::vector<CheckSpec>& checks() {
  static const std::vector<CheckSpec> all{
      {"census", check_census},       {"oracle", check_oracle},       {"invariance", check_invariance},
      {"greedy", check_greedy},       {"constants", check_constants}, {"balance", check_balance},
      {"truncated", check_truncated}, {"ergodic", check_ergodic},     {"bounds", check_bounds},
      {"trivial", check_trivial},     {"concentration", check_concentration}, {"bracket", check_bracket}};
  return all;
}

}  // namespace

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups = [] {
    std::vector<std::string> out;
    for (const auto& c : checks()) out.push_back(c.group);
    return out;
  }();
  return groups;
}

std::vector<CheckResult> reproduce_paper(const ReproduceOptions& options) {
  for (const auto& name : options.only) {
    if (std::find(check_groups().begin(), check_groups().end(), name) == check_groups().end()) {
      throw std::invalid_argument("unknown check group '" + name + "'");
    }
  }
  std::vector<CheckResult> results;
  int id = 0;
  for (const auto& check : checks()) {
    ++id;
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), check.group) == options.only.end()) {
      continue;
    }
    const auto began = std::chrono::steady_clock::now();
    CheckResult result;
    try {
      result = check.run(options);
    } catch (const std::exception& e) {
      result = start(id, check.group, check.group);
      result.detail = std::string("error: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
    results.push_back(std::move(result));
  }
  return results;
}

void write_reports(const std::filesystem::path& dir, const ReproduceOptions& options,
                   const std::vector<CheckResult>& results) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  Json summary_checks = Json::array();
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    summary_checks.push_back(Json{{"id", r.id}, {"group", r.group}, {"title", r.title}, {"passed", r.passed},
                                  {"detail", r.detail}, {"seconds", r.seconds}});
    write(r.group + ".json", r.data.dump(2) + "\n");
    if (r.group == "census" && r.data.contains("census")) {
      std::string csv = "ell_value,count\n";
      for (const auto& row : r.data["census"]) {
        csv += std::to_string(row["ell_value"].get<std::size_t>()) + "," +
               std::to_string(row["count"].get<std::uint64_t>()) + "\n";
      }
      write("census.csv", csv);
    }
    if (r.group == "concentration" && r.data.contains("rows")) {
      std::string csv = "t,empirical_tail,bound,slack,within\n";
      for (const auto& row : r.data["rows"]) {
        csv += row["t"].dump() + "," + row["empirical_tail"].dump() + "," + row["bound"].dump() + "," +
               row["slack"].dump() + "," + (row["within"].get<bool>() ? "true" : "false") + "\n";
      }
      write("concentration.csv", csv);
    }
  }
  Json config{{"seed", options.seed}, {"workers", options.workers}, {"budget", options.budget},
              {"only", options.only}, {"bracket_n", options.bracket_n}, {"bracket_samples", options.bracket_samples},
              {"trend_samples", options.trend_samples}, {"concentration_samples", options.concentration_samples},
              {"ergodic_length", options.ergodic_length}};
  if (options.tau2_override) config["tau2_override"] = to_string(*options.tau2_override);
  const Json summary{{"config", config}, {"all_passed", all_passed}, {"checks", summary_checks}};
  write("summary.json", summary.dump(2) + "\n");
}

}  // namespace ncfold
