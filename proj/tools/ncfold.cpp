// Command-line front end. Usage errors exit 2, computation errors exit 1.

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncfold/bounds.hpp"
#include "ncfold/chain.hpp"
#include "ncfold/greedy.hpp"
#include "ncfold/matching.hpp"
#include "ncfold/montecarlo.hpp"
#include "ncfold/report_json.hpp"
#include "ncfold/reproduce.hpp"
#include "ncfold/rng.hpp"

namespace {

using namespace ncfold;

constexpr std::uint64_t kDefaultSeed = 20240601;

/// A problem with the request itself rather than with running it.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Text };

struct Common {
  std::string format;
  std::uint64_t budget = kDefaultBudget;
};

Format resolve_format(const std::string& text, Format fallback, std::initializer_list<Format> allowed,
                      const std::string& command) {
  Format f = fallback;
  if (text == "json") {
    f = Format::Json;
  } else if (text == "csv") {
    f = Format::Csv;
  } else if (text == "text") {
    f = Format::Text;
  } else if (!text.empty()) {
    throw UsageError("unknown format '" + text + "'");
  }
  for (Format a : allowed) {
    if (a == f) return f;
  }
  throw UsageError(command + " does not support --format " + text);
}

void emit(Json result, const Json& config) {
  result["config"] = config;
  std::cout << result.dump(2) << "\n";
}

std::string csv_value(double x) { return Json(x).dump(); }

std::string format_state(const Word& w) {
  return w.k() <= 26 ? format_word(w, WordFormat::Compact) : format_word(w, WordFormat::Signed);
}

void add_format(CLI::App* sub, Common& common, const std::string& choices) {
  sub->add_option("--format", common.format, "Output format: " + choices);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncfold: non-crossing matching length of free-group words"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--budget", common.budget, "Cap on exhaustive enumeration sizes")
      ->envname("NCFOLD_BUDGET")
      ->check(CLI::PositiveNumber);

  std::function<void()> run;

  // exact
  std::string word_text;
  std::size_t k = 2;
  bool witness = false;
  auto* exact = app.add_subcommand("exact", "Minimum unmatched letters of one word");
  exact->add_option("--word", word_text, "Word: compact letters (aB) or signed integers (1 -2)")->required();
  exact->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  exact->add_flag("--witness", witness, "Include an optimal matching");
  add_format(exact, common, "json");
  exact->callback([&] {
    run = [&] {
      resolve_format(common.format, Format::Json, {Format::Json}, "exact");
      const Word w = parse_word(word_text, k);
      const LengthResult result = optimal_length(w);
      Json out = to_json(result);
      if (!witness) out.erase("pairs");
      emit(out, Json{{"command", "exact"}, {"word", to_json(w)}, {"k", k}, {"witness", witness}});
    };
  });

  // census
  std::size_t n = 0;
  auto* census = app.add_subcommand("census", "Distribution of the length over all words of length n");
  census->add_option("--n", n, "Word length")->required();
  census->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  add_format(census, common, "csv (default), json");
  census->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Csv, {Format::Csv, Format::Json}, "census");
      const auto counts = length_census(n, k, common.budget);
      if (f == Format::Csv) {
        std::cout << "ell_value,count\n";
        for (const auto& [value, count] : counts) std::cout << value << "," << count << "\n";
        return;
      }
      Json rows = Json::array();
      for (const auto& [value, count] : counts) rows.push_back(Json{{"ell_value", value}, {"count", count}});
      Json out{{"n", n}, {"k", k}, {"census", rows}};
      if (n > 0) out["rho"] = to_json(rho_exact(n, k, common.budget));
      emit(out, Json{{"command", "census"}, {"n", n}, {"k", k}, {"budget", common.budget}});
    };
  });

  // greedy
  auto* greedy = app.add_subcommand("greedy", "One-sided greedy matching of one word");
  greedy->add_option("--word", word_text, "Word text")->required();
  greedy->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  add_format(greedy, common, "json");
  greedy->callback([&] {
    run = [&] {
      resolve_format(common.format, Format::Json, {Format::Json}, "greedy");
      const Word w = parse_word(word_text, k);
      emit(to_json(greedy_match(w)), Json{{"command", "greedy"}, {"word", to_json(w)}, {"k", k}});
    };
  });

  // greedy-sim
  std::uint64_t seed = kDefaultSeed;
  auto* greedy_sim = app.add_subcommand("greedy-sim", "Trajectory of the greedy chain on a random word");
  greedy_sim->add_option("--n", n, "Number of steps")->required();
  greedy_sim->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  greedy_sim->add_option("--seed", seed, "Random seed")->capture_default_str();
  add_format(greedy_sim, common, "csv");
  greedy_sim->callback([&] {
    run = [&] {
      resolve_format(common.format, Format::Csv, {Format::Csv}, "greedy-sim");
      Rng rng(seed);
      GreedySimulator sim(k);
      std::ostringstream out;
      out << "t,accessible_length,reductions\n";
      for (std::size_t t = 1; t <= n; ++t) {
        sim.push(static_cast<std::uint32_t>(rng.uniform_below(2 * k)));
        out << t << "," << sim.accessible_length() << "," << sim.reductions() << "\n";
      }
      std::cout << out.str();
    };
  });

  // chain verify / chain truncated
  std::size_t max_len = 4;
  std::string convention_text = "blocked-selfloop";
  auto* chain = app.add_subcommand("chain", "Accessible-word chain: balance check and truncated solve");
  chain->require_subcommand(1);
  auto* verify = chain->add_subcommand("verify", "Exact balance equations for words up to a length");
  verify->add_option("--k", k, "Number of generators")->required();
  verify->add_option("--max-len", max_len, "Longest word checked")->required();
  add_format(verify, common, "json");
  verify->callback([&] {
    run = [&] {
      resolve_format(common.format, Format::Json, {Format::Json}, "chain verify");
      const BalanceReport report = verify_balance(k, max_len);
      emit(to_json(report), Json{{"command", "chain verify"}, {"k", k}, {"max_len", max_len}});
      if (!report.ok()) throw std::runtime_error("balance equations violated");
    };
  });
  auto* truncated = chain->add_subcommand("truncated", "Stationary law of the chain truncated at length L");
  truncated->add_option("--k", k, "Number of generators")->required();
  truncated->add_option("--L", max_len, "Truncation length")->required();
  truncated->add_option("--convention", convention_text, "blocked-selfloop or blocked-renormalize")
      ->capture_default_str();
  add_format(truncated, common, "json (default), csv");
  truncated->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "chain truncated");
      const Blocking convention = parse_blocking(convention_text);
      const TruncatedChain result = truncated_chain_pi(k, max_len, convention, common.budget);
      if (f == Format::Csv) {
        const ChainParams params = chain_params(k);
        std::cout << "word,length,pi_truncated,pi\n";
        for (std::size_t i = 0; i < result.states.size(); ++i) {
          std::cout << format_state(result.states[i]) << "," << result.states[i].size() << ","
                    << csv_value(result.pi[i]) << ","
                    << csv_value(to_double(stationary_pi(result.states[i], params))) << "\n";
        }
        return;
      }
      emit(to_json(result, compare_with_stationary(result)),
           Json{{"command", "chain truncated"}, {"k", k}, {"L", max_len}, {"convention", to_string(convention)},
                {"budget", common.budget}});
    };
  });

  // lambda-tilde
  auto* lt = app.add_subcommand("lambda-tilde", "Limiting unmatched fraction of the greedy algorithm");
  lt->add_option("--k", k, "Number of generators")->required();
  add_format(lt, common, "text (default), json");
  lt->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Text, {Format::Text, Format::Json}, "lambda-tilde");
      const Rational value = lambda_tilde(k);
      if (f == Format::Text) {
        std::ostringstream decimal;
        decimal.precision(6);
        decimal << std::fixed << to_double(value);
        std::cout << to_string(value) << " ≈ " << decimal.str() << "\n";
        return;
      }
      emit(Json{{"k", k}, {"lambda_tilde", to_json(value)}}, Json{{"command", "lambda-tilde"}, {"k", k}});
    };
  });

  // bounds
  double tol = 1e-9;
  int digits = 6;
  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the limiting fraction");
  bounds->add_option("--k", k, "Number of generators")->required();
  bounds->add_option("--tol", tol, "Bisection tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  bounds->add_option("--digits", digits, "Decimals in directionally rounded output")
      ->capture_default_str()
      ->check(CLI::Range(1, 15));
  add_format(bounds, common, "json");
  bounds->callback([&] {
    run = [&] {
      resolve_format(common.format, Format::Json, {Format::Json}, "bounds");
      emit(to_json(bound_report(k, tol), digits),
           Json{{"command", "bounds"}, {"k", k}, {"tol", tol}, {"digits", digits}});
    };
  });

  // trivial-count
  std::size_t p = 0;
  auto* trivial = app.add_subcommand("trivial-count", "Number of words of length p equal to the identity");
  trivial->add_option("--p", p, "Word length")->required();
  trivial->add_option("--k", k, "Number of generators")->required();
  add_format(trivial, common, "text (default), json");
  trivial->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Text, {Format::Text, Format::Json}, "trivial-count");
      const BigInt count = trivial_word_count(p, k);
      if (f == Format::Text) {
        std::cout << count.str() << "\n";
        return;
      }
      emit(Json{{"p", p}, {"k", k}, {"count", count.str()}}, Json{{"command", "trivial-count"}, {"p", p}, {"k", k}});
    };
  });

  // Monte Carlo commands share the sampling flags.
  SamplingConfig sampling;
  sampling.seed = kDefaultSeed;
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", sampling.samples, "Number of random words")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", sampling.seed, "Master seed")->capture_default_str();
    sub->add_option("--workers", sampling.workers, "Worker threads (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--chunk", sampling.chunk_size, "Samples per seeded chunk")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--alpha", sampling.alpha, "Failure probability of the Hoeffding interval")
        ->capture_default_str();
  };
  auto sampling_json = [&](const std::string& command) {
    return Json{{"command", command},         {"samples", sampling.samples}, {"seed", sampling.seed},
                {"workers", sampling.workers}, {"chunk", sampling.chunk_size}, {"alpha", sampling.alpha}};
  };
  auto estimate_csv = [](const std::vector<EstimateReport>& rows) {
    std::cout << "k,n,samples,seed,mean_fraction,standard_error,per_sample_sd,hoeffding_halfwidth,alpha\n";
    for (const auto& r : rows) {
      std::cout << r.k << "," << r.n << "," << r.samples << "," << r.seed << "," << csv_value(r.mean_fraction) << ","
                << csv_value(r.standard_error) << "," << csv_value(r.per_sample_sd) << ","
                << csv_value(r.hoeffding_halfwidth) << "," << csv_value(r.alpha) << "\n";
    }
  };

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of the expected unmatched fraction");
  estimate->add_option("--n", n, "Word length")->required()->check(CLI::PositiveNumber);
  estimate->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  add_sampling(estimate);
  add_format(estimate, common, "json (default), csv");
  estimate->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "estimate");
      const EstimateReport report = estimate_rho(n, k, sampling);
      if (f == Format::Csv) return estimate_csv({report});
      Json config = sampling_json("estimate");
      config["n"] = n;
      config["k"] = k;
      emit(to_json(report), config);
    };
  });

  std::vector<double> t_grid{1.0, 2.0, 3.0};
  auto* concentrate = app.add_subcommand("concentrate", "Empirical tails against the concentration bound");
  concentrate->add_option("--n", n, "Word length")->required()->check(CLI::PositiveNumber);
  concentrate->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  concentrate->add_option("--t", t_grid, "Deviation thresholds in units of sqrt(n)")->capture_default_str();
  add_sampling(concentrate);
  add_format(concentrate, common, "json (default), csv");
  concentrate->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "concentrate");
      const ConcentrationReport report = concentration_experiment(n, k, t_grid, sampling);
      if (f == Format::Csv) {
        std::cout << "t,empirical_tail,bound,slack,within\n";
        for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
          std::cout << csv_value(report.t_grid[i]) << "," << csv_value(report.empirical_tail[i]) << ","
                    << csv_value(report.bound[i]) << "," << csv_value(report.slack[i]) << ","
                    << (report.within[i] ? "true" : "false") << "\n";
        }
        return;
      }
      Json config = sampling_json("concentrate");
      config["n"] = n;
      config["k"] = k;
      config["t"] = t_grid;
      emit(to_json(report), config);
    };
  });

  std::size_t m = 0;
  auto* subadd = app.add_subcommand("subadd", "Subadditivity of the length under concatenation");
  subadd->add_option("--m", m, "Length of the first factor")->required();
  subadd->add_option("--n", n, "Length of the second factor")->required();
  subadd->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  add_sampling(subadd);
  add_format(subadd, common, "json (default), csv");
  subadd->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "subadd");
      const SubadditivityReport report = subadditivity_experiment(m, n, k, sampling, common.budget);
      if (f == Format::Csv) {
        std::cout << "k,m,n,samples,violations,equalities,mean_m,mean_n,mean_sum,halfwidth_m,halfwidth_n,"
                     "halfwidth_sum\n"
                  << report.k << "," << report.m << "," << report.n << "," << report.samples << ","
                  << report.violations << "," << report.equalities << "," << csv_value(report.mean_m) << ","
                  << csv_value(report.mean_n) << "," << csv_value(report.mean_sum) << ","
                  << csv_value(report.halfwidth_m) << "," << csv_value(report.halfwidth_n) << ","
                  << csv_value(report.halfwidth_sum) << "\n";
        return;
      }
      Json config = sampling_json("subadd");
      config["m"] = m;
      config["n"] = n;
      config["k"] = k;
      config["budget"] = common.budget;
      emit(to_json(report), config);
    };
  });

  std::size_t k_high = 0;
  auto* mono = app.add_subcommand("mono", "Compare the unmatched fraction for two alphabet sizes");
  mono->add_option("--n", n, "Word length")->required()->check(CLI::PositiveNumber);
  mono->add_option("--k", k, "Smaller number of generators")->required()->check(CLI::PositiveNumber);
  mono->add_option("--k-high", k_high, "Larger number of generators (default k + 1)");
  add_sampling(mono);
  add_format(mono, common, "json (default), csv");
  mono->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "mono");
      const std::size_t high = k_high == 0 ? k + 1 : k_high;
      const MonotonicityReport report = monotonicity_experiment(n, k, high, sampling);
      if (f == Format::Csv) return estimate_csv({report.lower, report.higher});
      Json config = sampling_json("mono");
      config["n"] = n;
      config["k"] = k;
      config["k_high"] = high;
      emit(to_json(report), config);
    };
  });

  auto* longrun = app.add_subcommand("greedy-longrun", "Unmatched fraction of one long greedy run");
  longrun->add_option("--n", n, "Word length")->required()->check(CLI::PositiveNumber);
  longrun->add_option("--k", k, "Number of generators")->required()->check(CLI::PositiveNumber);
  longrun->add_option("--seed", seed, "Random seed")->capture_default_str();
  add_format(longrun, common, "json (default), csv");
  longrun->callback([&] {
    run = [&] {
      const Format f = resolve_format(common.format, Format::Json, {Format::Json, Format::Csv}, "greedy-longrun");
      const double fraction = greedy_longrun(n, k, seed);
      if (f == Format::Csv) {
        std::cout << "k,n,seed,fraction\n" << k << "," << n << "," << seed << "," << csv_value(fraction) << "\n";
        return;
      }
      Json out{{"k", k}, {"n", n}, {"seed", seed}, {"fraction", fraction}};
      if (k >= 2) out["lambda_tilde"] = to_json(lambda_tilde(k));
      emit(out, Json{{"command", "greedy-longrun"}, {"n", n}, {"k", k}, {"seed", seed}});
    };
  });

  // reproduce
  ReproduceOptions repro;
  std::string out_dir = "reports";
  std::string tau2_text;
  auto* reproduce = app.add_subcommand("reproduce", "Run every check and write a report directory");
  reproduce->add_option("--only", repro.only, "Run only these check groups")
      ->check(CLI::IsMember(check_groups()));
  reproduce->add_option("--out", out_dir, "Report directory")->capture_default_str();
  reproduce->add_option("--seed", repro.seed, "Master seed")->capture_default_str();
  reproduce->add_option("--workers", repro.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  reproduce->add_option("--bracket-n", repro.bracket_n, "Word length of the bracket estimate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--bracket-samples", repro.bracket_samples, "Samples for the bracket estimate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--concentration-samples", repro.concentration_samples, "Samples for the tail check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--perturb-tau2", tau2_text, "Replace tau_2 (p/q) in the balance check, for fault injection");
  reproduce->callback([&] {
    run = [&] {
      repro.budget = common.budget;
      if (!tau2_text.empty()) {
        try {
          repro.tau2_override = Rational(tau2_text);
        } catch (const std::exception&) {
          throw UsageError("--perturb-tau2 expects a rational p/q, got '" + tau2_text + "'");
        }
      }
      repro.out_dir = out_dir;
      const auto results = reproduce_paper(repro);
      write_reports(out_dir, repro, results);
      std::size_t failed = 0;
      for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.group << ": " << r.detail << "\n";
        if (!r.passed) ++failed;
      }
      std::cout << results.size() - failed << "/" << results.size() << " checks passed; reports in " << out_dir
                << "\n";
      if (failed > 0) {
        std::cout << "failed:";
        for (const auto& r : results) {
          if (!r.passed) std::cout << " " << r.group;
        }
        std::cout << "\n";
        throw std::runtime_error(std::to_string(failed) + " check(s) failed");
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (run) run();
  } catch (const UsageError& e) {
    std::cerr << "ncfold: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ncfold: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ncfold: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
