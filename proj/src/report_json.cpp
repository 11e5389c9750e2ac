#include "ncfold/report_json.hpp"

namespace ncfold {

Json to_json(const Word& w) {
  Json out = Json::array();
  for (const Letter& x : w.letters()) {
    const auto g = static_cast<std::int64_t>(x.generator);
    out.push_back(x.inverted ? -g : g);
  }
  return out;
}

Json to_json(const Rational& q) {
  return Json{{"value", to_string(q)}, {"decimal", to_double(q)}};
}

Json to_json(const IndexPair& p) { return Json::array({p.left, p.right}); }

Json to_json(const Matching& m) {
  Json pairs = Json::array();
  for (const auto& p : m.pairs) pairs.push_back(to_json(p));
  return pairs;
}

Json to_json(const LengthResult& r) {
  return Json{{"n", r.witness.n}, {"unmatched", r.unmatched}, {"pairs", to_json(r.witness)}};
}

Json to_json(const GreedyTrace& trace) {
  Json pairs = Json::array();
  for (const auto& p : trace.matched_pairs) pairs.push_back(to_json(p));
  return Json{{"n", trace.unmatched + 2 * trace.reductions},
              {"pairs", pairs},
              {"reductions", trace.reductions},
              {"unmatched", trace.unmatched},
              {"discarded", trace.discarded},
              {"final_state", to_json(trace.final_state)}};
}

Json to_json(const ChainParams& params) {
  Json tau = Json::array();
  for (const auto& t : params.tau) tau.push_back(to_json(t));
  return Json{{"k", params.k}, {"tau", tau}, {"Z", to_json(params.Z)}};
}

Json to_json(const BalanceReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json entry{{"word", to_json(v.word)}, {"expected", to_json(v.expected)}, {"divergent", v.divergent}};
    if (!v.divergent) entry["inflow"] = to_json(v.inflow);
    violations.push_back(entry);
  }
  return Json{{"k", report.k},
              {"max_len", report.max_len},
              {"words_checked", report.words_checked},
              {"ok", report.ok()},
              {"violations", violations}};
}

Json to_json(const TruncatedChain& chain, const TruncationComparison& comparison) {
  return Json{{"k", chain.k},
              {"L", chain.max_len},
              {"convention", to_string(chain.convention)},
              {"states", chain.states.size()},
              {"words_compared", comparison.words_compared},
              {"max_abs_diff_normalized", comparison.max_abs_diff_normalized},
              {"max_abs_diff_anchored", comparison.max_abs_diff_anchored},
              {"short_mass_truncated", comparison.short_mass_truncated},
              {"short_mass_exact", comparison.short_mass_exact}};
}

Json to_json(const BoundReport& report, int digits) {
  Json bounds{{"lower_base", round_down(report.lower_base, digits)},
              {"lower_base_rigorous", round_down(report.lower_base_rigorous, digits)}};
  Json exact{{"lower_base", report.lower_base}, {"lower_base_rigorous", report.lower_base_rigorous}};
  if (report.lower_refined) {
    bounds["lower_refined"] = round_down(*report.lower_refined, digits);
    exact["lower_refined"] = *report.lower_refined;
  }
  if (report.upper_elementary) {
    bounds["upper_elementary"] = round_up(*report.upper_elementary, digits);
    exact["upper_elementary"] = *report.upper_elementary;
  }
  bounds["upper_greedy"] = round_up(to_double(report.upper_greedy), digits);
  exact["upper_greedy"] = to_string(report.upper_greedy);
  return Json{{"k", report.k},
              {"bounds", bounds},
              {"exact", exact},
              {"consistent", report.consistent()},
              {"notes", report.notes}};
}

Json to_json(const EstimateReport& report) {
  return Json{{"k", report.k},
              {"n", report.n},
              {"samples", report.samples},
              {"seed", report.seed},
              {"mean_fraction", report.mean_fraction},
              {"standard_error", report.standard_error},
              {"per_sample_sd", report.per_sample_sd},
              {"hoeffding_halfwidth", report.hoeffding_halfwidth},
              {"alpha", report.alpha}};
}

Json to_json(const ConcentrationReport& report) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    rows.push_back(Json{{"t", report.t_grid[i]},
                        {"empirical_tail", report.empirical_tail[i]},
                        {"bound", report.bound[i]},
                        {"slack", report.slack[i]},
                        {"within", static_cast<bool>(report.within[i])}});
  }
  return Json{{"k", report.k},
              {"n", report.n},
              {"samples", report.samples},
              {"center", report.center},
              {"center_shift", report.center_shift},
              {"per_sample_sd", report.per_sample_sd},
              {"all_within", report.all_within()},
              {"rows", rows}};
}

Json to_json(const SubadditivityReport& report) {
  Json out{{"k", report.k},
           {"m", report.m},
           {"n", report.n},
           {"samples", report.samples},
           {"violations", report.violations},
           {"equalities", report.equalities},
           {"mean_m", report.mean_m},
           {"mean_n", report.mean_n},
           {"mean_sum", report.mean_sum},
           {"halfwidth_m", report.halfwidth_m},
           {"halfwidth_n", report.halfwidth_n},
           {"halfwidth_sum", report.halfwidth_sum}};
  if (report.exact_sum) {
    Json exact{{"sum", to_json(*report.exact_sum)}};
    if (report.exact_m) exact["m"] = to_json(*report.exact_m);
    if (report.exact_n) exact["n"] = to_json(*report.exact_n);
    out["exact"] = exact;
  }
  return out;
}

Json to_json(const MonotonicityReport& report) {
  return Json{{"lower", to_json(report.lower)},
              {"higher", to_json(report.higher)},
              {"ordered", report.ordered},
              {"separated", report.separated}};
}

}  // namespace ncfold
