#pragma once

#include <json.hpp>

#include "ncfold/bounds.hpp"
#include "ncfold/chain.hpp"
#include "ncfold/greedy.hpp"
#include "ncfold/matching.hpp"
#include "ncfold/montecarlo.hpp"
#include "ncfold/word.hpp"

namespace ncfold {

using Json = nlohmann::ordered_json;

/// Signed generator indices, e.g. [1, -2].
Json to_json(const Word& w);
/// {"value": "p/q", "decimal": ...}
Json to_json(const Rational& q);
Json to_json(const IndexPair& p);
Json to_json(const Matching& m);
Json to_json(const LengthResult& r);
Json to_json(const GreedyTrace& trace);
Json to_json(const ChainParams& params);
Json to_json(const BalanceReport& report);
/// With comparison against the exact stationary distribution.
Json to_json(const TruncatedChain& chain, const TruncationComparison& comparison);
/// Lower bounds rounded down and upper bounds rounded up to `digits`
/// decimals; unrounded values are kept under "exact".
Json to_json(const BoundReport& report, int digits = 6);
Json to_json(const EstimateReport& report);
Json to_json(const ConcentrationReport& report);
Json to_json(const SubadditivityReport& report);
Json to_json(const MonotonicityReport& report);

}  // namespace ncfold
