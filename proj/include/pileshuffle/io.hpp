#pragma once

/**
 * @file io.hpp
 * @brief JSON documents for plans, tableaus and probability reports.
 *
 * Schemas (pile numbers are always 1-based on the wire):
 *
 *   SortPlan        {"piles_used": 3, "types": "QQQ", "assignment": [1,1,2,...]}
 *   MultiRoundPlan  {"capacities": [2,2],
 *                    "rounds": [{"types": "QS", "assignment": [...]}, ...]}
 *   ShuffleTableau  {"columns": n, "rows": [{"pile": 1, "type": "Q",
 *                    "cells": [null, 3, ...], "labels": [3, ...]}, ...]}
 *   Probability     {"n", "m", "mode", "exact": "p/q", "float",
 *                    "normal_approx", "clt_limit",
 *                    "mc": {"samples", "estimate", "stderr", "seed"}}
 */

#include "pileshuffle/multiround.hpp"
#include "pileshuffle/shuffle.hpp"
#include "pileshuffle/sorter.hpp"
#include "pileshuffle/stats.hpp"

#include "json.hpp"

#include <optional>
#include <variant>

namespace pileshuffle {

using Json = nlohmann::ordered_json;

/// Raised for documents that do not match the schemas above.
class InvalidDocument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Json to_json(const SortPlan& plan);
Json to_json(const MultiRoundPlan& plan);
Json to_json(const ShuffleTableau& tableau);

SortPlan sort_plan_from_json(const Json& doc);
MultiRoundPlan multiround_plan_from_json(const Json& doc);

/// A plan file holds either kind of plan; "rounds" selects the multi-round form.
using ShufflePlan = std::variant<SortPlan, MultiRoundPlan>;
ShufflePlan shuffle_plan_from_json(const Json& doc);

struct ProbabilityReport {
    std::size_t n = 0;
    std::size_t m = 0;
    SortMode mode = SortMode::AllQueues;
    std::optional<BigRational> exact;
    std::optional<double> normal_approx;
    std::optional<double> clt_limit;
    std::optional<MonteCarloEstimate> mc;
};

Json to_json(const ProbabilityReport& report);

}  // namespace pileshuffle
