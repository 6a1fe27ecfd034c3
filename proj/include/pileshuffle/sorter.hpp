#pragma once

/**
 * @file sorter.hpp
 * @brief Minimal single-round sorting shuffles.
 *
 * Every constructor here follows the same scan: start label 1 on pile 1,
 * and move label s+1 to the next pile exactly when it would otherwise be
 * collected out of order behind label s. On queues that happens at each
 * descent, on stacks at each ascent, and on a mixed schedule it depends on
 * the type of the pile label s sits on. The result is pointwise minimal:
 * every other sort on the same types puts each label on a pile at least as
 * high.
 */

#include "pileshuffle/permutation.hpp"
#include "pileshuffle/shuffle.hpp"

#include <cstddef>
#include <variant>

namespace pileshuffle {

/// A sort using piles 1..piles_used, each non-empty, with materialized types.
struct SortPlan {
    TypeSchedule types;
    PileAssignment assignment;
    std::size_t piles_used = 0;

    bool operator==(const SortPlan&) const = default;
};

/// The minimal-sort scan needed a pile beyond the schedule.
struct Infeasible {
    /// Label s at which the scan first needed pile piles_available + 1 (0 if unknown).
    std::size_t position = 0;
    std::size_t piles_available = 0;

    bool operator==(const Infeasible&) const = default;
};

using SortResult = std::variant<SortPlan, Infeasible>;

enum class SortMode { AllQueues, AllStacks, DealerChoice };

/// Cumulative ascending runs: piles_used == ascending_runs(p).
SortPlan minimal_queue_sort(const Permutation& p);

/// Cumulative descending runs: piles_used == descending_runs(p).
SortPlan minimal_stack_sort(const Permutation& p);

/**
 * Minimal sort of @p p on the fixed schedule @p types.
 *
 * The returned plan's types are truncated to the piles it uses. If the scan
 * runs past a finite schedule, returns Infeasible with the offending label.
 */
SortResult minimal_sort_on_types(const Permutation& p, const TypeSchedule& types);

/**
 * Minimal sort when the dealer picks each pile's type as it is opened.
 *
 * A pile opened by label s is a queue if p(s+1) > p(s) and a stack if
 * p(s+1) < p(s), so that s+1 can join it. A pile opened by the last label
 * is a queue.
 */
SortPlan dealer_choice_minimal_sort(const Permutation& p);

/// Whether @p p can be sorted in one round on at most @p budget piles.
bool feasible(const Permutation& p, std::size_t budget, SortMode mode);

const char* to_string(SortMode mode) noexcept;

}  // namespace pileshuffle
