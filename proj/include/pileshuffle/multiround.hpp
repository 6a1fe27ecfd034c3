#pragma once

/**
 * @file multiround.hpp
 * @brief Multi-round pile shuffles and their single-round "virtual pile"
 * equivalents.
 *
 * T rounds with m_1, ..., m_T piles act on a deck exactly like one round on
 * m_1 * ... * m_T virtual piles. A label's virtual pile is the mixed-radix
 * number whose digits are its per-round piles, with the last round most
 * significant. When stacks are involved a digit is reflected (d -> m-1-d)
 * whenever the label still meets an odd number of stacks in later rounds,
 * and each virtual pile gets a type that depends on the round types alone.
 *
 * Pile numbers in this module are 0-based digits (the radix arithmetic
 * needs them that way). The single-round API is 1-based; the only place the
 * two meet is to_pile_assignment / to_digits.
 */

#include "pileshuffle/permutation.hpp"
#include "pileshuffle/shuffle.hpp"
#include "pileshuffle/sorter.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace pileshuffle {

/// digits[s-1] is the 0-based pile of label s in one round.
using Digits = std::vector<std::size_t>;

/// 0-based digits -> 1-based single-round assignment.
PileAssignment to_pile_assignment(const Digits& digits);

/// 1-based single-round assignment -> 0-based digits.
Digits to_digits(const PileAssignment& assignment);

/// Finite type schedules for rounds 1..T; every round has at least one pile.
class RoundTypes {
public:
    RoundTypes() = default;

    /// Throws std::invalid_argument on an unbounded or empty round.
    explicit RoundTypes(std::vector<TypeSchedule> rounds);

    static RoundTypes homogeneous(PileType type, std::span<const std::size_t> capacities);

    std::size_t round_count() const noexcept { return rounds_.size(); }
    const TypeSchedule& round(std::size_t t) const { return rounds_.at(t); }
    const std::vector<TypeSchedule>& rounds() const noexcept { return rounds_; }
    std::vector<std::size_t> capacities() const;

    /// Type every round shares, if all rounds are entirely of that type.
    std::optional<PileType> homogeneous_type() const;

    bool operator==(const RoundTypes&) const = default;

private:
    std::vector<TypeSchedule> rounds_;
};

/// min(product of capacities, ceiling). An empty product is 1.
std::uint64_t capacity_product(std::span<const std::size_t> capacities,
                               std::uint64_t ceiling = UINT64_MAX) noexcept;

struct MultiRoundPlan {
    RoundTypes round_types;
    /// assignments[t][s-1] in 0..m_t-1.
    std::vector<Digits> assignments;

    bool operator==(const MultiRoundPlan&) const = default;
};

/// Throws std::invalid_argument unless every round assigns @p n labels to
/// piles within its capacity.
void validate_plan(const MultiRoundPlan& plan, std::size_t n);

/// Runs the rounds in order, each output feeding the next round.
Permutation apply_multiround(const MultiRoundPlan& plan, const Permutation& p);

/**
 * Mixed-radix virtual pile of each label for queue-only rounds:
 * v = h_1 + m_1 * (h_2 + m_2 * (... + m_{T-1} * h_T)).
 *
 * Throws std::invalid_argument on a digit out of range and
 * std::overflow_error if a virtual pile does not fit in 64 bits.
 */
Digits embed_queue_rounds(std::span<const Digits> assignments, std::span<const std::size_t> capacities);

/// Inverse of embed_queue_rounds. Throws if a value is >= the capacity product.
std::vector<Digits> extract_digits(const Digits& virtual_piles, std::span<const std::size_t> capacities);

/**
 * Types of virtual piles 0..limit-1, derived from the round types alone.
 *
 * Callers normally pass min(n, capacity product); @p limit must not exceed
 * the product. Zero rounds behave as one virtual queue.
 */
TypeSchedule virtual_type_schedule(const RoundTypes& rounds, std::size_t limit);

struct VirtualShuffle {
    /// Types for virtual piles 0..max(virtual_assignment); index 1 of the
    /// schedule is virtual pile 0.
    TypeSchedule virtual_types;
    Digits virtual_assignment;
    /// Product of capacities, saturating at UINT64_MAX.
    std::uint64_t pile_count = 1;
};

/// The single-round shuffle with the same effect as @p plan on every deck.
VirtualShuffle embed_hetero_rounds(const MultiRoundPlan& plan);

/// Recovers per-round digits from virtual piles for the given round types.
std::vector<Digits> unembed_hetero(const Digits& virtual_piles, const RoundTypes& rounds);

using MultiRoundResult = std::variant<MultiRoundPlan, Infeasible>;

/**
 * Minimal sort of @p p on fixed round types: minimal single-round sort on
 * the virtual schedule, unembedded into per-round piles. Linear in n.
 */
MultiRoundResult minimal_multiround_sort(const Permutation& p, const RoundTypes& rounds);

/// Sortability on fixed round types; closed-form bounds for all-queue and
/// all-stack rounds, virtual recurrence otherwise.
bool feasible_fixed(const Permutation& p, const RoundTypes& rounds);

/// Sortability on fixed round types, always via the virtual recurrence.
bool feasible_by_recurrence(const Permutation& p, const RoundTypes& rounds);

struct BudgetExceeded {
    std::uint64_t candidates_checked = 0;

    bool operator==(const BudgetExceeded&) const = default;
};

struct DealerSearchOptions {
    /// Maximum number of round-type candidates to evaluate; unlimited if unset.
    std::optional<std::uint64_t> max_candidates;
    /// Reject up front when even a free choice of virtual pile types needs
    /// more virtual piles than the rounds provide.
    bool prune = false;
};

using DealerSearchResult = std::variant<MultiRoundPlan, Infeasible, BudgetExceeded>;

/**
 * Exhaustive dealer's-choice search over round types for the given
 * per-round capacities.
 *
 * Candidates are visited in lexicographic order of the concatenated type
 * string (round 1 first, pile 1 first within a round, Q before S); the first
 * feasible candidate's minimal plan is returned.
 */
DealerSearchResult dealer_search(const Permutation& p, std::span<const std::size_t> capacities,
                                 const DealerSearchOptions& options = {});

}  // namespace pileshuffle
