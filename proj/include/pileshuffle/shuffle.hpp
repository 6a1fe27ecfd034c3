#pragma once

/**
 * @file shuffle.hpp
 * @brief Single-round pile shuffles on queues, stacks, or a mixture.
 *
 * A shuffle deals every card onto a numbered pile and then picks the piles
 * up in increasing pile number. A queue pile keeps the deal order of its
 * cards; a stack pile reverses it. Pile numbers are 1-based and need not be
 * contiguous (an unused number is simply an empty pile).
 */

#include "pileshuffle/permutation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace pileshuffle {

enum class PileType : unsigned char { Queue = 0, Stack = 1 };

/// 0 for a queue, 1 for a stack.
constexpr unsigned stack_indicator(PileType t) noexcept { return t == PileType::Stack ? 1u : 0u; }

constexpr char type_letter(PileType t) noexcept { return t == PileType::Stack ? 'S' : 'Q'; }

/**
 * Types of piles 1, 2, ... in collection order.
 *
 * Either a finite list (its length is the pile budget) or a homogeneous
 * unbounded schedule of all queues / all stacks that is never materialized.
 */
class TypeSchedule {
public:
    TypeSchedule() = default;
    explicit TypeSchedule(std::vector<PileType> types) : types_(std::move(types)) {}

    static TypeSchedule all_queues() { return TypeSchedule(PileType::Queue); }
    static TypeSchedule all_stacks() { return TypeSchedule(PileType::Stack); }

    /// Finite schedule of @p count piles of one type.
    static TypeSchedule uniform(PileType type, std::size_t count)
    {
        return TypeSchedule(std::vector<PileType>(count, type));
    }

    /// Parses a string over {Q, S} (case-insensitive).
    static TypeSchedule parse(std::string_view letters);

    bool bounded() const noexcept { return !unbounded_.has_value(); }

    /// Number of piles; only meaningful when bounded().
    std::size_t size() const noexcept { return types_.size(); }

    bool covers(std::size_t pile) const noexcept { return pile >= 1 && (!bounded() || pile <= types_.size()); }

    /// Type of 1-based pile @p pile. Throws std::out_of_range past the budget.
    PileType at(std::size_t pile) const;

    /// The uniform type of an unbounded schedule.
    std::optional<PileType> homogeneous_type() const noexcept { return unbounded_; }

    /// First @p count types as a finite schedule.
    TypeSchedule truncated(std::size_t count) const;

    const std::vector<PileType>& types() const noexcept { return types_; }

    /// "QSQ..." for finite schedules; "Q*" / "S*" for unbounded ones.
    std::string to_string() const;

    bool operator==(const TypeSchedule&) const = default;

private:
    explicit TypeSchedule(PileType uniform) : unbounded_(uniform) {}

    std::vector<PileType> types_;
    std::optional<PileType> unbounded_;
};

/// piles()[s-1] is the 1-based pile that label s is dealt onto.
class PileAssignment {
public:
    PileAssignment() = default;

    /// Throws std::invalid_argument if any pile number is 0.
    explicit PileAssignment(std::vector<std::size_t> piles);

    std::size_t size() const noexcept { return piles_.size(); }
    std::size_t operator()(std::size_t label) const noexcept { return piles_[label - 1]; }
    const std::vector<std::size_t>& piles() const noexcept { return piles_; }

    /// Largest pile number, 0 when empty.
    std::size_t max_pile() const noexcept;

    /// Number of non-empty piles.
    std::size_t distinct_piles() const;

    bool operator==(const PileAssignment&) const = default;

private:
    std::vector<std::size_t> piles_;
};

/// (h o r)(s) = h(r(s)).
PileAssignment compose(const PileAssignment& h, const Permutation& r);

/**
 * Layout of one deal: cell (pile of s, position of s) holds label s.
 *
 * Rows are piles 1..max_pile including empty ones; columns are deal
 * positions 1..n.
 */
struct ShuffleTableau {
    struct Row {
        std::size_t pile = 0;
        PileType type = PileType::Queue;
        /// cells[k-1] is the label dealt at position k onto this pile, if any.
        std::vector<std::optional<std::size_t>> cells;
    };

    std::size_t columns = 0;
    std::vector<Row> rows;

    /// Labels of one row in the order they are picked up.
    std::vector<std::size_t> row_labels(const Row& row) const;

    /// Picks rows up top to bottom; queue rows left to right, stack rows right
    /// to left. The result is the new deck in sequence convention.
    std::vector<std::size_t> collect() const;

    /// Fixed-width grid with a column header and rows labelled P1..Pm.
    std::string to_text() const;
};

/**
 * Outcome of dealing @p p onto piles @p assignment with types @p types.
 *
 * Labels are ranked by (pile, +position) on queues and (pile, -position)
 * on stacks. Throws std::invalid_argument on a length mismatch or a pile
 * not covered by @p types.
 */
Permutation apply_shuffle(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p);

/// True iff the shuffle sorts @p p, decided by one linear scan of
/// consecutive labels.
bool check_sort(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p);

ShuffleTableau render_tableau(const Permutation& p, const PileAssignment& assignment, const TypeSchedule& types);

struct ShiftedShuffle {
    PileAssignment assignment;
    Permutation input;
    Permutation output;
};

/**
 * Relabels a shuffle by @p relabel: returns (h o r, p o r, q o r) where q is
 * the shuffle's output. Shuffling p o r with h o r yields q o r.
 */
ShiftedShuffle shift_shuffle(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p,
                             const Permutation& relabel);

/**
 * Turns "shuffle @p p into @p target" into a sorting problem.
 *
 * Returns p o target^-1. If (x, h') sorts the result, then (x, h' o target)
 * shuffles @p p into @p target.
 */
Permutation reduce_to_sort(const Permutation& p, const Permutation& target);

}  // namespace pileshuffle
