#pragma once

// Test-only reference implementations. Nothing here calls the minimal-sort
// constructors or the virtual pile embeddings; these are the independent
// sides of every cross-check.

#include "pileshuffle/multiround.hpp"
#include "pileshuffle/permutation.hpp"
#include "pileshuffle/shuffle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace pileshuffle::oracle {

/// Calls @p f with every permutation of [n] (as images, lexicographic order).
inline void for_each_permutation(std::size_t n, const std::function<void(const Permutation&)>& f)
{
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{1});
    do {
        f(Permutation::from_embedding(images));
    } while (std::next_permutation(images.begin(), images.end()));
}

/// Calls @p f with every vector in [base, base+radix)^length. Stops early if
/// @p f returns true; returns whether it did.
inline bool for_each_tuple(std::size_t length, std::size_t radix, std::size_t base,
                           const std::function<bool(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> v(length, base);
    while (true) {
        if (f(v)) return true;
        std::size_t i = length;
        while (i > 0 && v[i - 1] == base + radix - 1) v[--i] = base;
        if (i == 0) return false;
        ++v[i - 1];
    }
}

/// All type strings of exactly @p length piles.
inline std::vector<TypeSchedule> all_schedules(std::size_t length)
{
    std::vector<TypeSchedule> out;
    for_each_tuple(length, 2, 0, [&](const std::vector<std::size_t>& bits) {
        std::vector<PileType> types;
        for (auto b : bits) types.push_back(b ? PileType::Stack : PileType::Queue);
        out.emplace_back(std::move(types));
        return false;
    });
    return out;
}

/**
 * Deal the deck card by card onto physical piles, then pick the piles up in
 * increasing pile number: a queue pile comes back in deal order, a stack
 * pile reversed.
 */
inline Permutation physical_shuffle(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p)
{
    const std::size_t piles = assignment.max_pile();
    std::vector<std::vector<std::size_t>> table(piles + 1);
    for (std::size_t label : p.sequence()) table[assignment(label)].push_back(label);
    std::vector<std::size_t> deck;
    for (std::size_t pile = 1; pile <= piles; ++pile) {
        auto& cards = table[pile];
        if (cards.empty()) continue;
        if (types.at(pile) == PileType::Stack) std::reverse(cards.begin(), cards.end());
        deck.insert(deck.end(), cards.begin(), cards.end());
    }
    return Permutation::from_sequence(deck);
}

/// Round-by-round physical simulation of a multi-round plan.
inline Permutation physical_multiround(const MultiRoundPlan& plan, const Permutation& p)
{
    Permutation deck = p;
    for (std::size_t t = 0; t < plan.round_types.round_count(); ++t) {
        std::vector<std::size_t> piles;
        for (auto d : plan.assignments[t]) piles.push_back(d + 1);
        deck = physical_shuffle(plan.round_types.round(t), PileAssignment(piles), deck);
    }
    return deck;
}

/// Smallest number of distinct piles over all assignments into at most
/// p.size() piles such that apply_shuffle sorts the deck; @p types gives the
/// type of each pile number.
inline std::size_t min_piles_brute_force(const Permutation& p, const TypeSchedule& types)
{
    const std::size_t n = p.size();
    if (n == 0) return 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const bool found = for_each_tuple(n, k, 1, [&](const std::vector<std::size_t>& h) {
            return apply_shuffle(types, PileAssignment(h), p).is_identity();
        });
        if (found) return k;
    }
    return n + 1;  // unreachable: n queues or n stacks always suffice
}

/// Smallest max pile over all sorting assignments within a finite schedule,
/// or 0 if none sorts.
inline std::size_t min_max_pile_on_types(const Permutation& p, const TypeSchedule& types)
{
    const std::size_t n = p.size();
    const std::size_t L = types.size();
    std::size_t best = 0;
    for_each_tuple(n, L, 1, [&](const std::vector<std::size_t>& h) {
        if (apply_shuffle(types, PileAssignment(h), p).is_identity()) {
            const std::size_t top = *std::max_element(h.begin(), h.end());
            if (best == 0 || top < best) best = top;
        }
        return false;
    });
    return best;
}

/// Descent count by definition, for Eulerian checks.
inline std::size_t count_descents(const Permutation& p)
{
    std::size_t d = 0;
    for (std::size_t s = 1; s + 1 <= p.size(); ++s) {
        if (p.images()[s] < p.images()[s - 1]) ++d;
    }
    return d;
}

/// Whether some assignment H (0-based digits) makes the fixed round types
/// sort @p p, by full enumeration and apply_multiround.
inline bool multiround_sortable_brute_force(const Permutation& p, const RoundTypes& rounds)
{
    const std::size_t n = p.size();
    const auto caps = rounds.capacities();
    const std::size_t T = caps.size();
    std::vector<std::size_t> flat_radix;
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s = 0; s < n; ++s) flat_radix.push_back(caps[t]);
    }
    std::vector<std::size_t> digits(flat_radix.size(), 0);
    while (true) {
        MultiRoundPlan plan{rounds, {}};
        for (std::size_t t = 0; t < T; ++t) {
            plan.assignments.emplace_back(digits.begin() + static_cast<std::ptrdiff_t>(t * n),
                                          digits.begin() + static_cast<std::ptrdiff_t>((t + 1) * n));
        }
        if (apply_multiround(plan, p).is_identity()) return true;
        std::size_t i = digits.size();
        while (i > 0 && digits[i - 1] + 1 == flat_radix[i - 1]) digits[--i] = 0;
        if (i == 0) return false;
        ++digits[i - 1];
    }
}

/**
 * Allocation-free deal and collect for the exhaustive searches. Digits are
 * 0-based piles indexed by label; is_stack has one entry per pile. Each
 * round is a stable bucket pass over the deck with stack piles reversed.
 */
class DealSimulator {
public:
    explicit DealSimulator(std::size_t n) : cur_(n), next_(n) {}

    void load(const std::vector<std::size_t>& deck) { std::copy(deck.begin(), deck.end(), cur_.begin()); }

    void round(const std::vector<std::uint8_t>& is_stack, const std::vector<std::size_t>& digits)
    {
        const std::size_t m = is_stack.size();
        count_.assign(m + 1, 0);
        for (std::size_t label : cur_) ++count_[digits[label - 1] + 1];
        for (std::size_t d = 0; d < m; ++d) count_[d + 1] += count_[d];
        start_.assign(count_.begin(), count_.end());
        for (std::size_t label : cur_) next_[count_[digits[label - 1]]++] = label;
        for (std::size_t d = 0; d < m; ++d) {
            if (is_stack[d]) {
                std::reverse(next_.begin() + static_cast<std::ptrdiff_t>(start_[d]),
                             next_.begin() + static_cast<std::ptrdiff_t>(start_[d + 1]));
            }
        }
        cur_.swap(next_);
    }

    bool sorted() const
    {
        for (std::size_t i = 0; i < cur_.size(); ++i) {
            if (cur_[i] != i + 1) return false;
        }
        return true;
    }

    const std::vector<std::size_t>& deck() const { return cur_; }

private:
    std::vector<std::size_t> cur_, next_, count_, start_;
};

/// Advances @p v through [0, radix)^length like an odometer (last digit
/// fastest); returns false after the last tuple.
inline bool next_tuple(std::vector<std::size_t>& v, std::size_t radix)
{
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] + 1 == radix) v[--i] = 0;
    if (i == 0) return false;
    ++v[i - 1];
    return true;
}

/// Random permutation of [n] for property tests (std::shuffle is fine here).
inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{1});
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation::from_embedding(std::move(images));
}

}  // namespace pileshuffle::oracle
