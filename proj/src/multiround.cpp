#include "pileshuffle/multiround.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pileshuffle {

namespace {

// Virtual type tables larger than this are refused rather than materialized.
constexpr std::uint64_t kMaxMaterializedPiles = std::uint64_t{1} << 26;

std::uint64_t checked_mul_add(std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    std::uint64_t product = 0;
    std::uint64_t sum = 0;
    if (__builtin_mul_overflow(a, b, &product) || __builtin_add_overflow(product, c, &sum)) {
        throw std::overflow_error("virtual pile index does not fit in 64 bits");
    }
    return sum;
}

void require_capacities(std::span<const std::size_t> capacities)
{
    for (std::size_t t = 0; t < capacities.size(); ++t) {
        if (capacities[t] == 0) {
            throw std::invalid_argument("round " + std::to_string(t + 1) + " has no piles");
        }
    }
}

/// Splits virtual pile @p v into per-round digits (round 1 least
/// significant), then walks the rounds backwards undoing reflections.
/// Writes the actual 0-based piles into @p piles (if given) and returns the
/// stack parity of all rounds, i.e. whether virtual pile v is a stack.
unsigned decode_virtual(std::uint64_t v, const RoundTypes& rounds, std::size_t* piles)
{
    const std::size_t T = rounds.round_count();
    std::vector<std::size_t> order(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t m = rounds.round(t).size();
        if (t + 1 == T) {
            if (v >= m) throw std::invalid_argument("virtual pile exceeds the capacity product");
            order[t] = static_cast<std::size_t>(v);
        } else {
            order[t] = static_cast<std::size_t>(v % m);
            v /= m;
        }
    }
    if (T == 0 && v != 0) throw std::invalid_argument("zero rounds have a single virtual pile");

    unsigned parity = 0;
    for (std::size_t t = T; t-- > 0;) {
        const std::size_t m = rounds.round(t).size();
        const std::size_t pile = parity ? m - 1 - order[t] : order[t];
        if (piles) piles[t] = pile;
        parity ^= stack_indicator(rounds.round(t).at(pile + 1));
    }
    return parity;
}

}  // namespace

PileAssignment to_pile_assignment(const Digits& digits)
{
    std::vector<std::size_t> piles(digits.size());
    for (std::size_t s = 0; s < digits.size(); ++s) piles[s] = digits[s] + 1;
    return PileAssignment(std::move(piles));
}

Digits to_digits(const PileAssignment& assignment)
{
    Digits digits(assignment.size());
    for (std::size_t s = 0; s < digits.size(); ++s) digits[s] = assignment.piles()[s] - 1;
    return digits;
}

RoundTypes::RoundTypes(std::vector<TypeSchedule> rounds) : rounds_(std::move(rounds))
{
    for (std::size_t t = 0; t < rounds_.size(); ++t) {
        if (!rounds_[t].bounded()) {
            throw std::invalid_argument("round " + std::to_string(t + 1) + " needs a finite pile schedule");
        }
        if (rounds_[t].size() == 0) throw std::invalid_argument("round " + std::to_string(t + 1) + " has no piles");
    }
}

RoundTypes RoundTypes::homogeneous(PileType type, std::span<const std::size_t> capacities)
{
    std::vector<TypeSchedule> rounds;
    rounds.reserve(capacities.size());
    for (std::size_t m : capacities) rounds.push_back(TypeSchedule::uniform(type, m));
    return RoundTypes(std::move(rounds));
}

std::vector<std::size_t> RoundTypes::capacities() const
{
    std::vector<std::size_t> caps;
    caps.reserve(rounds_.size());
    for (const auto& r : rounds_) caps.push_back(r.size());
    return caps;
}

std::optional<PileType> RoundTypes::homogeneous_type() const
{
    if (rounds_.empty()) return std::nullopt;
    const PileType first = rounds_.front().types().front();
    for (const auto& r : rounds_) {
        for (PileType t : r.types()) {
            if (t != first) return std::nullopt;
        }
    }
    return first;
}

std::uint64_t capacity_product(std::span<const std::size_t> capacities, std::uint64_t ceiling) noexcept
{
    std::uint64_t product = 1;
    for (std::size_t m : capacities) {
        if (m == 0) return 0;
        if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(m), &product) || product >= ceiling) {
            return ceiling;
        }
    }
    return std::min(product, ceiling);
}

void validate_plan(const MultiRoundPlan& plan, std::size_t n)
{
    const std::size_t T = plan.round_types.round_count();
    if (plan.assignments.size() != T) {
        throw std::invalid_argument("plan has " + std::to_string(T) + " rounds of types but " +
                                    std::to_string(plan.assignments.size()) + " rounds of assignments");
    }
    for (std::size_t t = 0; t < T; ++t) {
        const auto& digits = plan.assignments[t];
        const std::size_t m = plan.round_types.round(t).size();
        if (digits.size() != n) {
            throw std::invalid_argument("round " + std::to_string(t + 1) + " assigns " + std::to_string(digits.size()) +
                                        " labels but the deck has " + std::to_string(n));
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (digits[s] >= m) {
                throw std::invalid_argument("round " + std::to_string(t + 1) + " puts label " + std::to_string(s + 1) +
                                            " on pile " + std::to_string(digits[s] + 1) + " of " + std::to_string(m));
            }
        }
    }
}

Permutation apply_multiround(const MultiRoundPlan& plan, const Permutation& p)
{
    validate_plan(plan, p.size());
    Permutation deck = p;
    for (std::size_t t = 0; t < plan.round_types.round_count(); ++t) {
        deck = apply_shuffle(plan.round_types.round(t), to_pile_assignment(plan.assignments[t]), deck);
    }
    return deck;
}

Digits embed_queue_rounds(std::span<const Digits> assignments, std::span<const std::size_t> capacities)
{
    if (assignments.size() != capacities.size()) {
        throw std::invalid_argument("one capacity per round is required");
    }
    require_capacities(capacities);
    const std::size_t T = assignments.size();
    const std::size_t n = T == 0 ? 0 : assignments.front().size();
    Digits virtual_piles(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        std::uint64_t v = 0;
        for (std::size_t t = T; t-- > 0;) {
            if (assignments[t].size() != n) throw std::invalid_argument("rounds assign different numbers of labels");
            const std::size_t digit = assignments[t][s];
            if (digit >= capacities[t]) {
                throw std::invalid_argument("digit " + std::to_string(digit) + " of label " + std::to_string(s + 1) +
                                            " is out of range for round " + std::to_string(t + 1));
            }
            v = checked_mul_add(v, capacities[t], digit);
        }
        virtual_piles[s] = static_cast<std::size_t>(v);
    }
    return virtual_piles;
}

std::vector<Digits> extract_digits(const Digits& virtual_piles, std::span<const std::size_t> capacities)
{
    require_capacities(capacities);
    const std::size_t T = capacities.size();
    std::vector<Digits> assignments(T, Digits(virtual_piles.size()));
    for (std::size_t s = 0; s < virtual_piles.size(); ++s) {
        std::uint64_t v = virtual_piles[s];
        for (std::size_t t = 0; t < T; ++t) {
            assignments[t][s] = static_cast<std::size_t>(v % capacities[t]);
            v /= capacities[t];
        }
        if (v != 0) {
            throw std::invalid_argument("virtual pile " + std::to_string(virtual_piles[s]) +
                                        " exceeds the capacity product");
        }
    }
    return assignments;
}

TypeSchedule virtual_type_schedule(const RoundTypes& rounds, std::size_t limit)
{
    const auto caps = rounds.capacities();
    if (limit > capacity_product(caps)) {
        throw std::invalid_argument("virtual schedule limit exceeds the capacity product");
    }
    std::vector<PileType> types(limit);
    for (std::size_t v = 0; v < limit; ++v) {
        types[v] = decode_virtual(v, rounds, nullptr) ? PileType::Stack : PileType::Queue;
    }
    return TypeSchedule(std::move(types));
}

VirtualShuffle embed_hetero_rounds(const MultiRoundPlan& plan)
{
    const std::size_t n = plan.assignments.empty() ? 0 : plan.assignments.front().size();
    validate_plan(plan, n);
    const auto& rounds = plan.round_types;
    const std::size_t T = rounds.round_count();

    VirtualShuffle out;
    out.pile_count = capacity_product(rounds.capacities());
    out.virtual_assignment.assign(n, 0);
    std::uint64_t highest = 0;
    for (std::size_t s = 0; s < n; ++s) {
        unsigned suffix_parity = 0;
        std::uint64_t v = 0;
        for (std::size_t t = T; t-- > 0;) {
            const std::size_t m = rounds.round(t).size();
            const std::size_t pile = plan.assignments[t][s];
            const std::size_t order = suffix_parity ? m - 1 - pile : pile;
            v = checked_mul_add(v, m, order);
            suffix_parity ^= stack_indicator(rounds.round(t).at(pile + 1));
        }
        out.virtual_assignment[s] = static_cast<std::size_t>(v);
        highest = std::max(highest, v);
    }
    if (n > 0 && highest >= kMaxMaterializedPiles) {
        throw std::length_error("virtual pile " + std::to_string(highest) + " is too large to tabulate types for");
    }
    out.virtual_types = virtual_type_schedule(rounds, n == 0 ? 0 : static_cast<std::size_t>(highest) + 1);
    return out;
}

std::vector<Digits> unembed_hetero(const Digits& virtual_piles, const RoundTypes& rounds)
{
    const std::size_t T = rounds.round_count();
    std::vector<Digits> assignments(T, Digits(virtual_piles.size()));
    std::vector<std::size_t> piles(T);
    for (std::size_t s = 0; s < virtual_piles.size(); ++s) {
        decode_virtual(virtual_piles[s], rounds, piles.data());
        for (std::size_t t = 0; t < T; ++t) assignments[t][s] = piles[t];
    }
    return assignments;
}

MultiRoundResult minimal_multiround_sort(const Permutation& p, const RoundTypes& rounds)
{
    const std::size_t n = p.size();
    const auto limit = static_cast<std::size_t>(capacity_product(rounds.capacities(), n));
    const SortResult single = minimal_sort_on_types(p, virtual_type_schedule(rounds, limit));
    if (const auto* infeasible = std::get_if<Infeasible>(&single)) return *infeasible;

    const auto& plan = std::get<SortPlan>(single);
    return MultiRoundPlan{rounds, unembed_hetero(to_digits(plan.assignment), rounds)};
}

bool feasible_by_recurrence(const Permutation& p, const RoundTypes& rounds)
{
    return std::holds_alternative<MultiRoundPlan>(minimal_multiround_sort(p, rounds));
}

bool feasible_fixed(const Permutation& p, const RoundTypes& rounds)
{
    const auto type = rounds.homogeneous_type();
    if (!type) return feasible_by_recurrence(p, rounds);

    const std::uint64_t virtual_piles = capacity_product(rounds.capacities(), p.size() + 1);
    const bool virtual_queues = *type == PileType::Queue || rounds.round_count() % 2 == 0;
    const std::size_t needed = virtual_queues ? ascending_runs(p) : descending_runs(p);
    return needed <= virtual_piles;
}

DealerSearchResult dealer_search(const Permutation& p, std::span<const std::size_t> capacities,
                                 const DealerSearchOptions& options)
{
    require_capacities(capacities);
    const std::size_t n = p.size();
    const std::uint64_t virtual_piles = capacity_product(capacities, n + 1);

    if (options.prune && dealer_choice_minimal_sort(p).piles_used > virtual_piles) {
        return Infeasible{0, static_cast<std::size_t>(virtual_piles)};
    }

    std::size_t total = 0;
    for (std::size_t m : capacities) total += m;
    std::vector<PileType> flat(total, PileType::Queue);

    std::uint64_t checked = 0;
    while (true) {
        if (options.max_candidates && checked >= *options.max_candidates) return BudgetExceeded{checked};
        ++checked;

        std::vector<TypeSchedule> schedules;
        schedules.reserve(capacities.size());
        auto it = flat.begin();
        for (std::size_t m : capacities) {
            schedules.emplace_back(std::vector<PileType>(it, it + static_cast<std::ptrdiff_t>(m)));
            it += static_cast<std::ptrdiff_t>(m);
        }
        RoundTypes rounds(std::move(schedules));
        if (feasible_fixed(p, rounds)) return std::get<MultiRoundPlan>(minimal_multiround_sort(p, rounds));

        // Next type string in lexicographic order (Q < S).
        std::size_t i = total;
        while (i > 0 && flat[i - 1] == PileType::Stack) flat[--i] = PileType::Queue;
        if (i == 0) break;
        flat[i - 1] = PileType::Stack;
    }
    return Infeasible{0, static_cast<std::size_t>(std::min<std::uint64_t>(virtual_piles, n))};
}

}  // namespace pileshuffle
