#include "pileshuffle/sorter.hpp"

namespace pileshuffle {

namespace {

// Label s+1 must open a new pile when it would be collected before s.
bool needs_new_pile(PileType current, std::size_t next_position, std::size_t position)
{
    return current == PileType::Stack ? next_position > position : next_position < position;
}

SortPlan homogeneous_sort(const Permutation& p, PileType type)
{
    const std::size_t n = p.size();
    std::vector<std::size_t> piles(n);
    std::size_t pile = 1;
    for (std::size_t s = 1; s <= n; ++s) {
        if (s > 1 && needs_new_pile(type, p(s), p(s - 1))) ++pile;
        piles[s - 1] = pile;
    }
    const std::size_t used = n == 0 ? 0 : pile;
    return {TypeSchedule::uniform(type, used), PileAssignment(std::move(piles)), used};
}

}  // namespace

SortPlan minimal_queue_sort(const Permutation& p)
{
    return homogeneous_sort(p, PileType::Queue);
}

SortPlan minimal_stack_sort(const Permutation& p)
{
    return homogeneous_sort(p, PileType::Stack);
}

SortResult minimal_sort_on_types(const Permutation& p, const TypeSchedule& types)
{
    const std::size_t n = p.size();
    if (n == 0) return SortPlan{TypeSchedule{}, PileAssignment{}, 0};
    if (!types.covers(1)) return Infeasible{1, 0};

    std::vector<std::size_t> piles(n);
    std::size_t pile = 1;
    piles[0] = 1;
    for (std::size_t s = 1; s < n; ++s) {
        if (needs_new_pile(types.at(pile), p(s + 1), p(s))) {
            ++pile;
            if (!types.covers(pile)) return Infeasible{s + 1, types.size()};
        }
        piles[s] = pile;
    }
    return SortPlan{types.truncated(pile), PileAssignment(std::move(piles)), pile};
}

SortPlan dealer_choice_minimal_sort(const Permutation& p)
{
    const std::size_t n = p.size();
    if (n == 0) return SortPlan{TypeSchedule{}, PileAssignment{}, 0};

    auto opening_type = [&p, n](std::size_t s) {
        if (s == n) return PileType::Queue;
        return p(s + 1) > p(s) ? PileType::Queue : PileType::Stack;
    };

    std::vector<PileType> types{opening_type(1)};
    std::vector<std::size_t> piles(n);
    piles[0] = 1;
    for (std::size_t s = 1; s < n; ++s) {
        if (needs_new_pile(types.back(), p(s + 1), p(s))) types.push_back(opening_type(s + 1));
        piles[s] = types.size();
    }
    const std::size_t used = types.size();
    return SortPlan{TypeSchedule(std::move(types)), PileAssignment(std::move(piles)), used};
}

bool feasible(const Permutation& p, std::size_t budget, SortMode mode)
{
    switch (mode) {
    case SortMode::AllQueues: return ascending_runs(p) <= budget;
    case SortMode::AllStacks: return descending_runs(p) <= budget;
    case SortMode::DealerChoice: return dealer_choice_minimal_sort(p).piles_used <= budget;
    }
    return false;
}

const char* to_string(SortMode mode) noexcept
{
    switch (mode) {
    case SortMode::AllQueues: return "queues";
    case SortMode::AllStacks: return "stacks";
    case SortMode::DealerChoice: return "dealer";
    }
    return "?";
}

}  // namespace pileshuffle
