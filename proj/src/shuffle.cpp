#include "pileshuffle/shuffle.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace pileshuffle {

namespace {

void require_compatible(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p)
{
    if (assignment.size() != p.size()) {
        throw std::invalid_argument("pile assignment covers " + std::to_string(assignment.size()) +
                                    " labels but the deck has " + std::to_string(p.size()));
    }
    const std::size_t highest = assignment.max_pile();
    if (highest > 0 && !types.covers(highest)) {
        throw std::invalid_argument("pile " + std::to_string(highest) + " is used but the type schedule has only " +
                                    std::to_string(types.size()) + " piles");
    }
}

std::size_t decimal_width(std::size_t v)
{
    std::size_t w = 1;
    while (v >= 10) {
        v /= 10;
        ++w;
    }
    return w;
}

}  // namespace

TypeSchedule TypeSchedule::parse(std::string_view letters)
{
    std::vector<PileType> types;
    types.reserve(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) {
        switch (std::toupper(static_cast<unsigned char>(letters[i]))) {
        case 'Q': types.push_back(PileType::Queue); break;
        case 'S': types.push_back(PileType::Stack); break;
        default:
            throw std::invalid_argument("pile type '" + std::string(1, letters[i]) + "' at offset " +
                                        std::to_string(i) + " is not Q or S");
        }
    }
    return TypeSchedule(std::move(types));
}

PileType TypeSchedule::at(std::size_t pile) const
{
    if (!covers(pile)) {
        throw std::out_of_range("pile " + std::to_string(pile) + " outside the schedule of " +
                                std::to_string(types_.size()) + " piles");
    }
    return unbounded_ ? *unbounded_ : types_[pile - 1];
}

TypeSchedule TypeSchedule::truncated(std::size_t count) const
{
    if (unbounded_) return uniform(*unbounded_, count);
    if (count > types_.size()) throw std::out_of_range("cannot truncate a schedule to more piles than it has");
    return TypeSchedule(std::vector<PileType>(types_.begin(), types_.begin() + static_cast<std::ptrdiff_t>(count)));
}

std::string TypeSchedule::to_string() const
{
    if (unbounded_) return std::string(1, type_letter(*unbounded_)) + "*";
    std::string out;
    out.reserve(types_.size());
    for (PileType t : types_) out.push_back(type_letter(t));
    return out;
}

PileAssignment::PileAssignment(std::vector<std::size_t> piles) : piles_(std::move(piles))
{
    for (std::size_t s = 0; s < piles_.size(); ++s) {
        if (piles_[s] == 0) {
            throw std::invalid_argument("label " + std::to_string(s + 1) + " is assigned to pile 0; piles are 1-based");
        }
    }
}

std::size_t PileAssignment::max_pile() const noexcept
{
    return piles_.empty() ? 0 : *std::max_element(piles_.begin(), piles_.end());
}

std::size_t PileAssignment::distinct_piles() const
{
    return std::set<std::size_t>(piles_.begin(), piles_.end()).size();
}

PileAssignment compose(const PileAssignment& h, const Permutation& r)
{
    if (h.size() != r.size()) throw std::invalid_argument("compose: assignment and permutation lengths differ");
    std::vector<std::size_t> piles(h.size());
    for (std::size_t s = 1; s <= h.size(); ++s) piles[s - 1] = h(r(s));
    return PileAssignment(std::move(piles));
}

Permutation apply_shuffle(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p)
{
    require_compatible(types, assignment, p);
    const std::size_t n = p.size();

    struct Key {
        std::size_t pile;
        long long within;
        std::size_t label;
    };
    std::vector<Key> keys;
    keys.reserve(n);
    for (std::size_t s = 1; s <= n; ++s) {
        const std::size_t pile = assignment(s);
        const auto position = static_cast<long long>(p(s));
        keys.push_back({pile, types.at(pile) == PileType::Stack ? -position : position, s});
    }
    std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return a.pile != b.pile ? a.pile < b.pile : a.within < b.within;
    });

    std::vector<std::size_t> images(n);
    for (std::size_t rank = 0; rank < n; ++rank) images[keys[rank].label - 1] = rank + 1;
    return Permutation::from_embedding(std::move(images));
}

bool check_sort(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p)
{
    require_compatible(types, assignment, p);
    for (std::size_t s = 1; s < p.size(); ++s) {
        const bool stack = types.at(assignment(s)) == PileType::Stack;
        const bool out_of_order = stack ? p(s + 1) > p(s) : p(s + 1) < p(s);
        if (assignment(s + 1) < assignment(s) + (out_of_order ? 1 : 0)) return false;
    }
    return true;
}

std::vector<std::size_t> ShuffleTableau::row_labels(const Row& row) const
{
    std::vector<std::size_t> labels;
    for (const auto& cell : row.cells) {
        if (cell) labels.push_back(*cell);
    }
    if (row.type == PileType::Stack) std::reverse(labels.begin(), labels.end());
    return labels;
}

std::vector<std::size_t> ShuffleTableau::collect() const
{
    std::vector<std::size_t> deck;
    deck.reserve(columns);
    for (const Row& row : rows) {
        auto labels = row_labels(row);
        deck.insert(deck.end(), labels.begin(), labels.end());
    }
    return deck;
}

std::string ShuffleTableau::to_text() const
{
    const std::size_t cell_width = decimal_width(columns) + 1;
    const std::size_t label_width = 1 + decimal_width(std::max<std::size_t>(rows.size(), 1));

    std::ostringstream os;
    auto pad = [&os](std::size_t width, const std::string& text) {
        os << std::string(width > text.size() ? width - text.size() : 0, ' ') << text;
    };

    os << std::string(label_width + 2, ' ') << '|';
    for (std::size_t c = 1; c <= columns; ++c) pad(cell_width, std::to_string(c));
    os << '\n' << std::string(label_width + 2, '-') << '+' << std::string(cell_width * columns, '-') << '\n';

    for (const Row& row : rows) {
        std::string label = "P" + std::to_string(row.pile);
        os << label << std::string(label_width - label.size(), ' ') << ' ' << type_letter(row.type) << '|';
        std::string line;
        for (const auto& cell : row.cells) {
            std::string text = cell ? std::to_string(*cell) : std::string{};
            line += std::string(cell_width - text.size(), ' ') + text;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

ShuffleTableau render_tableau(const Permutation& p, const PileAssignment& assignment, const TypeSchedule& types)
{
    require_compatible(types, assignment, p);
    ShuffleTableau tableau;
    tableau.columns = p.size();
    const std::size_t piles = assignment.max_pile();
    tableau.rows.resize(piles);
    for (std::size_t pile = 1; pile <= piles; ++pile) {
        auto& row = tableau.rows[pile - 1];
        row.pile = pile;
        row.type = types.at(pile);
        row.cells.assign(p.size(), std::nullopt);
    }
    for (std::size_t s = 1; s <= p.size(); ++s) tableau.rows[assignment(s) - 1].cells[p(s) - 1] = s;
    return tableau;
}

ShiftedShuffle shift_shuffle(const TypeSchedule& types, const PileAssignment& assignment, const Permutation& p,
                             const Permutation& relabel)
{
    if (relabel.size() != p.size()) throw std::invalid_argument("shift_shuffle: relabelling has the wrong length");
    const Permutation output = apply_shuffle(types, assignment, p);
    return {compose(assignment, relabel), compose(p, relabel), compose(output, relabel)};
}

Permutation reduce_to_sort(const Permutation& p, const Permutation& target)
{
    if (p.size() != target.size()) throw std::invalid_argument("reduce_to_sort: length mismatch");
    return compose(p, invert(target));
}

}  // namespace pileshuffle
