#include "pileshuffle/permutation.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace pileshuffle {

void validate_bijection(std::span<const std::size_t> values)
{
    const std::size_t n = values.size();
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t v = values[i];
        if (v < 1 || v > n) {
            throw InvalidPermutation("value " + std::to_string(v) + " at index " + std::to_string(i + 1) +
                                     " is outside 1.." + std::to_string(n));
        }
        if (seen[v]) {
            throw InvalidPermutation("value " + std::to_string(v) + " at index " + std::to_string(i + 1) +
                                     " is a duplicate");
        }
        seen[v] = true;
    }
}

Permutation Permutation::from_embedding(std::vector<std::size_t> images)
{
    validate_bijection(images);
    return Permutation(std::move(images));
}

Permutation Permutation::from_sequence(std::span<const std::size_t> deck)
{
    validate_bijection(deck);
    std::vector<std::size_t> images(deck.size());
    for (std::size_t position = 1; position <= deck.size(); ++position) {
        images[deck[position - 1] - 1] = position;
    }
    return Permutation(std::move(images));
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{1});
    return Permutation(std::move(images));
}

Permutation Permutation::reversal(std::size_t n)
{
    std::vector<std::size_t> images(n);
    for (std::size_t s = 0; s < n; ++s) images[s] = n - s;
    return Permutation(std::move(images));
}

std::size_t Permutation::at(std::size_t label) const
{
    if (label < 1 || label > size()) {
        throw std::out_of_range("label " + std::to_string(label) + " outside 1.." + std::to_string(size()));
    }
    return images_[label - 1];
}

std::vector<std::size_t> Permutation::sequence() const
{
    std::vector<std::size_t> deck(size());
    for (std::size_t s = 1; s <= size(); ++s) deck[images_[s - 1] - 1] = s;
    return deck;
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (images_[s] != s + 1) return false;
    }
    return true;
}

Permutation invert(const Permutation& p)
{
    // The inverse's images are exactly the deck sequence of p.
    return Permutation::from_embedding(p.sequence());
}

Permutation compose(const Permutation& f, const Permutation& g)
{
    if (f.size() != g.size()) {
        throw std::invalid_argument("compose: length mismatch (" + std::to_string(f.size()) + " vs " +
                                    std::to_string(g.size()) + ")");
    }
    std::vector<std::size_t> images(f.size());
    for (std::size_t s = 1; s <= f.size(); ++s) images[s - 1] = f(g(s));
    return Permutation::from_embedding(std::move(images));
}

std::size_t descents(const Permutation& p) noexcept
{
    std::size_t count = 0;
    for (std::size_t s = 1; s < p.size(); ++s) count += p(s + 1) < p(s) ? 1 : 0;
    return count;
}

std::size_t ascents(const Permutation& p) noexcept
{
    std::size_t count = 0;
    for (std::size_t s = 1; s < p.size(); ++s) count += p(s + 1) > p(s) ? 1 : 0;
    return count;
}

std::size_t ascending_runs(const Permutation& p) noexcept
{
    return p.empty() ? 0 : descents(p) + 1;
}

std::size_t descending_runs(const Permutation& p) noexcept
{
    return p.empty() ? 0 : ascents(p) + 1;
}

std::size_t readings(std::span<const std::size_t> deck)
{
    validate_bijection(deck);
    const std::size_t n = deck.size();
    std::size_t wanted = 1;
    std::size_t passes = 0;
    while (wanted <= n) {
        ++passes;
        for (std::size_t card : deck) {
            if (card == wanted) ++wanted;
        }
    }
    return passes;
}

std::vector<std::size_t> parse_integers(const std::string& text)
{
    std::vector<std::size_t> values;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != ',') ++end;
        std::size_t value = 0;
        const char* first = text.data() + i;
        const char* last = text.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("cannot parse '" + text.substr(i, end - i) + "' at offset " +
                                        std::to_string(i) + " as a non-negative integer");
        }
        values.push_back(value);
        i = end;
    }
    return values;
}

std::string to_string(std::span<const std::size_t> values, char separator)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << separator;
        os << values[i];
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Permutation& p)
{
    return os << '(' << to_string(p.images(), ',') << ')';
}

}  // namespace pileshuffle
