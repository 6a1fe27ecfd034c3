#pragma once

/**
 * @file permutation.hpp
 * @brief Deck states as permutations in the embedding convention.
 *
 * A deck of n labelled cards is represented by the permutation p where
 * p(s) is the (1-based) position of label s. This is the inverse of the
 * more familiar "sequence" convention where entry k is the label found at
 * position k. With the embedding convention, label s precedes label t in
 * the deck iff p(s) < p(t).
 *
 * All public interfaces speak 1-based labels and positions.
 */

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pileshuffle {

/// Raised when a sequence of integers is not a bijection on [n].
class InvalidPermutation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Permutation {
public:
    Permutation() = default;

    /// Builds p from its images: images[s-1] == p(s). Validates bijectivity.
    static Permutation from_embedding(std::vector<std::size_t> images);

    /// Builds p from a deck listed top to bottom (sequence convention).
    static Permutation from_sequence(std::span<const std::size_t> deck);

    static Permutation identity(std::size_t n);

    /// The deck n, n-1, ..., 1 (self-inverse).
    static Permutation reversal(std::size_t n);

    std::size_t size() const noexcept { return images_.size(); }
    bool empty() const noexcept { return images_.empty(); }

    /// p(s) for a 1-based label s. Unchecked.
    std::size_t operator()(std::size_t label) const noexcept { return images_[label - 1]; }

    /// p(s) with bounds checking.
    std::size_t at(std::size_t label) const;

    /// images()[s-1] == p(s).
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    /// The deck in sequence convention: entry k-1 is the label at position k.
    std::vector<std::size_t> sequence() const;

    bool is_identity() const noexcept;

    bool operator==(const Permutation&) const = default;

private:
    explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {}

    std::vector<std::size_t> images_;
};

Permutation invert(const Permutation& p);

/// (f o g)(s) = f(g(s)). Throws std::invalid_argument on length mismatch.
Permutation compose(const Permutation& f, const Permutation& g);

// Permutation statistics. The empty permutation has no descents, ascents or
// runs; a single label forms one run.

std::size_t descents(const Permutation& p) noexcept;
std::size_t ascents(const Permutation& p) noexcept;
std::size_t ascending_runs(const Permutation& p) noexcept;
std::size_t descending_runs(const Permutation& p) noexcept;

/**
 * Number of left-to-right passes over @p deck needed to pick up the labels
 * 1, 2, ..., n in order without ever moving backwards.
 *
 * This walks the deck literally, so it costs O(n * readings). It agrees with
 * ascending_runs(Permutation::from_sequence(deck)) but shares no code with it.
 */
std::size_t readings(std::span<const std::size_t> deck);

/// Checks that @p values is a bijection on [n]; throws InvalidPermutation
/// naming the first offending value otherwise.
void validate_bijection(std::span<const std::size_t> values);

/**
 * Parses whitespace- and/or comma-separated integers. Throws
 * std::invalid_argument with the character offset of the first bad token.
 */
std::vector<std::size_t> parse_integers(const std::string& text);

std::string to_string(std::span<const std::size_t> values, char separator = ' ');

std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace pileshuffle
