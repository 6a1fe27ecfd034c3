#pragma once

/**
 * @file stats.hpp
 * @brief Eulerian numbers and the chance that a random deck is sortable.
 *
 * m queues sort a deck iff it has at most m-1 descents (m stacks: at most
 * m-1 ascents). Both statistics are Eulerian-distributed, so the exact
 * probability is a partial row sum of Eulerian numbers over n!.
 */

#include "pileshuffle/sorter.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pileshuffle {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Rows 0..max_n of the Eulerian triangle, built once with
/// A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1).
class EulerianTable {
public:
    explicit EulerianTable(std::size_t max_n);

    std::size_t max_n() const noexcept { return rows_.size() - 1; }

    /// Row n has max(n,1) entries: k = 0..n-1 (row 0 is the single entry 1).
    const std::vector<BigInt>& row(std::size_t n) const;

    /// Number of permutations of length n with exactly k descents.
    /// Throws std::out_of_range unless 0 <= k < max(n,1) and n <= max_n().
    const BigInt& operator()(std::size_t n, std::size_t k) const;

private:
    std::vector<std::vector<BigInt>> rows_;
};

BigInt eulerian(std::size_t n, std::size_t k);

BigInt factorial(std::size_t n);

/// Exact probability that @p m queues (or stacks) sort a uniform deck of
/// size @p n, in lowest terms. Throws for DealerChoice, n == 0 or m == 0.
BigRational sortable_probability_exact(std::size_t n, std::size_t m, SortMode mode);

/// "p/q" (or "p" when q == 1).
std::string to_string(const BigRational& r);

struct MonteCarloEstimate {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    /// Binomial standard error sqrt(p(1-p)/samples) at the estimate.
    double standard_error = 0.0;
    std::uint64_t seed = 0;
};

/**
 * Fraction of sampled decks that @p m piles of the given mode can sort.
 *
 * Samples are split into fixed blocks of kMonteCarloBlock decks; block b is
 * drawn from std::mt19937_64 seeded with splitmix64(seed + b) and shuffled
 * by Fisher-Yates with rejection-sampled indices. The estimate therefore
 * depends only on (n, m, mode, samples, seed), not on @p workers.
 */
MonteCarloEstimate sortable_probability_mc(std::size_t n, std::size_t m, SortMode mode, std::uint64_t samples,
                                           std::uint64_t seed, unsigned workers = 1);

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

/// Uniformly random deck of size @p n in sequence convention.
std::vector<std::size_t> random_deck(std::size_t n, std::uint64_t seed);

/// Standard normal CDF via erfc; accurate to ~15 significant digits.
double normal_cdf(double z);

/**
 * Normal approximation to P[desc <= m-1] for a uniform deck of size n,
 * using the exact descent mean (n-1)/2 and variance (n+1)/12 with a
 * continuity correction. An approximation only.
 */
double normal_approx_probability(std::size_t n, std::size_t m);

/// The limiting form Phi((m-1-n/2) / sqrt(n/12)) of the same probability.
double clt_limit_probability(std::size_t n, std::size_t m);

}  // namespace pileshuffle
