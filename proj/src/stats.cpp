#include "pileshuffle/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace pileshuffle {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform integer in [0, bound) by rejection; bound >= 1.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

void fisher_yates(std::vector<std::size_t>& deck, std::mt19937_64& rng)
{
    for (std::size_t i = deck.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(deck[i - 1], deck[j]);
    }
}

}  // namespace

EulerianTable::EulerianTable(std::size_t max_n)
{
    rows_.reserve(max_n + 1);
    rows_.push_back({BigInt(1)});
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto& prev = rows_.back();
        std::vector<BigInt> row(n);
        for (std::size_t k = 0; k < n; ++k) {
            BigInt value = 0;
            if (k < prev.size()) value += BigInt(k + 1) * prev[k];
            if (k >= 1) value += BigInt(n - k) * prev[k - 1];
            row[k] = std::move(value);
        }
        rows_.push_back(std::move(row));
    }
}

const std::vector<BigInt>& EulerianTable::row(std::size_t n) const
{
    if (n > max_n()) throw std::out_of_range("Eulerian row " + std::to_string(n) + " not tabulated");
    return rows_[n];
}

const BigInt& EulerianTable::operator()(std::size_t n, std::size_t k) const
{
    const auto& r = row(n);
    if (k >= r.size()) {
        throw std::out_of_range("Eulerian number <" + std::to_string(n) + "," + std::to_string(k) +
                                "> needs 0 <= k < " + std::to_string(r.size()));
    }
    return r[k];
}

BigInt eulerian(std::size_t n, std::size_t k)
{
    return EulerianTable(n)(n, k);
}

BigInt factorial(std::size_t n)
{
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

BigRational sortable_probability_exact(std::size_t n, std::size_t m, SortMode mode)
{
    if (mode == SortMode::DealerChoice) {
        throw std::invalid_argument("no closed form for dealer's choice; use the Monte Carlo estimate");
    }
    if (n == 0 || m == 0) throw std::invalid_argument("sortable probability needs n >= 1 and m >= 1");
    // Ascents and descents are equidistributed, so both modes share the row.
    const EulerianTable table(n);
    const auto& row = table.row(n);
    BigInt favourable = 0;
    for (std::size_t k = 0; k < std::min(m, row.size()); ++k) favourable += row[k];
    return BigRational(favourable, factorial(n));
}

std::string to_string(const BigRational& r)
{
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::vector<std::size_t> random_deck(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<std::size_t> deck(n);
    std::iota(deck.begin(), deck.end(), std::size_t{1});
    fisher_yates(deck, rng);
    return deck;
}

MonteCarloEstimate sortable_probability_mc(std::size_t n, std::size_t m, SortMode mode, std::uint64_t samples,
                                           std::uint64_t seed, unsigned workers)
{
    if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<std::uint64_t> block_hits(blocks, 0);

    auto run_block = [&](std::uint64_t b) {
        std::mt19937_64 rng(splitmix64(seed + b));
        const std::uint64_t begin = b * kMonteCarloBlock;
        const std::uint64_t count = std::min(kMonteCarloBlock, samples - begin);
        std::vector<std::size_t> deck(n);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            std::iota(deck.begin(), deck.end(), std::size_t{1});
            fisher_yates(deck, rng);
            hits += feasible(Permutation::from_sequence(deck), m, mode) ? 1 : 0;
        }
        block_hits[b] = hits;
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(blocks, 256))));
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }

    MonteCarloEstimate out;
    out.samples = samples;
    out.seed = seed;
    out.hits = std::accumulate(block_hits.begin(), block_hits.end(), std::uint64_t{0});
    out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
    out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    return out;
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_approx_probability(std::size_t n, std::size_t m)
{
    if (n == 0) throw std::invalid_argument("normal approximation needs n >= 1");
    const double nn = static_cast<double>(n);
    const double sd = std::sqrt((nn + 1.0) / 12.0);
    // (m - 1 + 1/2) - (n - 1)/2 == m - n/2
    return normal_cdf((static_cast<double>(m) - nn / 2.0) / sd);
}

double clt_limit_probability(std::size_t n, std::size_t m)
{
    if (n == 0) throw std::invalid_argument("normal approximation needs n >= 1");
    const double nn = static_cast<double>(n);
    return normal_cdf((static_cast<double>(m) - 1.0 - nn / 2.0) / std::sqrt(nn / 12.0));
}

}  // namespace pileshuffle
