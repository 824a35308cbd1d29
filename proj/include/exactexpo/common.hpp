#pragma once

// Shared plumbing: subset masks, big integers, errors, deterministic RNG,
// and the worker-count policy for parallel kernels.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace exactexpo {

// A subset of a universe of at most 64 elements, one bit per element.
// External formats are 1-based; bit i-1 represents element i.
using Mask = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask fullMask(int n) { return n == 64 ? ~Mask(0) : ((Mask(1) << n) - 1); }
inline bool hasBit(Mask m, int i) { return (m >> i) & 1; }

struct ParseError : std::runtime_error {
    explicit ParseError(int line, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what),
          lineNumber(line) {}
    int lineNumber;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- Deterministic randomness -------------------------------------------
//
// Generator: std::mt19937_64 (named, versioned by the C++ standard; its
// output sequence is identical across conforming implementations).
// Bounded draws use bitmask rejection on raw 64-bit outputs so results do
// not depend on the standard library's distribution internals.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed split function: child seed for stream `index` under master `seed`.
// Documented contract: deriveSeed(s, i) = splitmix64(s XOR (i+1)*golden),
// golden = 0x9E3779B97F4A7C15. Streams for distinct indices are unrelated.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound), unbiased via bitmask rejection. bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
        if ((bound & (bound - 1)) == 0) return gen_() & (bound - 1);
        int bits = 64 - std::countl_zero(bound - 1);
        std::uint64_t mask = (bits == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << bits) - 1);
        for (;;) {
            std::uint64_t x = gen_() & mask;
            if (x < bound) return x;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw InvalidArgument("Rng::range: empty range");
        std::uint64_t span = hi - lo;
        if (span == ~std::uint64_t(0)) return gen_();
        return lo + below(span + 1);
    }

    bool coin() { return gen_() & 1; }

    // Bernoulli(p) via a 53-bit uniform in [0,1).
    bool bernoulli(double p) { return uniform01() < p; }

    double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

    // Uniform k-subset of {0,...,n-1}, returned as a sorted index list.
    std::vector<int> sampleSubset(int n, int k) {
        if (k > n) throw InvalidArgument("sampleSubset: k > n");
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + int(below(std::uint64_t(n - i)));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

  private:
    std::mt19937_64 gen_;
};

// --- Parallel execution policy ------------------------------------------

enum class Exec { Serial, Parallel };

// Worker count for parallel kernels: min(OpenMP max threads,
// EXACTEXPO_THREADS if set to a positive integer). Always >= 1.
int workerCount();

constexpr std::uint64_t kNoWinner = ~std::uint64_t(0);

// Runs trial(i) for i = 0..total-1 and returns the smallest index whose
// trial succeeds, or kNoWinner. The parallel path processes fixed-size
// blocks and keeps the smallest winner inside a block, so the result is
// identical to the serial one; trial must be safe to call concurrently
// for distinct indices.
template <class TrialFn>
std::uint64_t firstWinnerIndex(std::uint64_t total, Exec exec, TrialFn&& trial) {
    if (exec == Exec::Serial || workerCount() <= 1) {
        for (std::uint64_t i = 0; i < total; ++i)
            if (trial(i)) return i;
        return kNoWinner;
    }
    const std::uint64_t block = std::uint64_t(workerCount()) * 8;
    for (std::uint64_t base = 0; base < total; base += block) {
        const std::int64_t hi = std::int64_t(std::min(total, base + block));
        std::uint64_t winner = kNoWinner;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workerCount()) reduction(min : winner)
#endif
        for (std::int64_t i = std::int64_t(base); i < hi; ++i)
            if (trial(std::uint64_t(i))) winner = std::min(winner, std::uint64_t(i));
        if (winner != kNoWinner) return winner;
    }
    return kNoWinner;
}

}  // namespace exactexpo
