#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::subsetsum {

// ---------------------------------------------------------------------------
// Meet in the middle
// ---------------------------------------------------------------------------

struct MeetInMiddleResult {
    std::optional<Mask> witness;      // a subset with weight exactly the target
    std::uint64_t leftListSize = 0;   // 2^{ceil(n/2)} exactly
    std::uint64_t rightListSize = 0;  // 2^{floor(n/2)} exactly
};

// Exact and complete: splits the items into halves (the left half takes the
// extra item when n is odd), enumerates both sum lists in full, sorts the
// right one, and binary-searches the complement of every left sum. The
// witness is the first hit with the left half scanned in submask order.
MeetInMiddleResult meetInMiddle(const WeightedInstance& inst);

// ---------------------------------------------------------------------------
// Residue-restricted cardinality lists
// ---------------------------------------------------------------------------

struct ResidueListSpec {
    std::uint64_t modulus = 2;  // p
    std::uint64_t residue = 0;  // target residue, 0 <= residue < modulus
    int cardinality = 0;        // exact subset size
};

struct ResidueList {
    // (true un-reduced sum, mask), sorted by sum then mask, each mask once.
    std::vector<std::pair<BigInt, Mask>> entries;
    std::uint64_t dpStatesTouched = 0;  // layered-graph states evaluated
    std::uint64_t backtrackSteps = 0;   // path-enumeration edges walked
};

// All subsets of the given cardinality whose weight is congruent to the
// residue, via a layered reachability table over (index prefix, weight mod p,
// picked count) and a backtracking walk of the admissible paths. The table
// costs O(n^2 p) states and the walk is proportional to n times the output.
ResidueList buildResidueList(const WeightedInstance& inst, const ResidueListSpec& spec);

// ---------------------------------------------------------------------------
// Representation method
// ---------------------------------------------------------------------------

// A pair of cardinality-ceil(n/4) masks whose weights add up to the target;
// the halves may overlap (disjointness is what the collision scan filters
// for, not what the count promises).
struct PseudoSolution {
    Mask x = 0;
    Mask y = 0;
};

struct RepresentationResult {
    std::optional<Mask> witness;  // disjoint union, re-validated against the target
    int successRepetition = 0;    // 1-based; 0 = none
    // Diagnostics of the successful repetition (of the first one when none
    // succeeded): the sampled prime and left residue, both list sizes, and
    // the number of sum collisions inspected by the scan.
    std::uint64_t prime = 0;
    std::uint64_t leftResidue = 0;
    std::uint64_t leftListSize = 0;
    std::uint64_t rightListSize = 0;
    std::uint64_t collisionsScanned = 0;
};

// Randomized subset-sum search targeting solutions of size 2*ceil(n/4): per
// repetition, sample a prime p in [ceil(2^{0.45n}), max(that+1, floor(2^{0.45n+1}))]
// (falling back to the smallest prime at or above the lower end when the
// range holds none, which can happen below n = 12) and a residue split t_L;
// build both residue lists and scan sum collisions for a disjoint pair.
// One-sided: any returned witness has been re-validated. Repetitions are
// independent and, under Exec::Parallel, race; the smallest succeeding
// repetition index wins either way. Solutions of other sizes are invisible
// to this method (the completeness caveat of the size-n/2 assumption).
RepresentationResult representationMethod(const WeightedInstance& inst, std::uint64_t seed,
                                          int budgetR = 20, Exec exec = Exec::Serial);

// ---------------------------------------------------------------------------
// Instance diagnostics
// ---------------------------------------------------------------------------

struct SubsetSumDiagnostics {
    int cardinality = 0;                   // ceil(n/4), the pseudo-solution half size
    std::uint64_t pseudoSolutionCount = 0; // ordered (X, Y) pairs, overlap allowed
    std::uint64_t distinctSubsetSums = 0;  // |{w(X) : X subseteq [n]}|
    std::uint64_t maxFrequency = 0;        // most popular subset sum's multiplicity
};

// Exact instance statistics via sum-indexed counters; requires n <= 24 (the
// full 2^n sum table is materialized).
SubsetSumDiagnostics diagnostics(const WeightedInstance& inst);

}  // namespace exactexpo::subsetsum
