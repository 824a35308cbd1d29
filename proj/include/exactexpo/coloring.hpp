#pragma once

#include <optional>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::coloring {

// Per-vertex allowed-color lists; colors are positive integers. A vertex with
// an empty list makes the instance infeasible (not an error).
using ColorLists = std::vector<std::vector<int>>;

// Proper coloring respecting two-element lists, via the 2-SAT reduction: one
// boolean per vertex selects which of its (at most two) allowed colors it
// takes, every monochromatic edge option contributes a binary clause, and the
// formula is solved by strongly-connected-component analysis of the
// implication graph. Returns the coloring (1 color per vertex) or nullopt.
// Every returned coloring is re-verified by a full edge scan.
// Throws InvalidArgument if some list has more than two distinct colors or
// the list count does not match the vertex count.
std::optional<std::vector<int>> solveListTwoColoring(const Multigraph& G, const ColorLists& lists);

struct ThreeColoringResult {
    std::optional<std::vector<int>> coloring;  // colors in {1,2,3} if found
    std::uint64_t trialsPlanned = 0;           // min(budget, ceil(1.5^n)), exact
    std::uint64_t successTrial = 0;            // 1-based first winning trial, 0 if none
};

// Randomized 3-colorability: each trial assigns every vertex a uniform
// two-element color list and solves the resulting list instance in polynomial
// time. A 3-colorable graph is found with probability >= 1 - 1/e over the
// full planned trial count; a non-3-colorable graph always yields nullopt.
// Trials use per-index derived seeds, so the first success is deterministic
// under both execution policies.
ThreeColoringResult threeColoring15n(const Multigraph& G, std::uint64_t seed,
                                     std::uint64_t trialBudget = ~std::uint64_t(0),
                                     Exec exec = Exec::Serial);

// All inclusion-maximal independent sets, each exactly once, in ascending
// mask order (Bron-Kerbosch with pivoting). Requires n <= 64.
std::vector<Mask> enumerateMaximalIndependentSets(const Multigraph& G);

struct CoverColoringResult {
    bool colorable = false;
    BigInt coverCount = 0;           // ordered k-tuples of maximal independent sets covering V
    std::size_t familySize = 0;      // number of maximal independent sets
    std::uint64_t upClosureSize = 0; // masks containing some member (trimmed runs only)
    std::uint64_t touchedMasks = 0;  // total lattice slots touched by the transforms
};

// chi(G) <= k, decided by counting ordered k-tuples of maximal independent
// sets whose union is V. With trimmed=false the rank transforms sweep the
// full 2^n lattice; with trimmed=true they touch exactly the up-closure of
// the family (every touched mask contains a maximal independent set, hence
// is a dominating set).
CoverColoringResult kColoringViaCover(const Multigraph& G, int k, bool trimmed,
                                      Exec exec = Exec::Serial);

struct RegularColoringResult {
    bool colorable = false;
    std::uint64_t tuplesTried = 0;    // container multisets of size k examined
    std::uint64_t acceptedTuple = 0;  // 1-based index of the accepting multiset, 0 if none
    int maxContainerSize = 0;
};

// k-colorability given a container family: every independent set of G must
// lie inside some container (verified against the maximal independent sets
// when n <= 20; a violation throws InvalidArgument). Guesses the multiset of
// containers holding the k color classes and runs the union-guessing cover
// search with the independence test as membership oracle. One-sided: a true
// verdict is always sound; completeness needs a valid container family and a
// qualifying union, as for setCoverWithContainers.
RegularColoringResult regularColoringWithContainers(const Multigraph& G, int k,
                                                    const std::vector<Mask>& containers,
                                                    double epsThreshold = 0.1,
                                                    Exec exec = Exec::Serial);

}  // namespace exactexpo::coloring
