#pragma once

// Brute-force reference implementations. Ground truth for every solver;
// deliberately free of pruning or cleverness, and of solver imports.

#include <optional>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::oracles {

// Enumeration budget, checked against a size estimate before any work.
struct OracleBudget {
    std::uint64_t maxStates = std::uint64_t(1) << 28;
};

bool satOracle(const CnfFormula& f, const OracleBudget& budget = {});

bool coloringOracle(const Multigraph& g, int k, const OracleBudget& budget = {});

// Number of ordered k-tuples (S_1,...,S_k) from S (with multiplicity) whose
// union is the full universe.
BigInt setCoverOracle(const SetSystem& s, int k, const OracleBudget& budget = {});

bool subsetSumOracle(const WeightedInstance& inst, const OracleBudget& budget = {});

// Partition of [n] into at most inst.bins bins, each of weight <= capacity.
bool binPackingOracle(const WeightedInstance& inst, const OracleBudget& budget = {});

// Perfect matching existence (undirected).
bool matchingOracle(const Multigraph& g, const OracleBudget& budget = {});

// Hamiltonian cycle count. Directed: one count per cyclic vertex sequence
// (minimum-index vertex fixed first), parallel arcs multiply. Undirected:
// one count per undirected cycle; n < 3 has none.
BigInt hamCountOracle(const Multigraph& g, const OracleBudget& budget = {});

// All X ⊆ [n] intersecting every member of the family.
std::vector<Mask> hittingSetProfile(const SetSystem& f, const OracleBudget& budget = {});

// Exact minimum tour length over a complete weighted graph given as a
// symmetric n x n distance matrix; n >= 2... standard subset DP.
std::int64_t heldKarpTsp(const std::vector<std::vector<std::int64_t>>& dist,
                         const OracleBudget& budget = {});

}  // namespace exactexpo::oracles
