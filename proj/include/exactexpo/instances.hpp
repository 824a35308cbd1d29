#pragma once

// Instance types, text formats, and seeded generators.
//
// Text formats (all UTF-8, lines starting with '#' ignored):
//   CNF:         DIMACS ("p cnf n m" header, 0-terminated clauses, "c" comments).
//   Graph:       "n m" then m lines "u v [multiplicity]" (1-based vertices).
//   Set system:  "n" then one set per line, space-separated element indices.
//   Subset sum:  "n t" then n weights (decimal, possibly >63 bits).
//   Bin packing: "n c k" then n weights.
// Elements/vertices are 1-based in files, 0-based bit positions internally.

#include <optional>
#include <string>
#include <vector>

#include "exactexpo/common.hpp"

namespace exactexpo {

// --- CNF ------------------------------------------------------------------

// Literals are DIMACS-style signed variable indices (|lit| in [1, numVars]).
// Clause order and literal order are preserved by parsing and generation;
// canonical decision trees depend on both.
struct CnfFormula {
    int numVars = 0;
    std::vector<std::vector<int>> clauses;

    int maxWidth() const {
        std::size_t w = 0;
        for (const auto& c : clauses) w = std::max(w, c.size());
        return int(w);
    }
    bool operator==(const CnfFormula&) const = default;
};

CnfFormula parseCnf(const std::string& text);
std::string renderCnf(const CnfFormula& f);

// --- Graphs ----------------------------------------------------------------

// Loop-free multigraph; undirected graphs keep A symmetric with entries in
// {0,1}. Vertex order is index order.
struct Multigraph {
    int n = 0;
    bool directed = false;
    std::vector<std::vector<std::uint32_t>> adj;  // adj[v][w] = arc multiplicity

    static Multigraph empty(int n, bool directed) {
        Multigraph g;
        g.n = n;
        g.directed = directed;
        g.adj.assign(n, std::vector<std::uint32_t>(n, 0));
        return g;
    }
    void addEdge(int u, int v, std::uint32_t mult = 1);
    // Neighbourhood of v as a bitmask (requires n <= 64).
    Mask neighborsMask(int v) const;
    std::uint64_t edgeCount() const;
    bool operator==(const Multigraph&) const = default;
};

Multigraph parseGraph(const std::string& text, bool directed);
std::string renderGraph(const Multigraph& g);

// --- Set systems -------------------------------------------------------------

struct SetSystem {
    int n = 0;
    std::vector<Mask> sets;
    std::vector<std::uint64_t> mult;  // parallel to sets; empty means all 1

    std::uint64_t multiplicity(std::size_t i) const { return mult.empty() ? 1 : mult[i]; }
    bool operator==(const SetSystem&) const = default;
};

SetSystem parseSetSystem(const std::string& text);
std::string renderSetSystem(const SetSystem& s);

// --- Weighted instances ------------------------------------------------------

// Shared by subset sum (target) and bin packing (capacity + bin count).
// Weights are arbitrary-precision; files carry decimal digits.
struct WeightedInstance {
    int n = 0;
    std::vector<BigInt> w;
    BigInt target = 0;   // subset sum
    BigInt capacity = 0; // bin packing
    int bins = 0;        // bin packing
    bool isBinPacking = false;

    BigInt weightOf(Mask X) const {
        BigInt s = 0;
        for (int i = 0; i < n; ++i)
            if (hasBit(X, i)) s += w[i];
        return s;
    }
    bool operator==(const WeightedInstance&) const = default;
};

// parseWeighted dispatches on the first data line: "n t" -> subset sum,
// "n c k" -> bin packing.
WeightedInstance parseWeighted(const std::string& text);
std::string renderWeighted(const WeightedInstance& inst);

// --- Generators ----------------------------------------------------------------

CnfFormula genRandomKCnf(int n, int m, int k, std::uint64_t seed);
Multigraph genRandomGraph(int n, double p, bool directed, std::uint64_t seed);
// Pairing model with rejection of loops and multi-edges. Requires d < n, d*n even.
Multigraph genRandomRegular(int n, int d, std::uint64_t seed);

struct PlantedSubsetSum {
    WeightedInstance instance;
    Mask planted = 0;  // test hook: the planted solution [n/2]
};
// w(i) uniform in [1, 2^n], t = w({1..n/2}). Requires n even, n <= 62.
PlantedSubsetSum genPlantedSubsetSum(int n, std::uint64_t seed);

}  // namespace exactexpo
