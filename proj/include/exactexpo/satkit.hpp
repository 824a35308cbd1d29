#pragma once

// k-CNF satisfiability kit: branching search (k-step-Fibonacci bound),
// randomized local search over Hamming balls, and the restriction-based
// solver built on canonical decision trees.

#include <cstdint>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::satkit {

// Partial assignment: one value per variable, star = unassigned.
struct Restriction {
    static constexpr std::int8_t kStar = -1;

    std::vector<std::int8_t> val;  // entries in {-1, 0, 1}
    int stars = 0;

    static Restriction allStars(int numVars) {
        Restriction r;
        r.val.assign(std::size_t(numVars), kStar);
        r.stars = numVars;
        return r;
    }

    int size() const { return int(val.size()); }
    bool isStar(int var) const { return val[std::size_t(var)] == kStar; }

    void set(int var, bool value) {
        auto& slot = val[std::size_t(var)];
        if (slot == kStar) --stars;
        slot = value ? 1 : 0;
    }

    void clear(int var) {
        auto& slot = val[std::size_t(var)];
        if (slot != kStar) ++stars;
        slot = kStar;
    }
};

// Substitutes the assigned variables of rho into phi: satisfied clauses are
// dropped, falsified literals are removed (an emptied clause is kept as the
// empty, unsatisfiable clause), and surviving clauses keep their order.
CnfFormula applyRestriction(const CnfFormula& phi, const Restriction& rho);

// Decision tree produced by repeatedly querying every unassigned variable
// of the first not-yet-satisfied clause. Nodes are stored in a flat array;
// node 0 is the root.
struct CdtNode {
    int var = -1;   // internal nodes: variable queried (0-based)
    int lo = -1;    // child for var = 0
    int hi = -1;    // child for var = 1
    int leaf = -1;  // -1 internal, else 0 or 1
};

struct CanonicalDecisionTree {
    std::vector<CdtNode> nodes;
    int depth = 0;

    std::uint64_t nodeCount() const { return nodes.size(); }
    bool hasOneLeaf() const {
        for (const auto& nd : nodes)
            if (nd.leaf == 1) return true;
        return false;
    }
};

// Builds the canonical decision tree of phi. Clause order is input order;
// within a clause, variables are queried in parsed literal order. Every
// root-to-leaf path sets distinct variables and the node count is at most
// 2^(depth+1) - 1. Throws BudgetError if the depth would exceed depthCap
// (a safety valve; the restriction solver needs full trees).
CanonicalDecisionTree buildCanonicalDecisionTree(const CnfFormula& phi, int depthCap);

// Branching solver: branch on the first clause (l_1 v ... v l_s) of the
// current formula, trying l_1 = ... = l_{i-1} = false, l_i = true for
// i = 1..s. leafCalls counts the invocations that decide without branching;
// it is bounded by the k-step Fibonacci numbers T'[n].
struct BranchingResult {
    bool sat = false;
    std::uint64_t leafCalls = 0;
};
BranchingResult monienSpeckenmeyer(const CnfFormula& phi);

// True iff some satisfying assignment lies within Hamming distance
// `radius` of x. Each node flips one variable of the first unsatisfied
// clause (at most k children); leafCalls <= k^radius.
struct LocalSearchResult {
    bool sat = false;
    std::uint64_t leafCalls = 0;
};
LocalSearchResult localSearch(const CnfFormula& phi, std::vector<std::uint8_t> x, int radius);

// Randomized ball-covering solver: trialsPlanned = ceil(2^n / C(n, d)) with
// d = ceil(n / (k+1)), each trial running localSearch from a fresh uniform
// assignment (trial t uses deriveSeed(seed, t)). One-sided: unsatisfiable
// inputs always give false; satisfiable ones succeed with probability
// >= 1/2 per call. Execution stops at the first success; successTrial is
// its 1-based index (0 if none). The parallel path yields the same result.
struct BallCoverResult {
    bool sat = false;
    int radius = 0;
    std::uint64_t trialsPlanned = 0;
    std::uint64_t successTrial = 0;
};
BallCoverResult schoening(const CnfFormula& phi, std::uint64_t seed, Exec exec = Exec::Serial);

// Exact solver via restrictions: pick a uniform star set S of floor(n/(30k))
// variables, loop over all 2^(n-|S|) assignments of the non-star variables,
// and accept iff some restricted formula's canonical decision tree has a
// 1-leaf. restrictionsPlanned is always 2^(n-|S|); execution stops at the
// first witness (successIndex 1-based, 0 if none). treeNodesBuilt sums the
// tree sizes over the executed prefix and is identical for serial and
// parallel execution.
struct RestrictionSolverResult {
    bool sat = false;
    std::vector<int> starVars;  // S, sorted ascending
    std::uint64_t restrictionsPlanned = 0;
    std::uint64_t successIndex = 0;
    std::uint64_t treeNodesBuilt = 0;
};
RestrictionSolverResult switchSat(const CnfFormula& phi, std::uint64_t seed,
                                  Exec exec = Exec::Serial);

}  // namespace exactexpo::satkit
