#pragma once
// Shared helpers for the test suites: planted instance generators and
// brute-force reference computations that several suites compare against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace testsupport {

using exactexpo::BigInt;
using exactexpo::CnfFormula;
using exactexpo::Mask;
using exactexpo::Multigraph;
using exactexpo::Rng;
using exactexpo::SetSystem;
using exactexpo::WeightedInstance;

// Leaf-count bound table for width-k branching: T[0] = T[1] = 1 and
// T[i] = sum of the previous k entries (clamped at index 0).
inline std::vector<std::uint64_t> branchingLeafBound(int n, int k) {
    auto t = std::vector<std::uint64_t>(std::size_t(std::max(n + 1, 2)));
    t[0] = 1;
    t[1] = 1;
    for (int i = 2; i <= n; ++i) {
        t[std::size_t(i)] = 0;
        for (int j = 1; j <= k; ++j) t[std::size_t(i)] += t[std::size_t(std::max(i - j, 0))];
    }
    return t;
}

// 3-CNF with a planted satisfying assignment: every clause is resampled so
// that at least one literal agrees with the hidden assignment.
inline CnfFormula plantedSat3Cnf(int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    auto hidden = std::vector<std::uint8_t>(std::size_t(n));
    for (auto& b : hidden) b = std::uint8_t(rng.coin());
    CnfFormula phi;
    phi.numVars = n;
    for (int c = 0; c < m; ++c) {
        auto vars = rng.sampleSubset(n, 3);
        auto clause = std::vector<int>();
        bool satisfied = false;
        for (int v : vars) {
            const bool positive = rng.coin();
            clause.push_back(positive ? v + 1 : -(v + 1));
            if (positive == bool(hidden[std::size_t(v)])) satisfied = true;
        }
        if (!satisfied) {
            const auto j = std::size_t(rng.below(clause.size()));
            clause[j] = -clause[j];
        }
        phi.clauses.push_back(std::move(clause));
    }
    return phi;
}

// Graph with a planted proper 3-coloring: vertices are split into three
// random classes and only cross-class pairs become edges (probability p).
inline Multigraph plantedThreeColorable(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    auto part = std::vector<int>(std::size_t(n));
    for (auto& c : part) c = int(rng.below(3));
    Multigraph g = Multigraph::empty(n, false);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[std::size_t(u)] != part[std::size_t(v)] && rng.bernoulli(p))
                g.addEdge(u, v);
    return g;
}

// Random digraph with arc multiplicities in 1..maxMult and arc density 1/2.
inline Multigraph randomDigraph(Rng& rng, int n, int maxMult) {
    Multigraph g = Multigraph::empty(n, true);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            if (v == w) continue;
            if (rng.bernoulli(0.5)) g.addEdge(v, w, std::uint32_t(1 + rng.below(std::uint64_t(maxMult))));
        }
    return g;
}

// Bin packing instance whose weights sum exactly to bins * capacity: each
// bin's capacity is split into 1..maxParts positive parts, then all parts
// are shuffled together.  Such instances are always packable.
inline WeightedInstance tightBinPacking(int bins, int capacity, int maxParts, std::uint64_t seed) {
    Rng rng(seed);
    auto weights = std::vector<BigInt>();
    for (int b = 0; b < bins; ++b) {
        const int parts = 1 + int(rng.below(std::uint64_t(std::min(maxParts, capacity))));
        // Split `capacity` into `parts` positive integers via distinct cuts.
        auto cuts = rng.sampleSubset(capacity - 1, parts - 1);
        std::sort(cuts.begin(), cuts.end());
        int prev = 0;
        for (int c : cuts) {
            weights.push_back(c + 1 - prev);
            prev = c + 1;
        }
        weights.push_back(capacity - prev);
    }
    for (std::size_t i = weights.size(); i > 1; --i)
        std::swap(weights[i - 1], weights[std::size_t(rng.below(i))]);
    WeightedInstance inst;
    inst.n = int(weights.size());
    inst.w = std::move(weights);
    inst.capacity = capacity;
    inst.bins = bins;
    inst.isBinPacking = true;
    return inst;
}

// Brute force: directed Hamiltonian cycles through the arc (t, s), counting
// arc multiplicities along the path but using the anchor arc once.
inline BigInt bruteCyclesThroughArc(const Multigraph& g, int t, int s) {
    const int n = g.n;
    auto rest = std::vector<int>();
    for (int v = 0; v < n; ++v)
        if (v != s) rest.push_back(v);
    std::sort(rest.begin(), rest.end());
    BigInt total = 0;
    do {
        if (rest.back() != t) continue;
        BigInt ways = g.adj[std::size_t(t)][std::size_t(s)];
        int prev = s;
        for (int v : rest) {
            ways *= g.adj[std::size_t(prev)][std::size_t(v)];
            prev = v;
        }
        total += ways;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return total;
}

// Brute force: spanning out-branchings rooted at s, by enumerating arc
// subsets (arcs expanded with multiplicity; keep the arc count small).
inline BigInt bruteOutBranchings(const Multigraph& g, int s) {
    const int n = g.n;
    auto arcs = std::vector<std::pair<int, int>>();
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            for (std::uint32_t k = 0; k < g.adj[std::size_t(v)][std::size_t(w)]; ++k)
                arcs.emplace_back(v, w);
    if (n == 1) return 1;
    const int m = int(arcs.size());
    if (m > 24) throw exactexpo::InvalidArgument("bruteOutBranchings: too many arcs");
    BigInt total = 0;
    for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << m); ++sub) {
        if (std::popcount(sub) != n - 1) continue;
        auto indeg = std::vector<int>(std::size_t(n), 0);
        auto parent = std::vector<int>(std::size_t(n), -1);
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            if (sub >> i & 1) {
                auto [v, w] = arcs[std::size_t(i)];
                if (w == s || indeg[std::size_t(w)]++) ok = false;
                parent[std::size_t(w)] = v;
            }
        if (!ok) continue;
        for (int v = 0; v < n && ok; ++v) {
            int cur = v, steps = 0;
            while (cur != s && steps <= n) {
                cur = parent[std::size_t(cur)];
                ++steps;
                if (cur < 0) break;
            }
            if (cur != s) ok = false;
        }
        if (ok) total += 1;
    }
    return total;
}

// Does X intersect every set of the system?
inline bool hitsAll(const SetSystem& s, Mask x) {
    for (Mask set : s.sets)
        if ((set & x) == 0) return false;
    return true;
}

// Is the coloring proper on g?
inline bool properColoring(const Multigraph& g, const std::vector<int>& coloring) {
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
            if (g.adj[std::size_t(u)][std::size_t(v)] > 0 &&
                coloring[std::size_t(u)] == coloring[std::size_t(v)])
                return false;
    return true;
}

}  // namespace testsupport
