#include "exactexpo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exactexpo::oracles {

namespace {

// Budget gate: refuse up front when the estimated state count is too large.
void requireBudget(double states, const OracleBudget& b, const char* who) {
    if (!(states <= double(b.maxStates)))
        throw BudgetError(std::string(who) + ": estimated state count exceeds oracle budget");
}

bool evalClause(const std::vector<int>& clause, Mask assignment) {
    for (int lit : clause) {
        int v = lit > 0 ? lit : -lit;
        bool val = hasBit(assignment, v - 1);
        if (lit > 0 ? val : !val) return true;
    }
    return false;
}

}  // namespace

bool satOracle(const CnfFormula& f, const OracleBudget& budget) {
    if (f.numVars > 62) throw BudgetError("satOracle: n > 62");
    requireBudget(std::ldexp(1.0, f.numVars), budget, "satOracle");
    const Mask top = fullMask(f.numVars);
    for (Mask a = 0;; ++a) {
        bool ok = true;
        for (const auto& c : f.clauses)
            if (!evalClause(c, a)) { ok = false; break; }
        if (ok) return true;
        if (a == top) break;
    }
    return false;
}

bool coloringOracle(const Multigraph& g, int k, const OracleBudget& budget) {
    if (k < 0) throw InvalidArgument("coloringOracle: negative k");
    if (g.n == 0) return true;
    if (k == 0) return false;
    requireBudget(std::pow(double(k), double(g.n)), budget, "coloringOracle");
    std::vector<int> color(g.n, 0);
    for (;;) {
        bool proper = true;
        for (int u = 0; proper && u < g.n; ++u)
            for (int v = u + 1; proper && v < g.n; ++v)
                if ((g.adj[u][v] || g.adj[v][u]) && color[u] == color[v]) proper = false;
        if (proper) return true;
        int i = 0;
        while (i < g.n && color[i] == k - 1) color[i++] = 0;
        if (i == g.n) return false;
        ++color[i];
    }
}

BigInt setCoverOracle(const SetSystem& s, int k, const OracleBudget& budget) {
    if (k < 0) throw InvalidArgument("setCoverOracle: negative k");
    const Mask universe = fullMask(s.n);
    if (k == 0) return universe == 0 ? 1 : 0;
    if (s.sets.empty()) return 0;
    requireBudget(std::pow(double(s.sets.size()), double(k)), budget, "setCoverOracle");
    std::vector<std::size_t> pick(k, 0);
    BigInt count = 0;
    for (;;) {
        Mask u = 0;
        BigInt ways = 1;
        for (int i = 0; i < k; ++i) {
            u |= s.sets[pick[i]];
            ways *= s.multiplicity(pick[i]);
        }
        if (u == universe) count += ways;
        int i = 0;
        while (i < k && pick[i] == s.sets.size() - 1) pick[i++] = 0;
        if (i == k) break;
        ++pick[i];
    }
    return count;
}

bool subsetSumOracle(const WeightedInstance& inst, const OracleBudget& budget) {
    if (inst.n > 62) throw BudgetError("subsetSumOracle: n > 62");
    requireBudget(std::ldexp(1.0, inst.n), budget, "subsetSumOracle");
    const Mask top = fullMask(inst.n);
    for (Mask X = 0;; ++X) {
        if (inst.weightOf(X) == inst.target) return true;
        if (X == top) break;
    }
    return false;
}

namespace {

bool packRec(const WeightedInstance& inst, int item, std::vector<BigInt>& load) {
    if (item == inst.n) return true;
    for (std::size_t b = 0; b < load.size(); ++b) {
        if (load[b] + inst.w[item] > inst.capacity) continue;
        load[b] += inst.w[item];
        if (packRec(inst, item + 1, load)) return true;
        load[b] -= inst.w[item];
    }
    return false;
}

}  // namespace

bool binPackingOracle(const WeightedInstance& inst, const OracleBudget& budget) {
    if (inst.bins == 0) return inst.n == 0;
    requireBudget(std::pow(double(inst.bins), double(inst.n)), budget, "binPackingOracle");
    std::vector<BigInt> load(inst.bins, BigInt(0));
    return packRec(inst, 0, load);
}

namespace {

bool matchRec(const Multigraph& g, Mask covered) {
    if (covered == fullMask(g.n)) return true;
    int u = std::countr_one(covered);  // first uncovered vertex
    for (int v = u + 1; v < g.n; ++v) {
        if (hasBit(covered, v)) continue;
        if (!g.adj[u][v]) continue;
        if (matchRec(g, covered | (Mask(1) << u) | (Mask(1) << v))) return true;
    }
    return false;
}

}  // namespace

bool matchingOracle(const Multigraph& g, const OracleBudget& budget) {
    if (g.directed) throw InvalidArgument("matchingOracle: undirected graphs only");
    if (g.n > 62) throw BudgetError("matchingOracle: n > 62");
    if (g.n % 2 != 0) return false;
    requireBudget(std::ldexp(1.0, g.n), budget, "matchingOracle");
    return matchRec(g, 0);
}

BigInt hamCountOracle(const Multigraph& g, const OracleBudget& budget) {
    const int n = g.n;
    if (n == 0) return 0;
    double perms = 1;
    for (int i = 1; i < n; ++i) perms *= i;
    requireBudget(perms, budget, "hamCountOracle");
    if (!g.directed && n < 3) return 0;
    if (g.directed && n == 1) return 0;
    std::vector<int> rest;
    for (int v = 1; v < n; ++v) rest.push_back(v);
    BigInt count = 0;
    do {
        if (!g.directed && n >= 3 && rest.front() > rest.back())
            continue;  // one orientation per undirected cycle
        BigInt ways = 1;
        int prev = 0;
        for (int v : rest) {
            ways *= g.adj[prev][v];
            prev = v;
        }
        ways *= g.adj[prev][0];
        count += ways;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return count;
}

std::vector<Mask> hittingSetProfile(const SetSystem& f, const OracleBudget& budget) {
    requireBudget(std::ldexp(1.0, f.n) * double(f.sets.size() + 1), budget, "hittingSetProfile");
    std::vector<Mask> out;
    const Mask top = fullMask(f.n);
    for (Mask X = 0;; ++X) {
        bool hits = true;
        for (Mask S : f.sets)
            if (!(S & X)) { hits = false; break; }
        if (hits) out.push_back(X);
        if (X == top) break;
    }
    return out;
}

std::int64_t heldKarpTsp(const std::vector<std::vector<std::int64_t>>& dist,
                         const OracleBudget& budget) {
    const int n = int(dist.size());
    if (n < 2) throw InvalidArgument("heldKarpTsp: need n >= 2");
    if (n > 20) throw BudgetError("heldKarpTsp: n > 20");
    requireBudget(std::ldexp(double(n), n), budget, "heldKarpTsp");
    const std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t full = std::size_t(1) << (n - 1);  // subsets of {1..n-1}
    std::vector<std::vector<std::int64_t>> dp(full, std::vector<std::int64_t>(n, INF));
    for (int v = 1; v < n; ++v) dp[std::size_t(1) << (v - 1)][v] = dist[0][v];
    for (std::size_t S = 1; S < full; ++S) {
        for (int v = 1; v < n; ++v) {
            if (!((S >> (v - 1)) & 1)) continue;
            std::int64_t cur = dp[S][v];
            if (cur >= INF) continue;
            for (int w = 1; w < n; ++w) {
                if ((S >> (w - 1)) & 1) continue;
                std::size_t T = S | (std::size_t(1) << (w - 1));
                dp[T][w] = std::min(dp[T][w], cur + dist[v][w]);
            }
        }
    }
    std::int64_t best = INF;
    for (int v = 1; v < n; ++v)
        if (dp[full - 1][v] < INF) best = std::min(best, dp[full - 1][v] + dist[v][0]);
    return best;
}

}  // namespace exactexpo::oracles
