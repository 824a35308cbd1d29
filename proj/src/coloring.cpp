#include "exactexpo/coloring.hpp"

#include <algorithm>
#include <bit>

#include "exactexpo/covering.hpp"

namespace exactexpo::coloring {

namespace {

// Kosaraju condensation. Returns component ids that form a topological order
// of the condensation: comp[u] <= comp[v] for every edge u -> v.
std::vector<int> stronglyConnectedComponents(int nodes, const std::vector<std::vector<int>>& out) {
    auto in = std::vector<std::vector<int>>(std::size_t(nodes));
    for (int u = 0; u < nodes; ++u)
        for (int v : out[std::size_t(u)]) in[std::size_t(v)].push_back(u);

    std::vector<int> order;
    order.reserve(std::size_t(nodes));
    std::vector<std::uint8_t> seen(std::size_t(nodes), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < nodes; ++s) {
        if (seen[std::size_t(s)]) continue;
        seen[std::size_t(s)] = 1;
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < out[std::size_t(u)].size()) {
                int v = out[std::size_t(u)][next++];
                if (!seen[std::size_t(v)]) {
                    seen[std::size_t(v)] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }

    std::vector<int> comp(std::size_t(nodes), -1);
    int id = 0;
    std::vector<int> dfs;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[std::size_t(*it)] != -1) continue;
        dfs.push_back(*it);
        comp[std::size_t(*it)] = id;
        while (!dfs.empty()) {
            int u = dfs.back();
            dfs.pop_back();
            for (int v : in[std::size_t(u)])
                if (comp[std::size_t(v)] == -1) {
                    comp[std::size_t(v)] = id;
                    dfs.push_back(v);
                }
        }
        ++id;
    }
    return comp;
}

}  // namespace

std::optional<std::vector<int>> solveListTwoColoring(const Multigraph& G, const ColorLists& lists) {
    const int n = G.n;
    if (int(lists.size()) != n)
        throw InvalidArgument("solveListTwoColoring: one color list per vertex required");

    // choice[v][0], choice[v][1]: the two candidate colors (equal for a
    // one-element list).
    auto choice = std::vector<std::array<int, 2>>(std::size_t(n));
    for (int v = 0; v < n; ++v) {
        std::vector<int> L = lists[std::size_t(v)];
        std::sort(L.begin(), L.end());
        L.erase(std::unique(L.begin(), L.end()), L.end());
        if (L.size() > 2)
            throw InvalidArgument("solveListTwoColoring: list with more than two colors");
        if (L.empty()) return std::nullopt;
        choice[std::size_t(v)] = {L[0], L.size() == 2 ? L[1] : L[0]};
    }

    // Implication graph on literals: node 2v+s means "vertex v takes
    // choice s". A monochromatic pair forbids taking both, i.e. the clause
    // (not (v,s) or not (w,t)).
    const int nodes = 2 * n;
    auto out = std::vector<std::vector<int>>(std::size_t(nodes));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (G.adj[std::size_t(u)][std::size_t(v)] == 0 && G.adj[std::size_t(v)][std::size_t(u)] == 0)
                continue;
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    if (choice[std::size_t(u)][std::size_t(s)] == choice[std::size_t(v)][std::size_t(t)]) {
                        out[std::size_t(2 * u + s)].push_back(2 * v + (1 - t));
                        out[std::size_t(2 * v + t)].push_back(2 * u + (1 - s));
                    }
        }
    }

    const std::vector<int> comp = stronglyConnectedComponents(nodes, out);
    std::vector<int> color(std::size_t(n), 0);
    for (int v = 0; v < n; ++v) {
        const int c0 = comp[std::size_t(2 * v)];
        const int c1 = comp[std::size_t(2 * v + 1)];
        if (c0 == c1 && choice[std::size_t(v)][0] != choice[std::size_t(v)][1]) return std::nullopt;
        // pick the literal later in topological order (implied by nothing it
        // contradicts)
        const int s = (c1 > c0) ? 1 : 0;
        color[std::size_t(v)] = choice[std::size_t(v)][std::size_t(s)];
    }

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((G.adj[std::size_t(u)][std::size_t(v)] > 0 || G.adj[std::size_t(v)][std::size_t(u)] > 0) &&
                color[std::size_t(u)] == color[std::size_t(v)])
                return std::nullopt;
    return color;
}

ThreeColoringResult threeColoring15n(const Multigraph& G, std::uint64_t seed,
                                     std::uint64_t trialBudget, Exec exec) {
    const int n = G.n;
    ThreeColoringResult res;

    // ceil(1.5^n) = ceil(3^n / 2^n), exactly.
    BigInt ceil15 = 1;
    for (int i = 0; i < n; ++i) ceil15 *= 3;
    ceil15 = (ceil15 + (BigInt(1) << n) - 1) >> n;
    const BigInt planned = std::min(ceil15, BigInt(trialBudget));
    res.trialsPlanned = planned.convert_to<std::uint64_t>();

    static const std::array<std::array<int, 2>, 3> kPairs = {{{1, 2}, {1, 3}, {2, 3}}};
    auto trialLists = [&](std::uint64_t t) {
        Rng rng(deriveSeed(seed, t));
        auto lists = ColorLists(std::size_t(n));
        for (int v = 0; v < n; ++v) {
            const auto& pair = kPairs[std::size_t(rng.below(3))];
            lists[std::size_t(v)] = {pair[0], pair[1]};
        }
        return lists;
    };

    const std::uint64_t winner = firstWinnerIndex(res.trialsPlanned, exec, [&](std::uint64_t t) {
        return solveListTwoColoring(G, trialLists(t)).has_value();
    });
    if (winner != kNoWinner) {
        res.successTrial = winner + 1;
        res.coloring = solveListTwoColoring(G, trialLists(winner));
    }
    return res;
}

namespace {

void bronKerbosch(Mask r, Mask p, Mask x, const std::vector<Mask>& nonAdj, std::vector<Mask>& out) {
    if ((p | x) == 0) {
        out.push_back(r);
        return;
    }
    // pivot: element of p|x leaving the fewest branch candidates
    int pivot = -1, best = -1;
    for (Mask m = p | x; m != 0; m &= m - 1) {
        const int u = std::countr_zero(m);
        const int score = popcount(p & nonAdj[std::size_t(u)]);
        if (score > best) {
            best = score;
            pivot = u;
        }
    }
    Mask cand = p & ~nonAdj[std::size_t(pivot)];
    while (cand != 0) {
        const int v = std::countr_zero(cand);
        cand &= cand - 1;
        const Mask bit = Mask(1) << v;
        bronKerbosch(r | bit, p & nonAdj[std::size_t(v)], x & nonAdj[std::size_t(v)], nonAdj, out);
        p &= ~bit;
        x |= bit;
    }
}

}  // namespace

std::vector<Mask> enumerateMaximalIndependentSets(const Multigraph& G) {
    const int n = G.n;
    if (n > 64) throw InvalidArgument("enumerateMaximalIndependentSets: needs n <= 64");
    auto nonAdj = std::vector<Mask>(std::size_t(n));
    for (int v = 0; v < n; ++v) {
        Mask neigh = 0;
        for (int w = 0; w < n; ++w)
            if (G.adj[std::size_t(v)][std::size_t(w)] > 0 || G.adj[std::size_t(w)][std::size_t(v)] > 0)
                neigh |= Mask(1) << w;
        nonAdj[std::size_t(v)] = fullMask(n) & ~neigh & ~(Mask(1) << v);
    }
    std::vector<Mask> out;
    bronKerbosch(0, fullMask(n), 0, nonAdj, out);
    std::sort(out.begin(), out.end());
    return out;
}

CoverColoringResult kColoringViaCover(const Multigraph& G, int k, bool trimmed, Exec exec) {
    SetSystem S;
    S.n = G.n;
    S.sets = enumerateMaximalIndependentSets(G);

    CoverColoringResult res;
    res.familySize = S.sets.size();
    if (trimmed) {
        const auto r = covering::setCoverTrimmed(S, k);
        res.colorable = r.covered;
        res.coverCount = r.count;
        res.upClosureSize = r.closureSize;
        res.touchedMasks = r.touchedTotal;
    } else {
        const auto r = covering::setCover2n(S, k, exec);
        res.colorable = r.covered;
        res.coverCount = r.count;
        res.touchedMasks = r.touchedTotal;
    }
    return res;
}

RegularColoringResult regularColoringWithContainers(const Multigraph& G, int k,
                                                    const std::vector<Mask>& containers,
                                                    double epsThreshold, Exec exec) {
    const int n = G.n;
    if (k < 1) throw InvalidArgument("regularColoringWithContainers: k must be >= 1");
    if (containers.empty())
        throw InvalidArgument("regularColoringWithContainers: container family is empty");
    for (Mask c : containers)
        if ((c & ~fullMask(n)) != 0)
            throw InvalidArgument("regularColoringWithContainers: container outside vertex set");

    if (n <= 20) {
        for (Mask mis : enumerateMaximalIndependentSets(G)) {
            bool held = false;
            for (Mask c : containers)
                if ((mis & c) == mis) {
                    held = true;
                    break;
                }
            if (!held)
                throw InvalidArgument(
                    "regularColoringWithContainers: an independent set lies in no container");
        }
    }

    RegularColoringResult res;
    for (Mask c : containers) res.maxContainerSize = std::max(res.maxContainerSize, popcount(c));

    auto nonEdge = std::vector<Mask>(std::size_t(n));
    for (int v = 0; v < n; ++v) {
        Mask neigh = 0;
        for (int w = 0; w < n; ++w)
            if (G.adj[std::size_t(v)][std::size_t(w)] > 0 || G.adj[std::size_t(w)][std::size_t(v)] > 0)
                neigh |= Mask(1) << w;
        nonEdge[std::size_t(v)] = ~neigh;
    }
    covering::MemberOracle independent = [&](Mask x) {
        for (Mask m = x; m != 0; m &= m - 1)
            if ((x & ~nonEdge[std::size_t(std::countr_zero(m))]) != 0) return false;
        return true;
    };

    // Guess the multiset of containers holding the k color classes:
    // non-decreasing index tuples over the container list.
    std::vector<std::size_t> pick(std::size_t(k), 0);
    std::vector<Mask> chosen(std::size_t(k), 0);
    for (;;) {
        ++res.tuplesTried;
        for (int i = 0; i < k; ++i) chosen[std::size_t(i)] = containers[pick[std::size_t(i)]];
        if (covering::setCoverWithContainers(independent, chosen, n, epsThreshold, exec).covered) {
            res.colorable = true;
            res.acceptedTuple = res.tuplesTried;
            return res;
        }
        int i = k - 1;
        while (i >= 0 && pick[std::size_t(i)] + 1 == containers.size()) --i;
        if (i < 0) break;
        const std::size_t next = pick[std::size_t(i)] + 1;
        for (int j = i; j < k; ++j) pick[std::size_t(j)] = next;
    }
    return res;
}

}  // namespace exactexpo::coloring
