// Graph coloring: list 2-coloring, randomized 3-coloring, independent-set
// enumeration, cover-based chromatic tests, and container-guided coloring.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "exactexpo/coloring.hpp"
#include "exactexpo/oracles.hpp"
#include "support.hpp"

using namespace exactexpo;
using namespace exactexpo::coloring;

namespace {

Multigraph cycle(int n) {
    Multigraph g = Multigraph::empty(n, false);
    for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
    return g;
}

Multigraph complete(int n) {
    Multigraph g = Multigraph::empty(n, false);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.addEdge(i, j);
    return g;
}

Multigraph petersen() {
    Multigraph g = Multigraph::empty(10, false);
    for (int i = 0; i < 5; ++i) {
        g.addEdge(i, (i + 1) % 5);
        g.addEdge(5 + i, 5 + (i + 2) % 5);
        g.addEdge(i, 5 + i);
    }
    return g;
}

}  // namespace

TEST_CASE("list 2-coloring: hand examples and input validation") {
    Multigraph g1 = Multigraph::empty(1, false);
    auto c1 = solveListTwoColoring(g1, {{1}});
    REQUIRE(c1.has_value());
    CHECK((*c1)[0] == 1);

    Multigraph g2 = Multigraph::empty(2, false);
    g2.addEdge(0, 1);
    CHECK(!solveListTwoColoring(g2, {{1}, {1}}));

    Multigraph c4 = cycle(4);
    auto col = solveListTwoColoring(c4, {{1, 2}, {1, 2}, {1, 2}, {1, 2}});
    REQUIRE(col.has_value());
    for (int i = 0; i < 4; ++i) CHECK((*col)[std::size_t(i)] != (*col)[std::size_t((i + 1) % 4)]);

    // An empty list makes the instance infeasible, not invalid.
    CHECK(!solveListTwoColoring(g2, {{}, {1, 2}}));
    // Lists longer than two colors are invalid.
    CHECK_THROWS_AS(solveListTwoColoring(g1, {{1, 2, 3}}), InvalidArgument);
    // List count must match the vertex count.
    CHECK_THROWS_AS(solveListTwoColoring(g2, {{1}}), InvalidArgument);
}

TEST_CASE("list 2-coloring agrees with assignment enumeration") {
    for (int it = 0; it < 300; ++it) {
        Rng r(50 + std::uint64_t(it));
        const int n = 1 + int(r.below(6));
        Multigraph g = genRandomGraph(n, 0.5, false, 123 + std::uint64_t(it));
        ColorLists lists;
        for (int v = 0; v < n; ++v) {
            auto L = std::vector<int>();
            const int sz = int(r.below(3));
            while (int(L.size()) < sz) {
                const int c = 1 + int(r.below(3));
                if (std::find(L.begin(), L.end(), c) == L.end()) L.push_back(c);
            }
            lists.push_back(L);
        }
        auto got = solveListTwoColoring(g, lists);

        bool want = false;
        auto pick = std::vector<int>(std::size_t(n), 0);
        for (;;) {
            bool ok = true;
            for (int v = 0; v < n && ok; ++v) ok = !lists[std::size_t(v)].empty();
            if (ok) {
                for (int u = 0; u < n && ok; ++u)
                    for (int v = 0; v < n && ok; ++v)
                        if (g.adj[std::size_t(u)][std::size_t(v)] > 0 &&
                            lists[std::size_t(u)][std::size_t(pick[std::size_t(u)])] ==
                                lists[std::size_t(v)][std::size_t(pick[std::size_t(v)])])
                            ok = false;
                if (ok) {
                    want = true;
                    break;
                }
            }
            int i = n - 1;
            while (i >= 0 && (lists[std::size_t(i)].empty() ||
                              pick[std::size_t(i)] + 1 == int(lists[std::size_t(i)].size()))) {
                pick[std::size_t(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++pick[std::size_t(i)];
        }
        CHECK(got.has_value() == want);
        if (got) {
            // Returned coloring respects lists and edges.
            for (int v = 0; v < n; ++v) {
                const auto& L = lists[std::size_t(v)];
                CHECK(std::find(L.begin(), L.end(), (*got)[std::size_t(v)]) != L.end());
            }
            CHECK(testsupport::properColoring(g, *got));
        }
    }
}

TEST_CASE("randomized 3-coloring: trial plan arithmetic and verdicts") {
    Multigraph tri = complete(3);
    ThreeColoringResult r = threeColoring15n(tri, 5);
    REQUIRE(r.coloring.has_value());
    CHECK(r.successTrial >= 1);
    std::set<int> got(r.coloring->begin(), r.coloring->end());
    CHECK(got == std::set<int>{1, 2, 3});

    Multigraph k4 = complete(4);
    ThreeColoringResult r4 = threeColoring15n(k4, 5);
    CHECK(!r4.coloring);
    CHECK(r4.successTrial == 0);
    CHECK(r4.trialsPlanned == 6);  // ceil(1.5^4) = ceil(81/16)
    CHECK(threeColoring15n(k4, 5, 3).trialsPlanned == 3);  // explicit budget wins

    Multigraph g0 = Multigraph::empty(0, false);
    ThreeColoringResult r0 = threeColoring15n(g0, 1);
    CHECK(r0.trialsPlanned == 1);
    REQUIRE(r0.coloring.has_value());
    CHECK(r0.coloring->empty());
}

TEST_CASE("randomized 3-coloring succeeds on most planted instances") {
    const int n = 14, trials = 50;
    int ok = 0;
    for (int g = 0; g < trials; ++g) {
        Multigraph graph = testsupport::plantedThreeColorable(n, 0.5, 7000 + std::uint64_t(g));
        ThreeColoringResult res = threeColoring15n(graph, 9000 + std::uint64_t(g));
        if (res.coloring) {
            ++ok;
            CHECK(testsupport::properColoring(graph, *res.coloring));
        }
    }
    CHECK(ok * 100 >= trials * 55);
}

TEST_CASE("maximal independent sets: examples and exhaustive agreement") {
    Multigraph e3 = Multigraph::empty(3, false);
    CHECK(enumerateMaximalIndependentSets(e3) == std::vector<Mask>{0b111});
    CHECK(enumerateMaximalIndependentSets(complete(3)) == std::vector<Mask>{1, 2, 4});

    for (int it = 0; it < 100; ++it) {
        const int n = 1 + int(Rng(std::uint64_t(it)).below(9));
        Multigraph g = genRandomGraph(n, 0.4, false, 60 + std::uint64_t(it));
        auto fast = enumerateMaximalIndependentSets(g);
        auto adj = std::vector<Mask>(std::size_t(n), 0);
        for (int v = 0; v < n; ++v) adj[std::size_t(v)] = g.neighborsMask(v);
        auto indep = [&](Mask x) {
            for (int v = 0; v < n; ++v)
                if (hasBit(x, v) && (adj[std::size_t(v)] & x) != 0) return false;
            return true;
        };
        auto slow = std::vector<Mask>();
        for (Mask m = 0; m < (Mask(1) << n); ++m) {
            if (!indep(m)) continue;
            bool maximal = true;
            for (int v = 0; v < n && maximal; ++v)
                if (!hasBit(m, v) && indep(m | (Mask(1) << v))) maximal = false;
            if (maximal) slow.push_back(m);
        }
        CHECK(fast == slow);
    }
}

TEST_CASE("cover-based coloring: classics and oracle agreement") {
    Multigraph c5 = cycle(5);
    CHECK(kColoringViaCover(c5, 3, false).colorable);
    CHECK(!kColoringViaCover(c5, 2, false).colorable);
    CHECK(kColoringViaCover(c5, 3, true).colorable);
    CHECK(!kColoringViaCover(c5, 2, true).colorable);
    CHECK(kColoringViaCover(petersen(), 3, true).colorable);
    CHECK(!kColoringViaCover(petersen(), 2, true).colorable);

    oracles::OracleBudget budget;
    for (int it = 0; it < 40; ++it) {
        Multigraph g = genRandomGraph(10, 0.4, false, 500 + std::uint64_t(it));
        for (int k = 2; k <= 4; ++k) {
            CoverColoringResult full = kColoringViaCover(g, k, false);
            CoverColoringResult trim = kColoringViaCover(g, k, true);
            const bool truth = oracles::coloringOracle(g, k, budget);
            CHECK(full.colorable == truth);
            CHECK(trim.colorable == truth);
            CHECK(full.coverCount == trim.coverCount);
            CHECK(trim.touchedMasks == trim.upClosureSize * std::uint64_t(g.n + 2));
            CHECK(trim.upClosureSize <= (std::uint64_t(1) << g.n));
        }
    }
}

TEST_CASE("trimmed coloring work is bounded by the dominating-set count") {
    for (int d : {2, 3}) {
        for (int it = 0; it < 10; ++it) {
            const int n = (d == 2) ? 9 : 12;
            Multigraph g = genRandomRegular(n, d, 77 + std::uint64_t(it) * 13 + std::uint64_t(d));
            CoverColoringResult trim = kColoringViaCover(g, 3, true);
            auto adj = std::vector<Mask>(std::size_t(n), 0);
            for (int v = 0; v < n; ++v) adj[std::size_t(v)] = g.neighborsMask(v);
            std::uint64_t domCount = 0;
            for (Mask m = 0; m < (Mask(1) << n); ++m) {
                bool dom = true;
                for (int v = 0; v < n && dom; ++v)
                    if (!hasBit(m, v) && (adj[std::size_t(v)] & m) == 0) dom = false;
                if (dom) ++domCount;
            }
            CHECK(trim.upClosureSize <= domCount);
            // Regular-graph dominating sets obey (2^{d+1} - 1)^{n/(d+1)}.
            const double bound = std::pow(std::pow(2.0, d + 1) - 1.0, double(n) / (d + 1));
            CHECK(double(domCount) <= bound + 1e-6);
        }
    }
}

TEST_CASE("container-guided coloring: examples, validity check, soundness") {
    Multigraph c5 = cycle(5);
    RegularColoringResult r = regularColoringWithContainers(c5, 3, {fullMask(5)}, 0.0);
    CHECK(r.colorable);
    CHECK(r.maxContainerSize == 5);
    CHECK(r.tuplesTried == 1);

    Multigraph tri = complete(3);
    CHECK(regularColoringWithContainers(tri, 3, enumerateMaximalIndependentSets(tri), 0.1).colorable);
    CHECK(!regularColoringWithContainers(c5, 2, {fullMask(5)}, 0.0).colorable);
    // Containers that cannot absorb every independent set are rejected.
    CHECK_THROWS_AS(regularColoringWithContainers(c5, 3, {Mask(0b00011)}, 0.0), InvalidArgument);

    oracles::OracleBudget budget;
    for (int it = 0; it < 30; ++it) {
        Multigraph g = genRandomRegular(8, 3, 900 + std::uint64_t(it));
        auto mis = enumerateMaximalIndependentSets(g);
        for (int k = 2; k <= 3; ++k) {
            const bool truth = oracles::coloringOracle(g, k, budget);
            RegularColoringResult rr = regularColoringWithContainers(g, k, mis, 0.1);
            if (rr.colorable) CHECK(truth);
            // With threshold zero and maximal independent sets as containers
            // the search is complete.
            CHECK(regularColoringWithContainers(g, k, mis, 0.0).colorable == truth);
        }
    }
}
