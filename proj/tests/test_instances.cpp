// Text formats, instance containers, and seeded generators.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "exactexpo/instances.hpp"
#include "support.hpp"

using namespace exactexpo;

TEST_CASE("cnf parsing accepts comments and matches the rendered form") {
    const std::string text =
        "# a small formula\n"
        "p cnf 3 2\n"
        "1 -2 0\n"
        "  # indented comment\n"
        "-1 3 0\n";
    CnfFormula f = parseCnf(text);
    CHECK(f.numVars == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == std::vector<int>{1, -2});
    CHECK(f.clauses[1] == std::vector<int>{-1, 3});
    CHECK(f.maxWidth() == 2);
    CHECK(parseCnf(renderCnf(f)) == f);
}

TEST_CASE("cnf clauses may span lines and stop at the 0 terminator") {
    CnfFormula f = parseCnf("p cnf 4 1\n1 2\n3 0\n");
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == std::vector<int>{1, 2, 3});
}

TEST_CASE("cnf parse errors carry line numbers") {
    CHECK_THROWS_AS(parseCnf(""), ParseError);
    CHECK_THROWS_AS(parseCnf("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parseCnf("1 0\n"), ParseError);              // clause before header
    CHECK_THROWS_AS(parseCnf("p cnf 2 1\n1 1 0\n"), ParseError); // repeated variable
    CHECK_THROWS_AS(parseCnf("p cnf 2 1\n3 0\n"), ParseError);   // out of range
    CHECK_THROWS_AS(parseCnf("p cnf 2 1\n1 2\n"), ParseError);   // missing terminator
    CHECK_THROWS_AS(parseCnf("p cnf 2 2\n1 0\n"), ParseError);   // clause count mismatch
    try {
        parseCnf("p cnf 2 1\n# pad\n1 1 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.lineNumber == 3);
    }
}

TEST_CASE("graph parsing handles multiplicities and 1-based vertices") {
    Multigraph g = parseGraph("3 2\n1 2\n2 3\n", false);
    CHECK(g.n == 3);
    CHECK(g.edgeCount() == 2);
    CHECK(g.adj[0][1] == 1);
    CHECK(g.adj[1][0] == 1);
    CHECK(g.neighborsMask(1) == 0b101);

    Multigraph d = parseGraph("2 1\n1 2 5\n", true);
    CHECK(d.adj[0][1] == 5);
    CHECK(d.adj[1][0] == 0);
    CHECK(d.edgeCount() == 5);
    CHECK(parseGraph(renderGraph(d), true) == d);
}

TEST_CASE("graph parse errors") {
    CHECK_THROWS_AS(parseGraph("", false), ParseError);
    CHECK_THROWS_AS(parseGraph("3\n", false), ParseError);           // bad header
    CHECK_THROWS_AS(parseGraph("3 2\n1 2\n", false), ParseError);    // missing edge
    CHECK_THROWS_AS(parseGraph("3 1\n1 4\n", false), ParseError);    // vertex range
    CHECK_THROWS_AS(parseGraph("3 1\n2 2\n", false), ParseError);    // loop
    CHECK_THROWS_AS(parseGraph("3 1\n1 2 0\n", false), ParseError);  // zero multiplicity
    CHECK_THROWS_AS(parseGraph("3 2\n1 2\n2 1\n", false), ParseError); // dup undirected
    CHECK_THROWS_AS(parseGraph("3 1\n1 2\n2 3\n", false), ParseError); // trailing edge
}

TEST_CASE("multigraph container rules") {
    Multigraph g = Multigraph::empty(3, false);
    g.addEdge(0, 1);
    CHECK_THROWS_AS(g.addEdge(1, 1), InvalidArgument);
    CHECK_THROWS_AS(g.addEdge(1, 0), InvalidArgument);  // duplicate undirected
    CHECK_THROWS_AS(g.addEdge(0, 3), InvalidArgument);
    CHECK_THROWS_AS(g.addEdge(1, 2, 2), InvalidArgument);  // undirected multiplicity

    Multigraph d = Multigraph::empty(2, true);
    d.addEdge(0, 1, 2);
    d.addEdge(0, 1);
    CHECK(d.adj[0][1] == 3);  // directed arcs accumulate
    CHECK(d.edgeCount() == 3);

    Multigraph big = Multigraph::empty(65, false);
    CHECK_THROWS_AS(big.neighborsMask(0), InvalidArgument);
}

TEST_CASE("set system parsing and rendering") {
    SetSystem s = parseSetSystem("4\n1 2\n3 4\n2 3\n");
    CHECK(s.n == 4);
    REQUIRE(s.sets.size() == 3);
    CHECK(s.sets[0] == 0b0011);
    CHECK(s.sets[1] == 0b1100);
    CHECK(s.multiplicity(0) == 1);
    CHECK(parseSetSystem(renderSetSystem(s)) == s);

    // A blank body line is the empty set.
    SetSystem withEmpty = parseSetSystem("3\n1 2\n\n");
    REQUIRE(withEmpty.sets.size() == 2);
    CHECK(withEmpty.sets[1] == 0);

    CHECK_THROWS_AS(parseSetSystem(""), ParseError);
    CHECK_THROWS_AS(parseSetSystem("2 3\n"), ParseError);       // header wants one field
    CHECK_THROWS_AS(parseSetSystem("65\n"), ParseError);        // universe too big
    CHECK_THROWS_AS(parseSetSystem("3\n1 4\n"), ParseError);    // element range
    CHECK_THROWS_AS(parseSetSystem("3\n1 1\n"), ParseError);    // repeated element
    CHECK_THROWS_AS(parseSetSystem("3\n1 2\n2 1\n"), ParseError); // duplicate set
}

TEST_CASE("weighted header dispatch: two fields subset sum, three bin packing") {
    WeightedInstance ss = parseWeighted("3 6\n1 2\n3\n");
    CHECK(!ss.isBinPacking);
    CHECK(ss.n == 3);
    CHECK(ss.target == 6);
    CHECK(ss.weightOf(0b111) == 6);
    CHECK(ss.weightOf(0b010) == 2);
    CHECK(parseWeighted(renderWeighted(ss)) == ss);

    WeightedInstance bp = parseWeighted("4 2 2\n1 1 1 1\n");
    CHECK(bp.isBinPacking);
    CHECK(bp.capacity == 2);
    CHECK(bp.bins == 2);
    CHECK(parseWeighted(renderWeighted(bp)) == bp);

    CHECK_THROWS_AS(parseWeighted(""), ParseError);
    CHECK_THROWS_AS(parseWeighted("3\n1 2 3\n"), ParseError);   // one-field header
    CHECK_THROWS_AS(parseWeighted("2 5\n1\n"), ParseError);     // weight count
    CHECK_THROWS_AS(parseWeighted("1 -4\n1\n"), ParseError);    // negative target
    CHECK_THROWS_AS(parseWeighted("1 5\n-1\n"), ParseError);    // negative weight
}

TEST_CASE("random k-cnf generator: shape and determinism") {
    CnfFormula f = genRandomKCnf(10, 25, 3, 7);
    CHECK(f.numVars == 10);
    CHECK(f.clauses.size() == 25);
    for (const auto& c : f.clauses) {
        CHECK(c.size() == 3);
        std::set<int> vars;
        for (int lit : c) {
            CHECK(lit != 0);
            CHECK(std::abs(lit) <= 10);
            vars.insert(std::abs(lit));
        }
        CHECK(vars.size() == 3);  // distinct variables within a clause
    }
    CHECK(genRandomKCnf(10, 25, 3, 7) == f);
    CHECK(genRandomKCnf(10, 25, 3, 8) != f);
    CHECK_THROWS_AS(genRandomKCnf(2, 5, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(genRandomKCnf(5, -1, 3, 1), InvalidArgument);
}

TEST_CASE("random graph generator: density extremes and determinism") {
    Multigraph none = genRandomGraph(6, 0.0, false, 3);
    CHECK(none.edgeCount() == 0);
    Multigraph full = genRandomGraph(6, 1.0, false, 3);
    CHECK(full.edgeCount() == 15);
    Multigraph fullDir = genRandomGraph(5, 1.0, true, 3);
    CHECK(fullDir.edgeCount() == 20);
    CHECK(genRandomGraph(9, 0.4, false, 11) == genRandomGraph(9, 0.4, false, 11));
    CHECK_THROWS_AS(genRandomGraph(4, 1.5, false, 1), InvalidArgument);
}

TEST_CASE("random regular generator produces d-regular graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Multigraph g = genRandomRegular(8, 3, seed);
        for (int v = 0; v < 8; ++v) {
            std::uint32_t deg = 0;
            for (int w = 0; w < 8; ++w) deg += g.adj[v][w];
            CHECK(deg == 3);
        }
    }
    CHECK_THROWS_AS(genRandomRegular(5, 3, 1), InvalidArgument);  // odd d*n
    CHECK_THROWS_AS(genRandomRegular(4, 4, 1), InvalidArgument);  // d >= n
}

TEST_CASE("planted subset sum: target realized by the first half") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PlantedSubsetSum p = genPlantedSubsetSum(12, seed);
        CHECK(p.instance.n == 12);
        CHECK(p.planted == fullMask(6));
        CHECK(p.instance.weightOf(p.planted) == p.instance.target);
        for (const BigInt& w : p.instance.w) {
            CHECK(w >= 1);
            CHECK(w <= (BigInt(1) << 12));
        }
    }
    CHECK_THROWS_AS(genPlantedSubsetSum(7, 1), InvalidArgument);
    CHECK_THROWS_AS(genPlantedSubsetSum(64, 1), InvalidArgument);
    CHECK_THROWS_AS(genPlantedSubsetSum(0, 1), InvalidArgument);
}

TEST_CASE("support generators keep their promises") {
    // Planted 3-CNF: hidden assignment satisfies the formula by construction,
    // so a full assignment search must find at least one model.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CnfFormula phi = testsupport::plantedSat3Cnf(8, 32, seed);
        CHECK(phi.numVars == 8);
        CHECK(phi.clauses.size() == 32);
        bool sat = false;
        for (Mask a = 0; a <= fullMask(8) && !sat; ++a) {
            bool all = true;
            for (const auto& c : phi.clauses) {
                bool any = false;
                for (int lit : c) any = any || (hasBit(a, std::abs(lit) - 1) == (lit > 0));
                if (!any) { all = false; break; }
            }
            sat = all;
        }
        CHECK(sat);
    }
    // Tight bin packing: weights sum to bins * capacity.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        WeightedInstance inst = testsupport::tightBinPacking(4, 16, 4, seed);
        CHECK(inst.isBinPacking);
        BigInt sum = 0;
        for (const BigInt& w : inst.w) {
            CHECK(w >= 1);
            sum += w;
        }
        CHECK(sum == inst.capacity * inst.bins);
    }
}
