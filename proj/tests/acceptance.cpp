// Acceptance suite: one pass/fail line per shipped guarantee, exercising the
// library end to end on seeded corpora. Exit status is the number of failed
// criteria, so any nonzero exit marks the build as not acceptable.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <exactexpo/algebra.hpp>
#include <exactexpo/bench.hpp>
#include <exactexpo/coloring.hpp>
#include <exactexpo/covering.hpp>
#include <exactexpo/hamiltonicity.hpp>
#include <exactexpo/instances.hpp>
#include <exactexpo/oracles.hpp>
#include <exactexpo/satkit.hpp>
#include <exactexpo/sparsifier.hpp>
#include <exactexpo/subsetsum.hpp>

#include "support.hpp"

using namespace exactexpo;

namespace {

struct Criterion {
    std::string label;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;

    void expect(bool ok) {
        ++checks;
        if (!ok) ++violations;
    }
    bool pass() const { return checks > 0 && violations == 0; }
};

std::uint64_t pow3(int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

BigInt maskWeight(const WeightedInstance& inst, Mask m) {
    BigInt total = 0;
    for (int i = 0; i < inst.n; ++i)
        if (hasBit(m, i)) total += inst.w[std::size_t(i)];
    return total;
}

// ---------------------------------------------------------------------------
// 1. Deterministic solvers agree with independent reference oracles on at
//    least 300 seeded instances each; zero mismatches tolerated.
// ---------------------------------------------------------------------------
Criterion oracleEquivalence() {
    Criterion c{"deterministic solvers match reference oracles (300+ seeded instances each)"};

    // Clause-branching and restriction-enumeration SAT solvers.
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(101, std::uint64_t(i)));
        const int n = 4 + int(rng.below(7));
        const int m = n + int(rng.below(std::uint64_t(4 * n)));
        const CnfFormula phi = genRandomKCnf(n, m, 3, rng.next());
        const bool want = oracles::satOracle(phi);
        c.expect(satkit::monienSpeckenmeyer(phi).sat == want);
        c.expect(satkit::switchSat(phi, rng.next()).sat == want);
    }

    // Full-lattice and trimmed set-cover counting.
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(102, std::uint64_t(i)));
        SetSystem S;
        S.n = 4 + int(rng.below(9));
        const int nSets = 3 + int(rng.below(8));
        for (int j = 0; j < nSets; ++j) S.sets.push_back(rng.below(Mask(1) << S.n));
        const int k = 1 + int(rng.below(3));
        const BigInt want = oracles::setCoverOracle(S, k);
        const auto full = covering::setCover2n(S, k, Exec::Serial);
        c.expect(full.count == want);
        c.expect(full.covered == (want > 0));
        const auto trimmed = covering::setCoverTrimmed(S, k);
        c.expect(trimmed.count == want);
        c.expect(trimmed.covered == (want > 0));
    }

    // Middle-layer crossing versus explicit split-tuple enumeration.
    int made = 0;
    for (std::uint64_t attempt = 0; made < 300; ++attempt) {
        Rng rng(deriveSeed(103, attempt));
        const int n = 4 + int(rng.below(3));
        const int k = 1 + int(rng.below(3));
        auto gens = std::vector<Mask>();
        for (int i = 0; i < 3; ++i) gens.push_back(rng.below(Mask(1) << n));
        const auto downS = algebra::downClosure(gens);
        double tuples = 1;
        for (int j = 0; j < k; ++j) tuples *= double(downS.size());
        if (tuples > 1.5e6) continue;
        auto half = std::vector<Mask>();
        for (Mask m = 0; m < (Mask(1) << n); ++m)
            if (popcount(m) >= (n + 1) / 2 && rng.coin()) half.push_back(m);
        if (half.empty()) continue;
        ++made;

        std::unordered_set<Mask> inS(downS.begin(), downS.end());
        const covering::MemberOracle oracle = [&](Mask x) { return inS.count(x) > 0; };
        const bool got = covering::crossMiddleLayer(oracle, half, n, k).covered;

        bool want = false;
        auto idx = std::vector<std::size_t>(std::size_t(k), 0);
        auto tup = std::vector<Mask>(std::size_t(k), 0);
        for (;;) {
            for (int j = 0; j < k; ++j) tup[std::size_t(j)] = downS[idx[std::size_t(j)]];
            for (int a = 0; a <= k && !want; ++a) {
                Mask pre = 0, suf = 0;
                for (int j = 0; j < a; ++j) pre |= tup[std::size_t(j)];
                for (int j = a; j < k; ++j) suf |= tup[std::size_t(j)];
                for (Mask f : half)
                    if ((pre & f) == f && (suf & (fullMask(n) & ~f)) == (fullMask(n) & ~f)) {
                        want = true;
                        break;
                    }
            }
            if (want) break;
            int d = k - 1;
            while (d >= 0 && idx[std::size_t(d)] + 1 == downS.size()) {
                idx[std::size_t(d)] = 0;
                --d;
            }
            if (d < 0) break;
            ++idx[std::size_t(d)];
        }
        c.expect(got == want);
    }

    // Tight bin packing (total weight = bins * capacity, even bin count,
    // where the decider is complete) and the distinct-sums DP.
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(104, std::uint64_t(i)));
        const int bins = 2 * (1 + int(rng.below(2)));
        const int capacity = 3 + int(rng.below(6));
        const auto inst =
            testsupport::tightBinPacking(bins, capacity, 3, rng.next());
        c.expect(covering::binPackingTight(inst).packable == oracles::binPackingOracle(inst));
    }
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(105, std::uint64_t(i)));
        WeightedInstance inst;
        inst.isBinPacking = true;
        inst.n = 4 + int(rng.below(7));
        inst.bins = 2 + int(rng.below(3));
        inst.capacity = 4 + int(rng.below(7));
        for (int j = 0; j < inst.n; ++j)
            inst.w.push_back(BigInt(1 + rng.below(std::uint64_t(inst.capacity))));
        c.expect(covering::binPackingDistinctSumsDP(inst).packable ==
                 oracles::binPackingOracle(inst));
    }

    // Coloring decided through independent-set cover counting.
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(106, std::uint64_t(i)));
        const int n = 3 + int(rng.below(7));
        const Multigraph g =
            genRandomGraph(n, 0.2 + 0.6 * rng.uniform01(), false, rng.next());
        const int k = 2 + int(rng.below(3));
        const auto r = coloring::kColoringViaCover(g, k, i % 2 == 1, Exec::Serial);
        c.expect(r.colorable == oracles::coloringOracle(g, k));
    }

    // Determinant-based out-branching counts versus arc-subset enumeration.
    made = 0;
    for (std::uint64_t attempt = 0; made < 300; ++attempt) {
        Rng rng(deriveSeed(107, attempt));
        const int n = 2 + int(rng.below(4));
        const Multigraph g = testsupport::randomDigraph(rng, n, 2);
        if (g.edgeCount() > 20) continue;
        ++made;
        const int root = int(rng.below(std::uint64_t(n)));
        c.expect(hamiltonicity::outBranchingCount(g, root) ==
                 testsupport::bruteOutBranchings(g, root));
    }

    // Anchored-arc Hamiltonian cycle counts versus permutation enumeration.
    made = 0;
    for (std::uint64_t attempt = 0; made < 300; ++attempt) {
        Rng rng(deriveSeed(108, attempt));
        const int n = 3 + int(rng.below(5));
        const Multigraph g = testsupport::randomDigraph(rng, n, 2);
        int tail = -1, head = -1;
        for (int u = 0; u < n && tail < 0; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && g.adj[std::size_t(u)][std::size_t(v)] == 1) {
                    tail = u;
                    head = v;
                    break;
                }
        if (tail < 0) continue;
        ++made;
        const auto r = hamiltonicity::hamCyclesThroughArcExact(g, tail, head);
        c.expect(r.count == testsupport::bruteCyclesThroughArc(g, tail, head));
        c.expect(r.subsetsEnumerated == (std::uint64_t(1) << (n - 1)));
    }

    // Meet-in-the-middle subset sum.
    for (int i = 0; i < 300; ++i) {
        Rng rng(deriveSeed(109, std::uint64_t(i)));
        WeightedInstance inst;
        inst.n = 4 + int(rng.below(9));
        BigInt sum = 0;
        for (int j = 0; j < inst.n; ++j) {
            inst.w.push_back(BigInt(1 + rng.below(40)));
            sum += inst.w.back();
        }
        inst.target = rng.coin() ? maskWeight(inst, rng.below(Mask(1) << inst.n))
                                 : BigInt(rng.below(std::uint64_t(sum) + 1));
        const auto r = subsetsum::meetInMiddle(inst);
        c.expect(r.witness.has_value() == oracles::subsetSumOracle(inst));
        if (r.witness) c.expect(maskWeight(inst, *r.witness) == inst.target);
    }

    return c;
}

// ---------------------------------------------------------------------------
// 2. Single-call success of the randomized 3-coloring sampler on planted
//    3-colorable graphs at n=14 stays at or above 0.55.
// ---------------------------------------------------------------------------
Criterion coloringSuccessRate() {
    Criterion c{"randomized 3-coloring succeeds on >=55% of planted n=14 graphs"};
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const Multigraph g =
            testsupport::plantedThreeColorable(14, 0.5, deriveSeed(201, std::uint64_t(i)));
        const auto r = coloring::threeColoring15n(g, deriveSeed(202, std::uint64_t(i)));
        if (r.coloring) {
            c.expect(testsupport::properColoring(g, *r.coloring));
            ++ok;
        }
    }
    c.expect(ok >= 55);
    return c;
}

// ---------------------------------------------------------------------------
// 3. Single-call success of the ball-covering SAT sampler on planted
//    satisfiable 3-CNFs at n=12 stays at or above 0.40, and the planned trial
//    count is exactly ceil(2^n / C(n, d)) on every run.
// ---------------------------------------------------------------------------
Criterion schoeningSuccessRate() {
    Criterion c{"ball-covering SAT sampler: >=40% planted hits, exact trial plans"};
    const int n = 12;
    const int d = (n + 3) / 4;  // radius for 3-CNF: ceil(n / (k+1))
    const std::uint64_t planned =
        ((std::uint64_t(1) << n) + binomial(n, d) - 1) / binomial(n, d);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const CnfFormula phi =
            testsupport::plantedSat3Cnf(n, 48, deriveSeed(301, std::uint64_t(i)));
        const auto r = satkit::schoening(phi, deriveSeed(302, std::uint64_t(i)));
        c.expect(r.trialsPlanned == planned);
        c.expect(r.radius == d);
        if (r.sat) ++ok;
    }
    c.expect(ok >= 40);
    return c;
}

// ---------------------------------------------------------------------------
// 4. Counter identities hold on every row of a full benchmark sweep.
// ---------------------------------------------------------------------------
Criterion benchCounterIdentities() {
    Criterion c{"benchmark sweep counters satisfy their closed-form identities"};
    bench::BenchSpec spec;
    spec.algorithms = bench::benchAlgorithms();
    spec.nMin = 4;
    spec.nMax = 12;
    spec.nStep = 2;
    spec.instancesPerSize = 3;
    spec.seed = 1234;
    const auto rows = bench::runSweep(spec);
    c.expect(!rows.empty());

    const auto leafTable = testsupport::branchingLeafBound(12, 3);
    for (const auto& row : rows) {
        if (row.budgetExceeded) continue;
        const int n = row.n;
        if (row.algorithm == "schoening") {
            const int d = (n + 3) / 4;
            const std::uint64_t planned =
                ((std::uint64_t(1) << n) + binomial(n, d) - 1) / binomial(n, d);
            c.expect(row.trials.has_value() && *row.trials == planned);
        } else if (row.algorithm == "local") {
            const int d = (n + 3) / 4;
            c.expect(row.leafCalls.has_value() && *row.leafCalls <= pow3(d));
        } else if (row.algorithm == "monien") {
            c.expect(row.leafCalls.has_value() &&
                     *row.leafCalls <= leafTable[std::size_t(n)]);
        } else if (row.algorithm == "mitm") {
            c.expect(row.listLeft.has_value() &&
                     *row.listLeft == (std::uint64_t(1) << ((n + 1) / 2)));
            c.expect(row.listRight.has_value() &&
                     *row.listRight == (std::uint64_t(1) << (n / 2)));
        } else if (row.algorithm == "ham2n") {
            c.expect(row.cutLoops.has_value() &&
                     *row.cutLoops == (std::uint64_t(1) << (n - 1)));
        } else if (row.algorithm == "narrowcut") {
            c.expect(row.cutLoops.has_value() && *row.cutLoops == pow3(n / 2 - 1));
        } else if (row.algorithm == "trimmedzeta") {
            c.expect(row.masksTouched.has_value() && row.closureSize.has_value() &&
                     *row.masksTouched == *row.closureSize);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 5. Algebraic identities: transform round trips, Kronecker evaluation,
//    matchings-connectivity factorization, and Laplacian counting.
// ---------------------------------------------------------------------------
Criterion algebraicIdentities() {
    Criterion c{"transform, factorization, and Laplacian identities hold bit-exactly"};
    using algebra::Int64Ring;
    Int64Ring R;

    // Zeta and Moebius invert each other on the full 16-variable lattice.
    {
        const int n = 16;
        Rng rng(501);
        auto v = std::vector<Int64Ring::Elem>(std::size_t(1) << n);
        for (auto& x : v) x = Int64Ring::Elem(rng.below(100)) - 50;
        const auto orig = v;
        algebra::zetaTransform(R, v, n, Exec::Serial);
        c.expect(v != orig);
        algebra::moebiusTransform(R, v, n, Exec::Serial);
        c.expect(v == orig);
    }

    // Yates evaluation equals the naive Kronecker-power matrix product.
    for (const auto kind : {algebra::SmallMatrixKind::Zeta, algebra::SmallMatrixKind::Moebius,
                            algebra::SmallMatrixKind::NarrowCutQ}) {
        const auto base = algebra::smallMatrix(R, kind);
        const int levels = 6;
        std::size_t dim = 1;
        for (int i = 0; i < levels; ++i) dim *= std::size_t(base.rows);
        Rng rng(502);
        auto v = std::vector<Int64Ring::Elem>(dim);
        for (auto& x : v) x = Int64Ring::Elem(rng.below(20)) - 10;
        const auto got = algebra::yatesKroneckerMatVec(R, base, levels, v, Exec::Serial);

        auto want = std::vector<Int64Ring::Elem>(dim, 0);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t col = 0; col < dim; ++col) {
                Int64Ring::Elem entry = 1;
                std::size_t rr = r, cc = col;
                for (int l = 0; l < levels; ++l) {
                    entry *= base.at(int(rr % std::size_t(base.rows)),
                                     int(cc % std::size_t(base.rows)));
                    rr /= std::size_t(base.rows);
                    cc /= std::size_t(base.rows);
                }
                want[r] += entry * v[col];
            }
        c.expect(got == want);
    }

    // Matchings-connectivity factorization over GF(2), and the 4-vertex
    // connectivity matrix is all-ones minus identity.
    for (const int t : {4, 6, 8})
        c.expect(hamiltonicity::verifyFactorizationChar2(t).equal);
    {
        const auto data = hamiltonicity::buildMatchingsConnectivity(4);
        bool jMinusI = data.h.rows == 3 && data.h.cols == 3;
        for (int r = 0; r < 3 && jMinusI; ++r)
            for (int col = 0; col < 3; ++col)
                if (int(data.h.at(r, col)) != (r == col ? 0 : 1)) jMinusI = false;
        c.expect(jMinusI);
    }

    // Incidence factorization of the Laplacian on random directed multigraphs.
    for (int i = 0; i < 25; ++i) {
        Rng rng(deriveSeed(503, std::uint64_t(i)));
        const int n = 2 + int(rng.below(7));
        const Multigraph g = testsupport::randomDigraph(rng, n, 2);
        const auto [heads, tails] = hamiltonicity::buildIncidenceMatrices(g);
        const auto lap = hamiltonicity::buildLaplacian(g, 0).laplacian;
        bool equal = true;
        for (int r = 0; r < n && equal; ++r)
            for (int col = 0; col < n; ++col) {
                BigInt cell = 0;
                for (int e = 0; e < heads.cols; ++e)
                    cell += (heads.at(r, e) - tails.at(r, e)) * heads.at(col, e);
                if (cell != lap.at(r, col)) {
                    equal = false;
                    break;
                }
            }
        c.expect(equal);
    }

    // Root-deleted Laplacian determinant counts out-branchings exactly,
    // cross-checked against exhaustive arc-subset enumeration.
    int made = 0;
    for (std::uint64_t attempt = 0; made < 30; ++attempt) {
        Rng rng(deriveSeed(504, attempt));
        const int n = 2 + int(rng.below(4));
        const Multigraph g = testsupport::randomDigraph(rng, n, 1);
        if (g.edgeCount() > 20) continue;
        ++made;
        const int root = int(rng.below(std::uint64_t(n)));
        const auto data = hamiltonicity::buildLaplacian(g, root);
        auto minor = algebra::Matrix<BigInt>(n - 1, n - 1);
        for (int r = 0, rr = 0; r < n; ++r) {
            if (r == data.deleted) continue;
            for (int col = 0, cc = 0; col < n; ++col) {
                if (col == data.deleted) continue;
                minor.at(rr, cc) = data.laplacian.at(r, col);
                ++cc;
            }
            ++rr;
        }
        c.expect(algebra::determinantExactInt(minor) ==
                 testsupport::bruteOutBranchings(g, root));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. Modular Hamiltonian cycle counting matches brute force for p in {2,3,5}
//    on 100 digraphs and 5 seeds, with and without the zero-row skip.
// ---------------------------------------------------------------------------
Criterion modularCounting() {
    Criterion c{"modular cycle counts match brute force for p in {2,3,5}, skip on/off"};
    for (int i = 0; i < 100; ++i) {
        Rng rng(deriveSeed(601, std::uint64_t(i)));
        const int n = 3 + i % 6;
        const Multigraph g = testsupport::randomDigraph(rng, n, 2);
        const BigInt exact = oracles::hamCountOracle(g);
        for (const std::uint64_t p : {2ull, 3ull, 5ull}) {
            const std::uint64_t want = std::uint64_t(exact % p);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const auto on = hamiltonicity::countHamCyclesModP(g, p, seed, true);
                const auto off = hamiltonicity::countHamCyclesModP(g, p, seed, false);
                c.expect(on.residue == want);
                c.expect(off.residue == want);
                c.expect(off.determinantsSkipped == 0);
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Sparsifier grid: transversal equivalence exhaustively verified, with the
//    frequency bound d = (4 k^2 lg(1/eps)/eps)^(k-1) and the output count
//    bound 2^(2 eps |U|) holding with zero violations.
// ---------------------------------------------------------------------------
Criterion sparsifierGrid() {
    Criterion c{"sparsifier preserves transversals within frequency and count bounds"};
    for (const int k : {2, 3}) {
        for (const double eps : {0.2, 0.4}) {
            const auto cfg = sparsifier::SparsifierConfig::make(k, eps);
            const double freqBound =
                std::pow(4.0 * k * k * std::log2(1.0 / eps) / eps, k - 1);
            for (const int u : {8, 10, 12}) {
                const double countBound = std::pow(2.0, 2.0 * eps * u);
                for (int i = 0; i < 50; ++i) {
                    Rng rng(deriveSeed(std::uint64_t(700 + 10 * k + u),
                                       std::uint64_t(i) * 2 + (eps > 0.3 ? 1 : 0)));
                    SetSystem F;
                    F.n = u;
                    const int count = 6 + int(rng.below(12));
                    for (int j = 0; j < count; ++j) {
                        const int size = 1 + int(rng.below(std::uint64_t(k)));
                        Mask m = 0;
                        for (const int e : rng.sampleSubset(u, size)) m |= Mask(1) << e;
                        F.sets.push_back(m);
                    }
                    const auto outputs = sparsifier::reduce(F, cfg);
                    const auto report = sparsifier::verifySparsifierOutput(F, outputs, cfg);
                    c.expect(report.equivalenceHolds);
                    c.expect(report.frequencyOk);
                    c.expect(report.countOk);
                    c.expect(double(report.maxFrequency) <= freqBound);
                    c.expect(double(outputs.size()) <= countBound);
                }
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 8. Representation method finds self-validating witnesses on >=90% of
//    planted balanced instances at n=16 and n=24 within 20 repetitions.
// ---------------------------------------------------------------------------
Criterion representationRecovery() {
    Criterion c{"representation method recovers planted witnesses at n=16 and n=24"};
    for (const int n : {16, 24}) {
        int found = 0;
        for (int i = 0; i < 20; ++i) {
            const auto planted =
                genPlantedSubsetSum(n, deriveSeed(std::uint64_t(800 + n), std::uint64_t(i)));
            const auto r = subsetsum::representationMethod(
                planted.instance, deriveSeed(std::uint64_t(801 + n), std::uint64_t(i)), 20);
            if (r.witness) {
                c.expect(maskWeight(planted.instance, *r.witness) == planted.instance.target);
                ++found;
            }
        }
        c.expect(found >= 18);
    }
    return c;
}

// ---------------------------------------------------------------------------
// 9. One-sidedness: randomized deciders never report a positive on an
//    instance whose reference oracle says NO.
// ---------------------------------------------------------------------------
Criterion oneSidedness() {
    Criterion c{"randomized deciders never accept a NO instance"};

    // Unsatisfiable formulas.
    int made = 0;
    for (std::uint64_t attempt = 0; made < 60; ++attempt) {
        Rng rng(deriveSeed(901, attempt));
        const int n = 8 + int(rng.below(2));
        const CnfFormula phi = genRandomKCnf(n, 9 * n, 3, rng.next());
        if (oracles::satOracle(phi)) continue;
        ++made;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            c.expect(!satkit::schoening(phi, seed).sat);
            c.expect(!satkit::switchSat(phi, seed).sat);
        }
    }

    // Graphs without a perfect matching.
    made = 0;
    for (std::uint64_t attempt = 0; made < 60; ++attempt) {
        Rng rng(deriveSeed(902, attempt));
        const int n = 4 + int(rng.below(5));
        const Multigraph g = genRandomGraph(n, 0.35, false, rng.next());
        if (oracles::matchingOracle(g)) continue;
        ++made;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            c.expect(!hamiltonicity::perfectMatchingTest(g, seed).matched);
    }

    // Non-Hamiltonian graphs, for both cut-sum deciders.
    const auto fam4 = hamiltonicity::findNarrowCutFamilyExhaustive(4).family;
    const auto fam6 = hamiltonicity::findNarrowCutFamilyPaired(6).family;
    made = 0;
    for (std::uint64_t attempt = 0; made < 60; ++attempt) {
        Rng rng(deriveSeed(903, attempt));
        const int n = 4 + 2 * int(rng.below(3));
        const Multigraph g = genRandomGraph(n, 0.3, false, rng.next());
        if (oracles::hamCountOracle(g) != 0) continue;
        ++made;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            c.expect(!hamiltonicity::undirectedHam2n(g, seed).hamiltonian);
            if (n == 4 && fam4)
                c.expect(!hamiltonicity::narrowCutHamiltonicity(g, *fam4, seed).hamiltonian);
            if (n == 6 && fam6)
                c.expect(!hamiltonicity::narrowCutHamiltonicity(g, *fam6, seed).hamiltonian);
        }
    }

    // Uncoverable set systems in the large-k regime (element 0 never covered).
    made = 0;
    for (std::uint64_t attempt = 0; made < 60; ++attempt) {
        Rng rng(deriveSeed(904, attempt));
        SetSystem S;
        S.n = 12;
        const int nSets = 4 + int(rng.below(6));
        for (int j = 0; j < nSets; ++j)
            S.sets.push_back(rng.below(Mask(1) << S.n) & ~Mask(1));
        ++made;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            c.expect(!covering::setCoverLargeK(S, 4, 0.25, seed).covered);
    }

    // Unreachable subset-sum targets.
    made = 0;
    for (std::uint64_t attempt = 0; made < 40; ++attempt) {
        Rng rng(deriveSeed(905, attempt));
        WeightedInstance inst;
        inst.n = 10 + int(rng.below(3));
        BigInt sum = 0;
        for (int j = 0; j < inst.n; ++j) {
            inst.w.push_back(BigInt(1 + rng.below(60)));
            sum += inst.w.back();
        }
        inst.target = BigInt(rng.below(std::uint64_t(sum)));
        if (oracles::subsetSumOracle(inst)) continue;
        ++made;
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            c.expect(!subsetsum::representationMethod(inst, seed, 10).witness.has_value());
    }

    return c;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    auto results = std::vector<Criterion>();
    results.push_back(oracleEquivalence());
    results.push_back(coloringSuccessRate());
    results.push_back(schoeningSuccessRate());
    results.push_back(benchCounterIdentities());
    results.push_back(algebraicIdentities());
    results.push_back(modularCounting());
    results.push_back(sparsifierGrid());
    results.push_back(representationRecovery());
    results.push_back(oneSidedness());

    int failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.pass()) {
            std::printf("[PASS] %zu. %s (%llu checks)\n", i + 1, r.label.c_str(),
                        (unsigned long long)r.checks);
        } else {
            ++failures;
            std::printf("[FAIL] %zu. %s (%llu of %llu checks failed)\n", i + 1,
                        r.label.c_str(), (unsigned long long)r.violations,
                        (unsigned long long)r.checks);
        }
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    std::printf("%d of %zu criteria failed (%lld ms)\n", failures, results.size(),
                (long long)elapsed);
    return failures;
}
