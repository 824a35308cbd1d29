#include "exactexpo/hamiltonicity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <sstream>
#include <utility>

namespace exactexpo::hamiltonicity {

namespace {

using algebra::Gf2kField;
using algebra::Matrix;
using algebra::ZpField;

bool pairSupported(const Multigraph& G, int i, int j, ArcFilter filter) {
    switch (filter) {
        case ArcFilter::AllEdges: return G.adj[i][j] > 0 || G.adj[j][i] > 0;
        case ArcFilter::ForwardArcs: return G.adj[i][j] > 0;
        case ArcFilter::ReverseArcs: return G.adj[j][i] > 0;
    }
    return false;
}

std::uint64_t pow3(int m) {
    std::uint64_t r = 1;
    for (int i = 0; i < m; ++i) r *= 3;
    return r;
}

}  // namespace

// --- Edge-variable matrices --------------------------------------------------

EdgeVariableMatrix buildEdgeVariableMatrix(const Multigraph& G, const Gf2kField& F, Rng& rng,
                                           ArcFilter filter) {
    EdgeVariableMatrix m;
    m.a = Matrix<std::uint64_t>(G.n, G.n);
    for (int i = 0; i < G.n; ++i)
        for (int j = i + 1; j < G.n; ++j)
            if (pairSupported(G, i, j, filter)) {
                std::uint64_t x = rng.next() & F.mask();
                m.edges.emplace_back(i, j);
                m.values.push_back(x);
                m.a.at(i, j) = x;
                m.a.at(j, i) = x;
            }
    return m;
}

std::uint64_t inducedDeterminant(const Gf2kField& F, const Matrix<std::uint64_t>& a, Mask side) {
    auto idx = std::vector<int>();
    for (int v = 0; v < a.rows; ++v)
        if (side >> v & 1) idx.push_back(v);
    const int k = int(idx.size());
    Matrix<std::uint64_t> sub(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub.at(r, c) = a.at(idx[r], idx[c]);
    return algebra::determinant(std::move(sub), F);
}

// --- Matching test and the 2^{n-1}-cut sum ------------------------------------

MatchingTestResult perfectMatchingTest(const Multigraph& G, std::uint64_t seed, int rounds) {
    if (G.directed) throw InvalidArgument("perfectMatchingTest: undirected graphs only");
    if (rounds < 1) throw InvalidArgument("perfectMatchingTest: rounds must be positive");
    const Gf2kField F =
        Gf2kField::withMinSize(std::max<std::uint64_t>(2 * std::uint64_t(G.n), 2));
    MatchingTestResult res;
    for (int r = 0; r < rounds; ++r) {
        Rng rng(deriveSeed(seed, std::uint64_t(r)));
        EdgeVariableMatrix m = buildEdgeVariableMatrix(G, F, rng);
        ++res.rounds;
        if (algebra::determinant(std::move(m.a), F) != 0) {
            res.matched = true;
            res.successRound = res.rounds;
            break;
        }
    }
    return res;
}

Ham2nResult undirectedHam2n(const Multigraph& G, std::uint64_t seed, int rounds, Exec exec) {
    if (G.directed) throw InvalidArgument("undirectedHam2n: undirected graphs only");
    if (rounds < 1) throw InvalidArgument("undirectedHam2n: rounds must be positive");
    Ham2nResult res;
    const int n = G.n;
    if (n % 2 != 0) {
        res.note = "odd vertex count: a Hamiltonian cycle splits into two perfect matchings, "
                   "so none can exist";
        return res;
    }
    if (n == 0) {
        res.note = "empty vertex set: no cycle";
        return res;
    }
    const Gf2kField F = Gf2kField::withMinSize(8 * std::uint64_t(n));
    const std::uint64_t half = std::uint64_t(1) << (n - 1);
    for (int r = 0; r < rounds; ++r) {
        Rng rng(deriveSeed(seed, std::uint64_t(r)));
        const EdgeVariableMatrix mx = buildEdgeVariableMatrix(G, F, rng);
        const EdgeVariableMatrix my = buildEdgeVariableMatrix(G, F, rng);
        auto cutTerm = [&](std::uint64_t m) -> std::uint64_t {
            const Mask side = (Mask(m) << 1) | Mask(1);  // canonical side holds vertex 0
            const Mask other = fullMask(n) & ~side;
            std::uint64_t t =
                F.mul(inducedDeterminant(F, mx.a, side), inducedDeterminant(F, mx.a, other));
            if (t == 0) return 0;
            t = F.mul(t, inducedDeterminant(F, my.a, side));
            if (t == 0) return 0;
            return F.mul(t, inducedDeterminant(F, my.a, other));
        };
        std::uint64_t sum = 0;
        if (exec == Exec::Parallel && workerCount() > 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(workerCount()) reduction(^ : sum)
            for (std::uint64_t m = 0; m < half; ++m) sum ^= cutTerm(m);
        } else {
            for (std::uint64_t m = 0; m < half; ++m) sum ^= cutTerm(m);
        }
        res.cutLoopCount = half;
        ++res.rounds;
        if (sum != 0) {
            res.hamiltonian = true;
            res.successRound = res.rounds;
            break;
        }
    }
    return res;
}

// --- Matchings-connectivity and split matrices ---------------------------------

namespace {

void enumerateMatchings(int t, Mask used, std::vector<std::pair<int, int>>& cur,
                        std::vector<std::vector<std::pair<int, int>>>& out) {
    if (used == fullMask(t)) {
        out.push_back(cur);
        return;
    }
    const int v = std::countr_one(used);  // smallest unmatched vertex
    for (int w = v + 1; w < t; ++w) {
        if (used >> w & 1) continue;
        cur.emplace_back(v, w);
        enumerateMatchings(t, used | (Mask(1) << v) | (Mask(1) << w), cur, out);
        cur.pop_back();
    }
}

// Single Hamiltonian cycle under the set-union convention: the unions of the
// edge sets must be disjoint (otherwise some vertex has degree one) and the
// resulting 2-regular graph connected.
bool unionIsSingleCycle(int t, const std::vector<std::pair<int, int>>& A,
                        const std::vector<std::pair<int, int>>& B) {
    std::set<std::pair<int, int>> edges(A.begin(), A.end());
    edges.insert(B.begin(), B.end());
    if (int(edges.size()) != t) return false;  // a shared edge leaves degree-1 vertices
    auto nbr = std::vector<std::array<int, 2>>(std::size_t(t), std::array<int, 2>{-1, -1});
    for (const auto& [u, v] : edges) {
        nbr[u][nbr[u][0] < 0 ? 0 : 1] = v;
        nbr[v][nbr[v][0] < 0 ? 0 : 1] = u;
    }
    int prev = -1, cur = 0, len = 0;
    do {
        const int nxt = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
        prev = cur;
        cur = nxt;
        ++len;
    } while (cur != 0);
    return len == t;
}

bool matchingAvoidsCut(const std::vector<std::pair<int, int>>& A, Mask side) {
    for (const auto& [u, v] : A)
        if (((side >> u) & 1) != ((side >> v) & 1)) return false;
    return true;
}

}  // namespace

MatchingsConnectivityData buildMatchingsConnectivity(int t) {
    if (t < 2 || t > 10 || t % 2 != 0)
        throw InvalidArgument("buildMatchingsConnectivity: t must be even with 2 <= t <= 10");
    MatchingsConnectivityData d;
    d.t = t;
    {
        auto cur = std::vector<std::pair<int, int>>();
        enumerateMatchings(t, 0, cur, d.matchings);
    }
    for (Mask m = 0; m < (Mask(1) << t); ++m)
        if (m & 1) d.cuts.push_back(m);
    const int M = int(d.matchings.size());
    const int C = int(d.cuts.size());
    d.h = Matrix<std::uint64_t>(M, M);
    d.s = Matrix<std::uint64_t>(M, C);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            d.h.at(i, j) = unionIsSingleCycle(t, d.matchings[i], d.matchings[j]) ? 1 : 0;
    for (int i = 0; i < M; ++i)
        for (int c = 0; c < C; ++c)
            d.s.at(i, c) = matchingAvoidsCut(d.matchings[i], d.cuts[c]) ? 1 : 0;
    return d;
}

namespace {

// Fills the comparison part of a report: `product` vs the connectivity
// matrix under both doubled-edge conventions.
void compareWithConnectivity(const MatchingsConnectivityData& d,
                             const Matrix<std::uint64_t>& product, FactorizationReport& rep) {
    const int M = int(d.matchings.size());
    rep.equal = true;
    rep.equalDoubledEdge = true;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const std::uint64_t strict = d.h.at(i, j);
            const std::uint64_t doubled = (d.t == 2 && i == j) ? 1 : strict;
            if (product.at(i, j) != strict && rep.equal) {
                rep.equal = false;
                rep.mismatchRow = i;
                rep.mismatchCol = j;
            }
            if (product.at(i, j) != doubled) rep.equalDoubledEdge = false;
        }
}

}  // namespace

FactorizationReport verifyFactorizationChar2(int t) {
    if (t != 2 && t != 4 && t != 6 && t != 8)
        throw InvalidArgument("verifyFactorizationChar2: t must be one of {2,4,6,8}");
    const MatchingsConnectivityData d = buildMatchingsConnectivity(t);
    const int M = int(d.matchings.size());
    const int C = int(d.cuts.size());
    Matrix<std::uint64_t> product(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            std::uint64_t acc = 0;
            for (int c = 0; c < C; ++c) acc ^= d.s.at(i, c) & d.s.at(j, c);
            product.at(i, j) = acc;
        }
    FactorizationReport rep;
    rep.t = t;
    rep.matchingCount = std::size_t(M);
    rep.cutCount = std::size_t(C);
    compareWithConnectivity(d, product, rep);
    return rep;
}

// --- Narrow cut families -------------------------------------------------------

namespace {

void validateCutFamily(int t, const CutFamily& c) {
    if (t < 2 || t % 2 != 0) throw InvalidArgument("cut family: t must be even and positive");
    if (c.t != t) throw InvalidArgument("cut family: declared t does not match");
    if (c.cuts.size() != pow3(t / 2 - 1))
        throw InvalidArgument("cut family: expected 3^(t/2-1) entries");
    for (Mask m : c.cuts)
        if (t < 64 && m >= (Mask(1) << t))
            throw InvalidArgument("cut family: cut side outside the vertex set");
}

Mask canonicalSide(int t, Mask m) { return (m & 1) ? m : (fullMask(t) & ~m); }

}  // namespace

CutFamily parseCutFamily(const std::string& text) {
    std::istringstream in(text);
    int t = 0;
    if (!(in >> t)) throw InvalidArgument("cut family: missing vertex count line");
    if (t < 2 || t > 20 || t % 2 != 0)
        throw InvalidArgument("cut family: vertex count must be even with 2 <= t <= 20");
    const int m = t / 2 - 1;
    const std::uint64_t dim = pow3(m);
    CutFamily fam;
    fam.t = t;
    fam.cuts.assign(dim, 0);
    auto seen = std::vector<char>(dim, char(0));
    std::string line;
    std::getline(in, line);  // rest of the count line
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string digits;
        if (!(ls >> digits)) continue;  // blank line
        std::uint64_t index = 0;
        if (m == 0) {
            if (digits != "-") throw InvalidArgument("cut family: expected '-' index for t = 2");
        } else {
            if (int(digits.size()) != m)
                throw InvalidArgument("cut family: index must have t/2-1 base-3 digits");
            std::uint64_t place = 1;
            for (char ch : digits) {
                if (ch < '0' || ch > '2')
                    throw InvalidArgument("cut family: index digits must be 0, 1 or 2");
                index += std::uint64_t(ch - '0') * place;
                place *= 3;
            }
        }
        if (seen[index]) throw InvalidArgument("cut family: duplicate index");
        Mask side = 0;
        int v = 0;
        while (ls >> v) {
            if (v < 1 || v > t) throw InvalidArgument("cut family: vertex out of range");
            side |= Mask(1) << (v - 1);
        }
        fam.cuts[index] = canonicalSide(t, side);
        seen[index] = 1;
    }
    for (std::uint64_t i = 0; i < dim; ++i)
        if (!seen[i]) throw InvalidArgument("cut family: missing index");
    return fam;
}

std::string renderCutFamily(const CutFamily& c) {
    validateCutFamily(c.t, c);
    const int m = c.t / 2 - 1;
    std::ostringstream out;
    out << c.t << "\n";
    for (std::size_t a = 0; a < c.cuts.size(); ++a) {
        if (m == 0) {
            out << "-";
        } else {
            std::uint64_t rest = a;
            for (int i = 0; i < m; ++i) {
                out << char('0' + rest % 3);
                rest /= 3;
            }
        }
        const Mask side = canonicalSide(c.t, c.cuts[a]);
        for (int v = 0; v < c.t; ++v)
            if (side >> v & 1) out << " " << (v + 1);
        out << "\n";
    }
    return out.str();
}

FactorizationReport verifyNarrowCutFactorization(int t, const CutFamily& c) {
    validateCutFamily(t, c);
    if (t > 10)
        throw InvalidArgument("verifyNarrowCutFactorization: t <= 10 (matching list size)");
    const MatchingsConnectivityData d = buildMatchingsConnectivity(t);
    const int M = int(d.matchings.size());
    const int dim = int(c.cuts.size());
    // sc[i][a] = 1 iff matching i is unsplit by the family cut at index a.
    Matrix<std::uint64_t> sc(M, dim);
    for (int i = 0; i < M; ++i)
        for (int a = 0; a < dim; ++a)
            sc.at(i, a) = matchingAvoidsCut(d.matchings[i], c.cuts[a]) ? 1 : 0;
    // Kronecker power of the 3x3 all-ones-minus-identity matrix: the (a, b)
    // entry is 1 iff every base-3 digit of a differs from the one of b.
    auto digitsDiffer = [&](int a, int b) {
        for (int i = 0; i < t / 2 - 1; ++i) {
            if (a % 3 == b % 3) return false;
            a /= 3;
            b /= 3;
        }
        return true;
    };
    // product = sc * Q^{kron} * sc^T over GF(2)
    Matrix<std::uint64_t> tmp(M, dim);
    for (int i = 0; i < M; ++i)
        for (int b = 0; b < dim; ++b) {
            std::uint64_t acc = 0;
            for (int a = 0; a < dim; ++a)
                if (digitsDiffer(a, b)) acc ^= sc.at(i, a);
            tmp.at(i, b) = acc;
        }
    Matrix<std::uint64_t> product(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            std::uint64_t acc = 0;
            for (int b = 0; b < dim; ++b) acc ^= tmp.at(i, b) & sc.at(j, b);
            product.at(i, j) = acc;
        }
    FactorizationReport rep;
    rep.t = t;
    rep.matchingCount = std::size_t(M);
    rep.cutCount = std::size_t(dim);
    compareWithConnectivity(d, product, rep);
    return rep;
}

CutFamilySearchResult findNarrowCutFamilyExhaustive(int t) {
    if (t != 2 && t != 4)
        throw InvalidArgument(
            "findNarrowCutFamilyExhaustive: feasible for t in {2,4} only (the candidate count "
            "is (2^{t-1})^{3^{t/2-1}})");
    const int dim = int(pow3(t / 2 - 1));
    auto sides = std::vector<Mask>();
    for (Mask m = 0; m < (Mask(1) << t); ++m)
        if (m & 1) sides.push_back(m);
    CutFamilySearchResult res;
    auto pick = std::vector<std::size_t>(std::size_t(dim), 0);
    for (;;) {
        CutFamily cand;
        cand.t = t;
        for (int a = 0; a < dim; ++a) cand.cuts.push_back(sides[pick[std::size_t(a)]]);
        ++res.candidatesTried;
        if (verifyNarrowCutFactorization(t, cand).equal) {
            res.family = std::move(cand);
            return res;
        }
        int i = dim - 1;
        while (i >= 0 && pick[std::size_t(i)] + 1 == sides.size()) {
            pick[std::size_t(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++pick[std::size_t(i)];
    }
    return res;
}

namespace {

// Odometer over a mixed-radix parameter vector; returns false when wrapped.
bool nextParams(std::vector<int>& v, const std::vector<int>& radix) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < radix[i]) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace

CutFamilySearchResult findNarrowCutFamilyPaired(int t) {
    if (t != 4 && t != 6)
        throw InvalidArgument("findNarrowCutFamilyPaired: feasible for t in {4,6} only");
    const int m = t / 2 - 1;        // index digits
    const int pairs = t / 2;        // vertex pairs {2j, 2j+1}
    const int dim = int(pow3(m));
    const MatchingsConnectivityData d = buildMatchingsConnectivity(t);
    const int M = int(d.matchings.size());
    // Split bitmask over matchings for every possible cut side (complement
    // yields the same column, so no canonicalization needed here).
    auto colBits = std::vector<std::uint64_t>(std::size_t(1) << t, 0);
    for (Mask side = 0; side < (Mask(1) << t); ++side) {
        std::uint64_t bits = 0;
        for (int i = 0; i < M; ++i)
            if (matchingAvoidsCut(d.matchings[i], side)) bits |= std::uint64_t(1) << i;
        colBits[side] = bits;
    }
    auto hRow = std::vector<std::uint64_t>(std::size_t(M), 0);
    for (int i = 0; i < M; ++i) {
        std::uint64_t bits = 0;
        for (int j = 0; j < M; ++j)
            if (d.h.at(i, j)) bits |= std::uint64_t(1) << j;
        hRow[std::size_t(i)] = bits;
    }
    auto qRow = std::vector<std::uint32_t>(std::size_t(dim), 0);
    for (int a = 0; a < dim; ++a) {
        std::uint32_t bits = 0;
        for (int b = 0; b < dim; ++b) {
            bool diff = true;
            for (int i = 0, x = a, y = b; i < m; ++i, x /= 3, y /= 3)
                if (x % 3 == y % 3) { diff = false; break; }
            if (diff) bits |= std::uint32_t(1) << b;
        }
        qRow[std::size_t(a)] = bits;
    }
    // Parameters: one 2-bit base per pair, then for each digit i a 4-bit
    // shift table (images of digit values 1 and 2, two bits each) for pair i
    // and one for the last pair. A digit leaves every other pair alone.
    auto radix = std::vector<int>();
    for (int j = 0; j < pairs; ++j) radix.push_back(4);
    for (int i = 0; i < m; ++i) {
        radix.push_back(16);  // digit i acting on pair i
        radix.push_back(16);  // digit i acting on the last pair
    }
    auto params = std::vector<int>(radix.size(), 0);
    auto cutOf = std::vector<Mask>(std::size_t(dim), 0);
    auto rowAcc = std::vector<std::uint64_t>(std::size_t(dim), 0);
    CutFamilySearchResult res;
    do {
        ++res.candidatesTried;
        for (int a = 0; a < dim; ++a) {
            Mask side = 0;
            for (int j = 0; j < pairs; ++j) {
                int bitsJ = params[std::size_t(j)];
                if (j < m) {
                    const int digit = (a / int(pow3(j))) % 3;
                    if (digit) bitsJ ^= (params[std::size_t(pairs + 2 * j)] >> (2 * (digit - 1))) & 3;
                } else {
                    for (int i = 0, y = a; i < m; ++i, y /= 3) {
                        const int digit = y % 3;
                        if (digit)
                            bitsJ ^= (params[std::size_t(pairs + 2 * i + 1)] >> (2 * (digit - 1))) & 3;
                    }
                }
                side |= Mask(bitsJ & 3) << (2 * j);
            }
            cutOf[std::size_t(a)] = side;
        }
        // rowAcc[a] = xor of split columns over the Q-row of a
        for (int a = 0; a < dim; ++a) {
            std::uint64_t acc = 0;
            std::uint32_t row = qRow[std::size_t(a)];
            while (row) {
                const int b = std::countr_zero(row);
                row &= row - 1;
                acc ^= colBits[cutOf[std::size_t(b)]];
            }
            rowAcc[std::size_t(a)] = acc;
        }
        bool ok = true;
        for (int i = 0; i < M && ok; ++i) {
            std::uint64_t prodRow = 0;
            for (int a = 0; a < dim; ++a)
                if (colBits[cutOf[std::size_t(a)]] >> i & 1) prodRow ^= rowAcc[std::size_t(a)];
            if (prodRow != hRow[std::size_t(i)]) ok = false;
        }
        if (ok) {
            CutFamily cand;
            cand.t = t;
            for (int a = 0; a < dim; ++a)
                cand.cuts.push_back(canonicalSide(t, cutOf[std::size_t(a)]));
            if (verifyNarrowCutFactorization(t, cand).equal) {
                res.family = std::move(cand);
                return res;
            }
        }
    } while (nextParams(params, radix));
    return res;
}

NarrowCutResult narrowCutHamiltonicity(const Multigraph& G, const CutFamily& c,
                                       std::uint64_t seed, bool directedBipartite, int rounds,
                                       Exec exec) {
    if (rounds < 1) throw InvalidArgument("narrowCutHamiltonicity: rounds must be positive");
    const int n = G.n;
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument("narrowCutHamiltonicity: vertex count must be even and positive");
    validateCutFamily(n, c);
    const Gf2kField F = Gf2kField::withMinSize(8 * std::uint64_t(n));
    const Matrix<std::uint64_t> qBase = algebra::smallMatrix(F, algebra::SmallMatrixKind::NarrowCutQ);
    const std::size_t dim = c.cuts.size();
    NarrowCutResult res;
    for (int r = 0; r < rounds; ++r) {
        Rng rng(deriveSeed(seed, std::uint64_t(r)));
        const EdgeVariableMatrix mx = buildEdgeVariableMatrix(
            G, F, rng, directedBipartite ? ArcFilter::ForwardArcs : ArcFilter::AllEdges);
        const EdgeVariableMatrix my = buildEdgeVariableMatrix(
            G, F, rng, directedBipartite ? ArcFilter::ReverseArcs : ArcFilter::AllEdges);
        auto left = std::vector<std::uint64_t>(dim, 0);
        auto right = std::vector<std::uint64_t>(dim, 0);
        auto fill = [&](std::size_t a) {
            const Mask side = canonicalSide(n, c.cuts[a]);
            const Mask other = fullMask(n) & ~side;
            left[a] =
                F.mul(inducedDeterminant(F, mx.a, side), inducedDeterminant(F, mx.a, other));
            right[a] =
                F.mul(inducedDeterminant(F, my.a, side), inducedDeterminant(F, my.a, other));
        };
        if (exec == Exec::Parallel && workerCount() > 1) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(workerCount())
            for (std::size_t a = 0; a < dim; ++a) fill(a);
        } else {
            for (std::size_t a = 0; a < dim; ++a) fill(a);
        }
        const std::vector<std::uint64_t> mixed =
            algebra::yatesKroneckerMatVec(F, qBase, n / 2 - 1, right, exec);
        std::uint64_t sum = 0;
        for (std::size_t a = 0; a < dim; ++a) sum ^= F.mul(left[a], mixed[a]);
        res.loopCount = dim;
        ++res.rounds;
        if (sum != 0) {
            res.hamiltonian = true;
            res.successRound = res.rounds;
            break;
        }
    }
    return res;
}

// --- Laplacian determinants -----------------------------------------------------

LaplacianData buildLaplacian(const Multigraph& G, int s) {
    if (s < 0 || s >= G.n) throw InvalidArgument("buildLaplacian: root out of range");
    LaplacianData d;
    d.deleted = s;
    d.degree = Matrix<BigInt>(G.n, G.n);
    d.laplacian = Matrix<BigInt>(G.n, G.n);
    for (int w = 0; w < G.n; ++w) {
        BigInt indeg = 0;
        for (int v = 0; v < G.n; ++v) indeg += G.adj[v][w];
        d.degree.at(w, w) = indeg;
    }
    for (int v = 0; v < G.n; ++v)
        for (int w = 0; w < G.n; ++w)
            d.laplacian.at(v, w) = d.degree.at(v, w) - G.adj[v][w];
    return d;
}

std::pair<Matrix<BigInt>, Matrix<BigInt>> buildIncidenceMatrices(const Multigraph& G) {
    int arcs = 0;
    for (int v = 0; v < G.n; ++v)
        for (int w = 0; w < G.n; ++w) arcs += int(G.adj[v][w]);
    Matrix<BigInt> heads(G.n, arcs);
    Matrix<BigInt> tails(G.n, arcs);
    int col = 0;
    for (int v = 0; v < G.n; ++v)
        for (int w = 0; w < G.n; ++w)
            for (std::uint32_t k = 0; k < G.adj[v][w]; ++k) {
                heads.at(w, col) = 1;
                tails.at(v, col) = 1;
                ++col;
            }
    return {std::move(heads), std::move(tails)};
}

BigInt outBranchingCount(const Multigraph& G, int s) {
    const LaplacianData d = buildLaplacian(G, s);
    const int n = G.n;
    Matrix<BigInt> m(n - 1, n - 1);
    for (int v = 0, r = 0; v < n; ++v) {
        if (v == s) continue;
        for (int w = 0, c = 0; w < n; ++w) {
            if (w == s) continue;
            m.at(r, c) = d.laplacian.at(v, w);
            ++c;
        }
        ++r;
    }
    return algebra::determinantExactInt(std::move(m));
}

ArcCycleCount hamCyclesThroughArcExact(const Multigraph& G, int t, int s) {
    const int n = G.n;
    if (t < 0 || t >= n || s < 0 || s >= n || t == s)
        throw InvalidArgument("hamCyclesThroughArcExact: arc endpoints out of range");
    if (G.adj[t][s] != 1)
        throw InvalidArgument(
            "hamCyclesThroughArcExact: the anchor arc must be present with multiplicity 1");
    if (n > 16) throw InvalidArgument("hamCyclesThroughArcExact: supports n <= 16");
    auto others = std::vector<int>();
    for (int v = 0; v < n; ++v)
        if (v != t) others.push_back(v);
    ArcCycleCount out;
    out.subsetsEnumerated = std::uint64_t(1) << (n - 1);
    auto inF = std::vector<char>(std::size_t(n), char(0));
    for (std::uint64_t f = 0; f < out.subsetsEnumerated; ++f) {
        for (int i = 0; i < n - 1; ++i) inF[std::size_t(others[i])] = char(f >> i & 1);
        Matrix<BigInt> m(n - 1, n - 1);
        for (int w = 0, c = 0; w < n; ++w) {
            if (w == s) continue;
            BigInt indeg = 0;
            for (int v = 0; v < n; ++v)
                if (!inF[std::size_t(v)]) indeg += G.adj[v][w];
            for (int v = 0, r = 0; v < n; ++v) {
                if (v == s) continue;
                const BigInt arc = inF[std::size_t(v)] ? 0 : G.adj[v][w];
                m.at(r, c) = (v == w ? indeg : BigInt(0)) - arc;
                ++r;
            }
            ++c;
        }
        const BigInt det = algebra::determinantExactInt(std::move(m));
        if (std::popcount(f) & 1)
            out.count -= det;
        else
            out.count += det;
    }
    return out;
}

namespace {

// One inclusion-exclusion walk for the cycles-through-vertex-0 count: sums
// (-1)^|F| det over the subsets F of V \ {t} whose rank in [lo, hi), walking
// the reflected Gray code so a single vertex toggles per step and the column
// sums stay maintained in O(n).
std::uint64_t modCountBlock(const std::vector<std::vector<std::uint64_t>>& arcMod, int t, int s,
                            const ZpField& F, bool skipEnabled, std::uint64_t lo,
                            std::uint64_t hi, std::uint64_t& skipped) {
    const int n = int(arcMod.size());
    auto others = std::vector<int>();
    for (int v = 0; v < n; ++v)
        if (v != t) others.push_back(v);
    auto inF = std::vector<char>(std::size_t(n), char(0));
    auto inDegF = std::vector<std::uint64_t>(std::size_t(n), 0);
    const std::uint64_t startMask = lo ^ (lo >> 1);
    for (int i = 0; i < n - 1; ++i) inF[std::size_t(others[i])] = char(startMask >> i & 1);
    for (int w = 0; w < n; ++w) {
        std::uint64_t acc = 0;
        for (int v = 0; v < n; ++v)
            if (!inF[std::size_t(v)]) acc = F.add(acc, arcMod[std::size_t(v)][std::size_t(w)]);
        inDegF[std::size_t(w)] = acc;
    }
    int sizeF = std::popcount(startMask);
    std::uint64_t sum = 0;
    Matrix<std::uint64_t> m(n - 1, n - 1);
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
        if (rank != lo) {
            const int bit = std::countr_zero(rank);  // toggled element going rank-1 -> rank
            const int u = others[bit];
            if (inF[std::size_t(u)]) {
                inF[std::size_t(u)] = 0;
                --sizeF;
                for (int w = 0; w < n; ++w)
                    inDegF[std::size_t(w)] =
                        F.add(inDegF[std::size_t(w)], arcMod[std::size_t(u)][std::size_t(w)]);
            } else {
                inF[std::size_t(u)] = 1;
                ++sizeF;
                for (int w = 0; w < n; ++w)
                    inDegF[std::size_t(w)] =
                        F.sub(inDegF[std::size_t(w)], arcMod[std::size_t(u)][std::size_t(w)]);
            }
        }
        if (skipEnabled) {
            bool zeroRow = false;
            for (int v = 0; v < n && !zeroRow; ++v)
                if (v != s && inF[std::size_t(v)] && inDegF[std::size_t(v)] == 0) zeroRow = true;
            if (zeroRow) {
                ++skipped;
                continue;
            }
        }
        for (int v = 0, r = 0; v < n; ++v) {
            if (v == s) continue;
            const bool frozen = inF[std::size_t(v)] != 0;
            for (int w = 0, c = 0; w < n; ++w) {
                if (w == s) continue;
                std::uint64_t entry = 0;
                if (v == w)
                    entry = inDegF[std::size_t(w)];
                else if (!frozen)
                    entry = F.sub(0, arcMod[std::size_t(v)][std::size_t(w)]);
                m.at(r, c) = entry;
                ++c;
            }
            ++r;
        }
        const std::uint64_t det = algebra::determinant(m, F);
        sum = F.add(sum, (sizeF & 1) ? F.sub(0, det) : det);
    }
    return sum;
}

}  // namespace

ModCountResult countHamCyclesModP(const Multigraph& G, std::uint64_t p, std::uint64_t seed,
                                  bool skipEnabled, Exec exec) {
    if (!algebra::isPrime(p)) throw InvalidArgument("countHamCyclesModP: p must be prime");
    const int n = G.n;
    if (n > 20) throw InvalidArgument("countHamCyclesModP: supports n <= 20");
    ModCountResult out;
    if (n < 2) return out;
    out.subsetsPerArc = std::uint64_t(1) << (n - 1);
    const ZpField F(p);
    const int s = 0;
    std::uint64_t total = 0;
    for (int t = 0; t < n; ++t) {
        if (t == s || G.adj[t][s] == 0) continue;
        ++out.arcsProcessed;
        // Extra random arcs out of t: exact no-ops for the alternating sum
        // (an out-branching surviving it has no arc out of t), but they
        // randomize the in-degree diagonals that drive the skip test.
        Rng rng(deriveSeed(seed, std::uint64_t(t)));
        auto arcMod = std::vector<std::vector<std::uint64_t>>(
            std::size_t(n), std::vector<std::uint64_t>(std::size_t(n), 0));
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) arcMod[std::size_t(v)][std::size_t(w)] = G.adj[v][w] % p;
        for (int v = 0; v < n; ++v)
            if (v != s && v != t)
                arcMod[std::size_t(t)][std::size_t(v)] =
                    F.add(arcMod[std::size_t(t)][std::size_t(v)], rng.below(p));
        const std::uint64_t ranks = out.subsetsPerArc;
        std::uint64_t pathSum = 0;
        if (exec == Exec::Parallel && workerCount() > 1 && ranks >= 64) {
            const int blocks = workerCount() * 4;
            const std::uint64_t chunk = (ranks + blocks - 1) / std::uint64_t(blocks);
            auto partial = std::vector<std::uint64_t>(std::size_t(blocks), 0);
            auto skippedPart = std::vector<std::uint64_t>(std::size_t(blocks), 0);
#pragma omp parallel for schedule(static) num_threads(workerCount())
            for (int b = 0; b < blocks; ++b) {
                const std::uint64_t lo = std::min(ranks, std::uint64_t(b) * chunk);
                const std::uint64_t hi = std::min(ranks, lo + chunk);
                if (lo < hi)
                    partial[std::size_t(b)] = modCountBlock(arcMod, t, s, F, skipEnabled, lo, hi,
                                                            skippedPart[std::size_t(b)]);
            }
            for (int b = 0; b < blocks; ++b) {
                pathSum = F.add(pathSum, partial[std::size_t(b)]);
                out.determinantsSkipped += skippedPart[std::size_t(b)];
            }
        } else {
            pathSum = modCountBlock(arcMod, t, s, F, skipEnabled, 0, ranks,
                                    out.determinantsSkipped);
        }
        total = F.add(total, F.mul(G.adj[t][s] % p, pathSum));
    }
    out.residue = total;
    return out;
}

}  // namespace exactexpo::hamiltonicity
