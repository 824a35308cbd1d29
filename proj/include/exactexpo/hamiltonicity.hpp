#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactexpo/algebra.hpp"
#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::hamiltonicity {

// ---------------------------------------------------------------------------
// Symmetric edge-variable matrices over GF(2^k)
// ---------------------------------------------------------------------------

// Which vertex pairs carry a variable. For directed inputs, ForwardArcs puts
// a variable on {i,j} when the arc (i,j) with i < j exists, ReverseArcs when
// (j,i) exists; AllEdges uses every adjacent pair. (The directed-bipartite
// Hamiltonicity variant gives one orientation to the x-matrix and the other
// to the y-matrix.)
enum class ArcFilter { AllEdges, ForwardArcs, ReverseArcs };

// n x n matrix with entry x_e at [i][j] and [j][i] for each supported pair
// e = {i,j} (the characteristic-2 field absorbs the sign of the classic
// skew-symmetric construction), zero elsewhere; zero diagonal. Its
// determinant is the squared-variable perfect-matching polynomial evaluated
// at the stored assignment.
struct EdgeVariableMatrix {
    algebra::Matrix<std::uint64_t> a;       // entries in GF(2^k)
    std::vector<std::pair<int, int>> edges; // supported pairs, i < j, ascending
    std::vector<std::uint64_t> values;      // assignment, one value per pair
};

EdgeVariableMatrix buildEdgeVariableMatrix(const Multigraph& G, const algebra::Gf2kField& F,
                                           Rng& rng, ArcFilter filter = ArcFilter::AllEdges);

// Determinant of the submatrix indexed by the vertices in `side` (an empty
// side has determinant 1).
std::uint64_t inducedDeterminant(const algebra::Gf2kField& F,
                                 const algebra::Matrix<std::uint64_t>& a, Mask side);

// ---------------------------------------------------------------------------
// Perfect matching and the 2^{n-1}-cut Hamiltonicity test
// ---------------------------------------------------------------------------

struct MatchingTestResult {
    bool matched = false;
    int rounds = 0;       // evaluations performed
    int successRound = 0; // 1-based first nonzero evaluation, 0 if none
};

// Randomized perfect-matching test: evaluate the matching polynomial (the
// determinant of the edge-variable matrix) at uniform points of a field of
// size >= 2n. One-sided: a nonzero evaluation certifies a perfect matching;
// on matchable graphs each round succeeds with probability >= 1/2.
MatchingTestResult perfectMatchingTest(const Multigraph& G, std::uint64_t seed, int rounds = 10);

struct Ham2nResult {
    bool hamiltonian = false;
    std::uint64_t cutLoopCount = 0; // cuts summed per round: 2^{n-1} exactly
    int rounds = 0;
    int successRound = 0;
    std::string note; // diagnostic for the degenerate odd-n refusal
};

// Undirected Hamiltonicity as a sum over all 2^{n-1} cuts {C, V\C} of
// det(Ax[C]) det(Ax[V\C]) det(Ay[C]) det(Ay[V\C]) over GF(2^k) with
// k = ceil(log2 8n). One-sided: a nonzero sum certifies a Hamiltonian cycle
// (each round succeeds with probability >= 1/2 on Hamiltonian inputs); odd n
// returns false immediately with a note, since the underlying decomposition
// pairs matchings.
Ham2nResult undirectedHam2n(const Multigraph& G, std::uint64_t seed, int rounds = 10,
                            Exec exec = Exec::Serial);

// ---------------------------------------------------------------------------
// Matchings-connectivity and split matrices, factorization checks
// ---------------------------------------------------------------------------

struct MatchingsConnectivityData {
    int t = 0;
    std::vector<std::vector<std::pair<int, int>>> matchings; // perfect matchings of K_t
    std::vector<Mask> cuts;             // one side per cut, the side holding vertex 0
    algebra::Matrix<std::uint64_t> h;   // h[A][B] = 1 iff the edge-set union is one cycle
    algebra::Matrix<std::uint64_t> s;   // s[A][C] = 1 iff no edge of A crosses the cut
};

// All perfect matchings of K_t ((t-1)!! of them), all 2^{t-1} cuts, and the
// 0/1 connectivity and split matrices. The h entry uses the set union of the
// two matchings, so the doubled single edge at t = 2 does NOT count as a
// cycle (h = [0]); the factorization checker below reports the alternative
// reading as well. Requires t even, 2 <= t <= 10.
MatchingsConnectivityData buildMatchingsConnectivity(int t);

struct FactorizationReport {
    int t = 0;
    std::size_t matchingCount = 0;
    std::size_t cutCount = 0;
    bool equal = false;           // product matches h (set-union convention)
    bool equalDoubledEdge = false; // ... with the doubled edge at t=2 counted a cycle
    int mismatchRow = -1;          // first differing entry under the set-union convention
    int mismatchCol = -1;
};

// Checks h = s * s^T entry-exactly over GF(2). For t = 2 the two conventions
// for the doubled edge disagree and both verdicts are reported; for t >= 4
// they coincide. Requires t in {2, 4, 6, 8}.
FactorizationReport verifyFactorizationChar2(int t);

// ---------------------------------------------------------------------------
// Narrow cut families
// ---------------------------------------------------------------------------

// A function {0,1,2}^{t/2-1} -> cuts of [t], stored by index: entry at
// position sum_i digit_i * 3^i is the cut side containing vertex 0.
struct CutFamily {
    int t = 0;
    std::vector<Mask> cuts; // size 3^{t/2-1}
};

// Text format, one entry per line after a first line holding t:
//   <digits> v1 v2 ...
// where <digits> is the base-3 index string (leftmost character = digit 0,
// the 3^0 place), "-" when t = 2 (empty string), and v1 v2 ... are the
// 1-based vertices of the cut side containing vertex 1.
CutFamily parseCutFamily(const std::string& text);
std::string renderCutFamily(const CutFamily& c);

// Verifies h_t = s_t[.,C] * Q^{(t/2-1)-fold Kronecker} * s_t[.,C]^T over
// GF(2), Q the 3x3 all-ones-minus-identity matrix. Same dual reporting for
// t = 2 as verifyFactorizationChar2. Throws InvalidArgument when the family
// shape is wrong (t odd, wrong entry count, cut outside the vertex set).
FactorizationReport verifyNarrowCutFactorization(int t, const CutFamily& c);

struct CutFamilySearchResult {
    std::optional<CutFamily> family;
    std::uint64_t candidatesTried = 0;
};

// Exhaustive search over all (2^{t-1})^{3^{t/2-1}} candidate functions for a
// family passing verifyNarrowCutFactorization. Feasible for t in {2, 4} only.
CutFamilySearchResult findNarrowCutFamilyExhaustive(int t);

// Structured search for larger t: vertices are paired {0,1},{2,3},...; each
// cut side is described by two bits per pair, and those bits are an affine
// function of the index digits (a per-pair base, shifted by digit i for pair
// i and for the last pair). The space covers the exhaustively-found t = 4
// families and is small enough to scan at t = 6; every hit is validated by
// verifyNarrowCutFactorization before being returned. Supports t in {4, 6}.
CutFamilySearchResult findNarrowCutFamilyPaired(int t);

struct NarrowCutResult {
    bool hamiltonian = false;
    std::uint64_t loopCount = 0; // cut-family entries per round: 3^{n/2-1} exactly
    int rounds = 0;
    int successRound = 0;
};

// Hamiltonicity via the narrow cut factorization: per round draw x,y edge
// values in GF(2^k), k = ceil(log2 8n); compute l[a], r[a] as products of the
// two induced-side determinants for every family entry; return whether
// l^T Q^{kron} r is nonzero, with the Kronecker product applied by the Yates
// pass. One-sided, per-round failure <= 4n / 2^k on Hamiltonian inputs.
// directedBipartite = true uses forward arcs for x and reverse arcs for y.
// The family must have c.t == n and 3^{n/2-1} entries inside the vertex set.
NarrowCutResult narrowCutHamiltonicity(const Multigraph& G, const CutFamily& c,
                                       std::uint64_t seed, bool directedBipartite = false,
                                       int rounds = 10, Exec exec = Exec::Serial);

// ---------------------------------------------------------------------------
// Directed Hamiltonicity via Laplacian determinants
// ---------------------------------------------------------------------------

struct LaplacianData {
    algebra::Matrix<BigInt> degree;    // in-degree diagonal
    algebra::Matrix<BigInt> laplacian; // degree minus adjacency; columns sum to 0
    int deleted = -1;                  // row/column index removed before determinants
};

LaplacianData buildLaplacian(const Multigraph& G, int s);

// Arc-incidence matrices (head-indicator I and tail-indicator O, one column
// per arc counted with multiplicity, columns in ascending (tail, head)
// order). (I - O) * I^T equals the Laplacian.
std::pair<algebra::Matrix<BigInt>, algebra::Matrix<BigInt>> buildIncidenceMatrices(
    const Multigraph& G);

// Number of spanning out-branchings rooted at s: the determinant of the
// Laplacian with row/column s deleted. Deterministic and exact.
BigInt outBranchingCount(const Multigraph& G, int s);

struct ArcCycleCount {
    BigInt count = 0;
    std::uint64_t subsetsEnumerated = 0; // 2^{n-1} exactly
};

// Exact number of directed Hamiltonian cycles through the (unique) arc
// (t, s), by inclusion-exclusion over the vertex sets whose outgoing arcs
// are removed: sum over F of (-1)^|F| det of the reduced Laplacian. Requires
// exactly one t->s arc and n <= 16.
ArcCycleCount hamCyclesThroughArcExact(const Multigraph& G, int t, int s);

struct ModCountResult {
    std::uint64_t residue = 0;
    int arcsProcessed = 0;               // in-arcs of the anchor vertex
    std::uint64_t subsetsPerArc = 0;     // 2^{n-1} exactly
    std::uint64_t determinantsSkipped = 0;
};

// Number of directed Hamiltonian cycles mod p. Anchors at vertex 0 and sums
// the inclusion-exclusion count over its in-arcs; random extra arcs out of
// the arc tail (they cancel exactly in the alternating sum) make most
// reduced Laplacians carry a zero diagonal row mod p, and those determinants
// are skipped. The subsets are walked in Gray-code order with the matrix
// column sums maintained incrementally; skipEnabled = false computes every
// determinant (identical residue, zero skip counter). Requires p prime and
// n <= 20.
ModCountResult countHamCyclesModP(const Multigraph& G, std::uint64_t p, std::uint64_t seed,
                                  bool skipEnabled = true, Exec exec = Exec::Serial);

}  // namespace exactexpo::hamiltonicity
