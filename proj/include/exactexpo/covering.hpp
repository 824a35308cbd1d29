#pragma once

// Set Cover and Bin Packing solvers: the full-lattice transform counter, its
// closure-trimmed variant, exact-union cover tables, the middle-layer
// crossing decision, a Monte Carlo solver for covers with many sets,
// container-guided covering, and two bin packing procedures.

#include <cstdint>
#include <functional>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::covering {

// Membership test for a (possibly implicit) set family.
using MemberOracle = std::function<bool(Mask)>;

// --- Transform-based counting ------------------------------------------------

struct SetCoverCount {
    BigInt count = 0;  // ordered k-tuples of members whose union is U
    bool covered = false;
    std::uint64_t touchedPerPass = 0;  // 2^n: slots touched by each pass
    int passes = 0;                    // 2n lattice passes + 1 powering pass
    std::uint64_t touchedTotal = 0;
};

// Counts ordered k-tuples (S_1,...,S_k) with union U by rank transforms over
// the full subset lattice: zeta, pointwise k-th power, Moebius; the answer
// is the top coefficient. Exact arbitrary-precision arithmetic; multiset
// members count with their multiplicity. Requires n <= 26 (memory).
SetCoverCount setCover2n(const SetSystem& S, int k, Exec exec = Exec::Serial);

struct TrimmedCoverResult {
    BigInt count = 0;
    bool covered = false;
    std::uint64_t closureSize = 0;   // |up-closure of the member sets|
    std::uint64_t touchedTotal = 0;  // closureSize * (n + 2)
};

// Same count as setCover2n, computed only on the up-closure of the member
// sets: all three passes are exact there because the transforms are
// lower-triangular and the input vanishes outside the closure.
TrimmedCoverResult setCoverTrimmed(const SetSystem& S, int k);

// --- Exact-union cover tables -------------------------------------------------

// For each mask F of a down-closed family and each i = 0..k, the number of
// ordered i-tuples of members (per the oracle) whose union is EXACTLY F.
// When the oracle describes a downward-closed family, "union exactly F with
// i sets" and "union a superset of F with i sets" coincide, so
// coverable(F, i) answers the subset-cover question; for a general oracle it
// keeps the exact-union (partition-flavored) meaning.
struct CoverTable {
    std::vector<Mask> family;                      // sorted ascending
    std::vector<std::vector<BigInt>> exactTuples;  // [index in family][i]
    std::uint64_t oracleCalls = 0;

    int indexOf(Mask m) const;  // -1 if absent
    bool coverable(Mask m, int i) const {
        const int at = indexOf(m);
        return at >= 0 && exactTuples[std::size_t(at)][std::size_t(i)] > 0;
    }
};

// Builds the table over `family`, which must be down-closed (checked).
CoverTable coverWithinISets(const MemberOracle& oracle, std::vector<Mask> family, int k);

// --- Crossing the middle layer ---------------------------------------------------

struct CrossingResult {
    bool covered = false;
    Mask witnessHalf = 0;   // the accepted F (valid when covered)
    int witnessSplit = -1;  // prefix length a: a sets cover F, k-a cover U\F
    std::uint64_t touchedMasks = 0;  // |down-closure(F)| + |down-closure(complements)|
    std::uint64_t oracleCalls = 0;
};

// Decides whether some k-tuple of members splits an F in `half`: a prefix of
// a sets whose union is exactly F and a suffix of k-a sets whose union is
// exactly U\F, for some a in 0..k (both ends may be empty). Every mask in
// `half` must have at least ceil(n/2) elements. With a downward-closed
// oracle this is exactly "prefix covers F, suffix covers the rest".
CrossingResult crossMiddleLayer(const MemberOracle& oracle, const std::vector<Mask>& half,
                                int n, int k);

// --- Monte Carlo cover for k >= sigma*n ----------------------------------------------

struct LargeKConfig {
    double eps1 = 0.2;   // "large set" threshold: |S_i| >= eps1*n
    double eps2 = 0.05;  // width of the cardinality band above n/2
    int repeats = 10;    // sampling repetitions
};

struct LargeKResult {
    bool covered = false;
    int largeSetBranch = -1;  // index of the guessed large set, if that branch won
    int successTrial = 0;     // 1-based sampling trial that accepted, if any
};

// One-sided Monte Carlo decision for covering U with k members of S, in the
// regime k >= sigma*n. Every set of size >= eps1*n is guessed in turn and
// the induced instance solved exactly; otherwise masks from the cardinality
// band [ceil(n/2), (1/2+eps2)n] are sampled with probability 2^(-sigma*n)
// and handed to the crossing decision with the down-closure of S. "true"
// always implies a cover exists; "false" may be wrong with probability
// shrinking in `repeats`.
LargeKResult setCoverLargeK(const SetSystem& S, int k, double sigma, std::uint64_t seed,
                            const LargeKConfig& config = {}, Exec exec = Exec::Serial);

// --- Container-guided covering ----------------------------------------------------

struct ContainerCoverResult {
    bool covered = false;
    std::uint64_t acceptedSubset = 0;  // mask L over the containers (valid when covered)
    std::uint64_t subsetsTried = 0;
};

// Decides coverage of U by k members subject to container guidance: for
// every L subseteq [k] whose container union C_L has at most
// (1-epsThreshold)*n elements, runs the crossing decision over
// F = {X subseteq C_L : |X| >= ceil(n/2)}. The oracle must be downward
// closed. Sound unconditionally; complete when some solution's sets fit
// their containers and some qualifying L collects at least half the
// universe. The first accepting L in ascending mask order is reported.
ContainerCoverResult setCoverWithContainers(const MemberOracle& oracle,
                                            const std::vector<Mask>& containers, int n,
                                            double epsThreshold = 0.1,
                                            Exec exec = Exec::Serial);

// --- Bin packing -----------------------------------------------------------------

struct TightPackingResult {
    bool packable = false;
    std::size_t familySize = 0;  // candidate half-weight masks enumerated
    Mask witnessHalf = 0;
    int witnessSplit = -1;
    std::uint64_t touchedMasks = 0;
};

// Packing decision for tight instances (total weight = bins * capacity,
// checked; negative weights rejected). Enumerates, by meet-in-the-middle,
// all masks X with w(X) = total/2 and |X| >= ceil(n/2), and runs the
// crossing decision with the weight-exactly-capacity oracle. Acceptance
// always certifies a packing; for an even number of bins every packable
// tight instance is accepted, while an odd bin count can yield a false
// negative (no half of a partition need sit on the half-weight layer).
TightPackingResult binPackingTight(const WeightedInstance& inst);

struct DistinctSumsDpResult {
    bool packable = false;
    std::size_t distinctSums = 0;     // |w(2^[n])|
    std::uint64_t statesVisited = 0;  // sorted load tuples expanded
};

// Exact packing decision for general instances: dynamic programming over
// sorted k-tuples of bin loads, one item at a time, with every load a
// realizable subset sum. The state space is estimated as distinctSums^k
// first; BudgetError if it exceeds stateBudget.
DistinctSumsDpResult binPackingDistinctSumsDP(const WeightedInstance& inst,
                                              std::uint64_t stateBudget = 1ULL << 26);

}  // namespace exactexpo::covering
