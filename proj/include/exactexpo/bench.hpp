#pragma once

// Benchmark harness: runs selected solvers over seeded instance sweeps and
// reports their operation counters as CSV. Counters, not wall-clock time,
// are the contract: every column below is an exact, reproducible integer,
// and elapsed time is advisory (and suppressed entirely by --no-timing).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exactexpo/common.hpp"

namespace exactexpo::bench {

// One measurement: a named algorithm on one generated instance. Counter
// slots that do not apply to the algorithm stay unset and render as empty
// CSV cells. The fixed column meanings are:
//   trials        planned probe count (ball-covering SAT: ceil(2^n / C(n,d));
//                 randomized rounds elsewhere)
//   success       1-based index of the first successful probe, 0 if none
//   leaf_calls    decided leaves of a branching / local-search recursion
//   list_left     enumerated sums for the first ceil(n/2) items
//   list_right    enumerated sums for the remaining floor(n/2) items
//   cut_loops     bipartition loop length (2^(n-1) for the cut sum,
//                 3^(n/2-1) for the narrow-cut sum)
//   masks_touched lattice slots read or written by a trimmed transform
//   closure_size  |up-closure of the input support|, computed independently
struct BenchRow {
    std::string algorithm;
    int n = 0;
    int instanceIndex = 0;
    bool decision = false;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> success;
    std::optional<std::uint64_t> leafCalls;
    std::optional<std::uint64_t> listLeft;
    std::optional<std::uint64_t> listRight;
    std::optional<std::uint64_t> cutLoops;
    std::optional<std::uint64_t> masksTouched;
    std::optional<std::uint64_t> closureSize;
    bool budgetExceeded = false;  // solver refused: reported, never dropped
    double elapsedMs = 0.0;
};

struct BenchSpec {
    std::vector<std::string> algorithms;  // subset of benchAlgorithms()
    int nMin = 4;
    int nMax = 12;
    int nStep = 2;
    int instancesPerSize = 3;
    std::uint64_t seed = 0;
    Exec exec = Exec::Serial;  // concurrency ACROSS rows; rows run solvers serially
};

// Supported algorithm ids, in canonical order:
//   schoening   random 3-CNF, ball-covering solver
//   local       random 3-CNF, deterministic Hamming-ball search, d = ceil(n/4)
//   monien      random 3-CNF, clause-branching solver
//   mitm        random subset sum, meet in the middle
//   ham2n       random even-order graph, cut-sum Hamiltonicity
//   narrowcut   random even-order graph (n <= 6), narrow-cut Hamiltonicity
//   trimmedzeta sparse random vector, up-closure-trimmed zeta transform
const std::vector<std::string>& benchAlgorithms();

// True when `algorithm` is defined at size n (parity and range constraints);
// ineligible (algorithm, n) pairs are skipped by runSweep, not emitted.
bool algorithmDefinedAt(const std::string& algorithm, int n);

// Runs the sweep. Rows are ordered by (position in spec.algorithms, n,
// instance index) regardless of execution interleaving. Row seeds derive
// from spec.seed as deriveSeed(seed, 2*key) for the instance and
// deriveSeed(seed, 2*key + 1) for the solver, key = (a<<24) | (n<<12) | i
// with a the algorithm's position. Throws InvalidArgument on unknown
// algorithm ids or an empty/invalid size range.
std::vector<BenchRow> runSweep(const BenchSpec& spec);

// Renders rows as CSV with the fixed header
//   algorithm,n,instance,decision,trials,success,leaf_calls,list_left,
//   list_right,cut_loops,masks_touched,closure_size,budget_exceeded,elapsed_ms
// followed, after each (algorithm, n) group, by a summary row whose
// instance column is "gmean" and whose counter cells hold the geometric
// mean (3 decimals) of the group's set cells. withTiming=false renders
// every elapsed_ms cell as "-" so equal sweeps are byte-identical.
std::string renderCsv(const std::vector<BenchRow>& rows, bool withTiming);

}  // namespace exactexpo::bench
