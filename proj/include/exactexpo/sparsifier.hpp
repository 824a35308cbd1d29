#pragma once

// Branching sparsifier for set systems with sets of size <= k: repeatedly
// finds a "flower" (many equal-size sets sharing a common core) and branches
// on hitting the core versus hitting all the petals. The result is a list of
// systems, each of bounded element frequency, whose hitting sets are exactly
// the hitting sets of the input.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "exactexpo/common.hpp"
#include "exactexpo/instances.hpp"

namespace exactexpo::sparsifier {

struct SparsifierConfig {
    int k = 2;            // maximum set size
    double epsilon = 0.5; // trade-off knob: smaller -> more branches, sparser outputs
    std::uint64_t alpha = 1;

    // alpha = max(1, ceil(k * lg(1/eps) / eps)); integral so the flower
    // threshold comparisons are unambiguous.
    static SparsifierConfig make(int k, double epsilon);

    BigInt beta(int j) const;   // (4*alpha*k)^(j-1), so beta(1) = 1
    BigInt theta(int j) const;  // alpha * beta(j), strictly increasing in j

    // Max element frequency guaranteed for every output: theta(k-1)
    // (1 for k = 1, where no branching ever happens and duplicates cannot
    // survive minimalization).
    BigInt degreeBound() const;
};

// z equal-size member sets all containing a common non-empty core `heart`;
// petalSize = |member| - |heart|.
struct Flower {
    std::vector<Mask> members;  // sorted ascending by mask value
    Mask heart = 0;
    int petalSize = 0;
};

// Inclusion-wise minimal sets of the family, deduplicated, sorted ascending
// by (size, mask value).
std::vector<Mask> minimalize(std::vector<Mask> family);
SetSystem minimalize(const SetSystem& fam);

// Finds an s-flower of petal size p with at least `theta` members: a
// (s-p)-subset H contained in >= theta size-s sets of the family. Returns
// the flower whose members are ALL size-s supersets of the smallest (by
// mask value) qualifying H, or nullopt. Requires 1 <= p <= s-1.
std::optional<Flower> findGoodFlower(const std::vector<Mask>& family, int s, int p,
                                     const BigInt& theta);

// Called on every branching step with the parent family and one child
// family (minimalized); used by tests to audit the recursion.
using BranchVisitor = std::function<void(const std::vector<Mask>& parent,
                                         const std::vector<Mask>& child)>;

// Sparsifies F (all sets of size <= k). Scans s = 2..k ascending and petal
// size p = 1..s-1 ascending, branching on the first good flower: the core
// branch adds {heart}, the petal branch adds every member's petal, both
// re-minimalized; the core branch's outputs come first. A subset X hits F
// iff it hits at least one output, and every element occurs in at most
// degreeBound() sets of each output.
std::vector<SetSystem> reduce(const SetSystem& F, const SparsifierConfig& cfg,
                              const BranchVisitor& visitor = nullptr);

// Concentration phase of a family: the largest s < k such that for every
// j <= s and every h < j, each h-set is contained in at most 2*theta(j-h)
// sets of size j (0 when k = 1). Never decreases along reduce's branches;
// recomputed on demand, used only for verification.
int sigma(const std::vector<Mask>& family, const SparsifierConfig& cfg);

struct SparsifierReport {
    bool equivalenceHolds = false;  // hitting sets preserved (exhaustive over 2^n)
    bool frequencyOk = false;       // max element frequency <= degreeBound()
    bool countOk = false;           // outputCount <= 2^(2*eps*n)
    std::uint64_t maxFrequency = 0;
    BigInt degreeBound = 0;
    std::size_t outputCount = 0;
    double outputCap = 0.0;
};

// Exhaustive audit of reduce's contract; requires |U| <= 20.
SparsifierReport verifySparsifierOutput(const SetSystem& F,
                                        const std::vector<SetSystem>& outputs,
                                        const SparsifierConfig& cfg);

}  // namespace exactexpo::sparsifier
