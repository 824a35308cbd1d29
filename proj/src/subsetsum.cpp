#include "exactexpo/subsetsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "exactexpo/algebra.hpp"

namespace exactexpo::subsetsum {

namespace {

// Sum list of all subsets of the given item indices, as (sum, submask over
// `items`) pairs in submask order.
std::vector<std::pair<BigInt, Mask>> allSums(const WeightedInstance& inst,
                                             const std::vector<int>& items) {
    const std::size_t count = std::size_t(1) << items.size();
    auto out = std::vector<std::pair<BigInt, Mask>>();
    out.reserve(count);
    out.emplace_back(0, 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::size_t have = out.size();
        for (std::size_t s = 0; s < have; ++s)
            out.emplace_back(out[s].first + inst.w[std::size_t(items[i])],
                             out[s].second | (Mask(1) << i));
    }
    // doubling appends in submask order already: entry k has submask k
    return out;
}

Mask expandSubmask(Mask sub, const std::vector<int>& items) {
    Mask full = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (sub >> i & 1) full |= Mask(1) << items[i];
    return full;
}

}  // namespace

MeetInMiddleResult meetInMiddle(const WeightedInstance& inst) {
    if (inst.n < 0 || inst.n > 62) throw InvalidArgument("meetInMiddle: supports 0 <= n <= 62");
    const int nl = (inst.n + 1) / 2;
    auto leftItems = std::vector<int>();
    auto rightItems = std::vector<int>();
    for (int i = 0; i < inst.n; ++i) (i < nl ? leftItems : rightItems).push_back(i);
    const auto left = allSums(inst, leftItems);
    auto right = allSums(inst, rightItems);
    std::sort(right.begin(), right.end());
    MeetInMiddleResult res;
    res.leftListSize = left.size();
    res.rightListSize = right.size();
    for (const auto& [sum, sub] : left) {
        const BigInt need = inst.target - sum;
        auto it = std::lower_bound(right.begin(), right.end(),
                                   std::pair<BigInt, Mask>(need, 0));
        if (it != right.end() && it->first == need) {
            res.witness = expandSubmask(sub, leftItems) | expandSubmask(it->second, rightItems);
            return res;
        }
    }
    return res;
}

ResidueList buildResidueList(const WeightedInstance& inst, const ResidueListSpec& spec) {
    const int n = inst.n;
    const std::uint64_t p = spec.modulus;
    const int card = spec.cardinality;
    if (p == 0) throw InvalidArgument("buildResidueList: modulus must be positive");
    if (spec.residue >= p) throw InvalidArgument("buildResidueList: residue must be below the modulus");
    if (card < 0 || card > n) throw InvalidArgument("buildResidueList: cardinality out of range");
    if (n > 62) throw InvalidArgument("buildResidueList: supports n <= 62");
    auto wmod = std::vector<std::uint64_t>(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        BigInt r = inst.w[std::size_t(i)] % p;
        if (r < 0) r += p;
        wmod[std::size_t(i)] = r.convert_to<std::uint64_t>();
    }
    ResidueList out;
    // reach[i][j][k]: from prefix position i with residue j and k items
    // picked, the node (n, residue, card) is reachable.
    const std::size_t layer = std::size_t(p) * std::size_t(card + 1);
    auto reach = std::vector<char>(std::size_t(n + 1) * layer, char(0));
    auto at = [&](int i, std::uint64_t j, int k) -> char& {
        return reach[std::size_t(i) * layer + std::size_t(j) * std::size_t(card + 1) +
                     std::size_t(k)];
    };
    at(n, spec.residue, card) = 1;
    out.dpStatesTouched = layer;  // the seeded final layer
    for (int i = n - 1; i >= 0; --i)
        for (std::uint64_t j = 0; j < p; ++j)
            for (int k = 0; k <= card; ++k) {
                char ok = at(i + 1, j, k);
                if (!ok && k < card) ok = at(i + 1, (j + wmod[std::size_t(i)]) % p, k + 1);
                at(i, j, k) = ok;
                ++out.dpStatesTouched;
            }
    if (!at(0, 0, 0)) return out;  // no admissible subset
    // Walk every admissible path; the partial mask/sum evolve with the stack.
    auto stackMask = std::vector<Mask>();
    auto stackSum = std::vector<BigInt>();
    struct Frame {
        int i;
        std::uint64_t j;
        int k;
        int stage;  // 0 = try skip, 1 = try take, 2 = done
    };
    auto stack = std::vector<Frame>();
    stack.push_back({0, 0, 0, 0});
    stackMask.push_back(0);
    stackSum.push_back(0);
    while (!stack.empty()) {
        const Frame cur = stack.back();  // copy: pushes below may reallocate
        if (cur.i == n) {
            out.entries.emplace_back(stackSum.back(), stackMask.back());
            stack.pop_back();
            stackMask.pop_back();
            stackSum.pop_back();
            continue;
        }
        if (cur.stage == 0) {
            stack.back().stage = 1;
            if (at(cur.i + 1, cur.j, cur.k)) {
                ++out.backtrackSteps;
                const Mask m = stackMask.back();
                const BigInt s = stackSum.back();
                stack.push_back({cur.i + 1, cur.j, cur.k, 0});
                stackMask.push_back(m);
                stackSum.push_back(s);
            }
        } else if (cur.stage == 1) {
            stack.back().stage = 2;
            const std::uint64_t j2 = (cur.j + wmod[std::size_t(cur.i)]) % p;
            if (cur.k < card && at(cur.i + 1, j2, cur.k + 1)) {
                ++out.backtrackSteps;
                const Mask m = stackMask.back() | (Mask(1) << cur.i);
                const BigInt s = stackSum.back() + inst.w[std::size_t(cur.i)];
                stack.push_back({cur.i + 1, j2, cur.k + 1, 0});
                stackMask.push_back(m);
                stackSum.push_back(s);
            }
        } else {
            stack.pop_back();
            stackMask.pop_back();
            stackSum.pop_back();
        }
    }
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

namespace {

struct RepetitionOutcome {
    std::optional<Mask> witness;
    std::uint64_t prime = 0;
    std::uint64_t leftResidue = 0;
    std::uint64_t leftListSize = 0;
    std::uint64_t rightListSize = 0;
    std::uint64_t collisionsScanned = 0;
};

std::pair<std::uint64_t, std::uint64_t> primeRange(int n) {
    const double lo = std::ceil(std::exp2(0.45 * n));
    const double hi = std::floor(std::exp2(0.45 * n + 1));
    std::uint64_t l = std::max<std::uint64_t>(2, std::uint64_t(lo));
    std::uint64_t h = std::max(l + 1, std::uint64_t(hi));
    return {l, h};
}

RepetitionOutcome runRepetition(const WeightedInstance& inst, std::uint64_t repSeed) {
    const int n = inst.n;
    const int card = (n + 3) / 4;
    Rng rng(repSeed);
    const auto [lo, hi] = primeRange(n);
    std::uint64_t p = 0;
    try {
        p = algebra::samplePrime(lo, hi, rng.next());
    } catch (const InvalidArgument&) {
        // Range without a prime (tiny n): smallest prime at or above the low
        // end keeps the residue split well-defined.
        for (std::uint64_t c = std::max<std::uint64_t>(lo, 2);; ++c)
            if (algebra::isPrime(c)) {
                p = c;
                break;
            }
    }
    const std::uint64_t tL = rng.below(p);
    BigInt tmod = inst.target % p;
    if (tmod < 0) tmod += p;
    const std::uint64_t tR = (tmod.convert_to<std::uint64_t>() + p - tL) % p;
    RepetitionOutcome o;
    o.prime = p;
    o.leftResidue = tL;
    const ResidueList left = buildResidueList(inst, {p, tL, card});
    const ResidueList right = buildResidueList(inst, {p, tR, card});
    o.leftListSize = left.entries.size();
    o.rightListSize = right.entries.size();
    for (const auto& [sum, x] : left.entries) {
        const BigInt need = inst.target - sum;
        auto it = std::lower_bound(right.entries.begin(), right.entries.end(),
                                   std::pair<BigInt, Mask>(need, 0));
        for (; it != right.entries.end() && it->first == need; ++it) {
            ++o.collisionsScanned;
            if ((x & it->second) == 0) {
                const Mask cand = x | it->second;
                if (inst.weightOf(cand) == inst.target) {  // self-validation
                    o.witness = cand;
                    return o;
                }
            }
        }
    }
    return o;
}

}  // namespace

RepresentationResult representationMethod(const WeightedInstance& inst, std::uint64_t seed,
                                          int budgetR, Exec exec) {
    if (budgetR < 1) throw InvalidArgument("representationMethod: budget must be positive");
    if (inst.n > 62) throw InvalidArgument("representationMethod: supports n <= 62");
    const std::uint64_t winner = firstWinnerIndex(
        std::uint64_t(budgetR), exec, [&](std::uint64_t r) {
            return runRepetition(inst, deriveSeed(seed, r)).witness.has_value();
        });
    RepresentationResult res;
    const std::uint64_t report = winner == kNoWinner ? 0 : winner;
    RepetitionOutcome o = runRepetition(inst, deriveSeed(seed, report));
    res.prime = o.prime;
    res.leftResidue = o.leftResidue;
    res.leftListSize = o.leftListSize;
    res.rightListSize = o.rightListSize;
    res.collisionsScanned = o.collisionsScanned;
    if (winner != kNoWinner) {
        res.witness = o.witness;
        res.successRepetition = int(winner) + 1;
    }
    return res;
}

SubsetSumDiagnostics diagnostics(const WeightedInstance& inst) {
    const int n = inst.n;
    if (n > 24)
        throw InvalidArgument("diagnostics: n <= 24 (the exact sum tables exceed the budget)");
    SubsetSumDiagnostics d;
    d.cardinality = (n + 3) / 4;
    // Pseudo-solutions: counts of cardinality-restricted sums, convolved at
    // the target.
    auto byCardSum = std::map<BigInt, std::uint64_t>();
    if (d.cardinality == 0) {
        byCardSum[0] = 1;
    } else {
        for (Mask x = (Mask(1) << d.cardinality) - 1; x < (Mask(1) << n);) {
            ++byCardSum[inst.weightOf(x)];
            const Mask lowBit = x & (~x + 1);
            const Mask ripple = x + lowBit;
            x = ripple | (((x ^ ripple) >> 2) / lowBit);
        }
    }
    for (const auto& [sum, count] : byCardSum) {
        const auto it = byCardSum.find(inst.target - sum);
        if (it != byCardSum.end()) d.pseudoSolutionCount += count * it->second;
    }
    // Full sum multiset.
    auto sums = std::vector<BigInt>();
    sums.reserve(std::size_t(1) << n);
    sums.emplace_back(0);
    for (int i = 0; i < n; ++i) {
        const std::size_t have = sums.size();
        for (std::size_t s = 0; s < have; ++s) sums.push_back(sums[s] + inst.w[std::size_t(i)]);
    }
    std::sort(sums.begin(), sums.end());
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (i == 0 || sums[i] != sums[i - 1]) {
            ++d.distinctSubsetSums;
            run = 0;
        }
        d.maxFrequency = std::max(d.maxFrequency, ++run);
    }
    return d;
}

}  // namespace exactexpo::subsetsum
