#include "exactexpo/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "exactexpo/algebra.hpp"

namespace exactexpo::covering {

namespace {

constexpr int kMaxDenseBits = 26;  // 2^n vector guard for the dense transform

using algebra::BigIntRing;

}  // namespace

SetCoverCount setCover2n(const SetSystem& S, int k, Exec exec) {
    if (k < 0) throw InvalidArgument("setCover2n: k must be >= 0");
    const int n = S.n;
    if (n > kMaxDenseBits) throw BudgetError("setCover2n: universe too large for a 2^n vector");
    SetCoverCount res;
    std::vector<BigInt> v(std::size_t(1) << n, 0);
    for (std::size_t i = 0; i < S.sets.size(); ++i) v[S.sets[i]] += S.multiplicity(i);

    BigIntRing R;
    std::uint64_t zt = 0, mt = 0;
    algebra::zetaTransform(R, v, n, exec, &zt);
    const std::int64_t total = std::int64_t(v.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workerCount()) \
    if (exec == Exec::Parallel && workerCount() > 1)
#endif
    for (std::int64_t i = 0; i < total; ++i) {
        BigInt p = 1;
        for (int j = 0; j < k; ++j) p *= v[std::size_t(i)];
        v[std::size_t(i)] = p;
    }
    algebra::moebiusTransform(R, v, n, exec, &mt);

    res.count = v[fullMask(n)];
    res.covered = res.count > 0;
    res.touchedPerPass = std::uint64_t(1) << n;
    res.passes = 2 * n + 1;
    res.touchedTotal = zt + mt + res.touchedPerPass;
    return res;
}

TrimmedCoverResult setCoverTrimmed(const SetSystem& S, int k) {
    if (k < 0) throw InvalidArgument("setCoverTrimmed: k must be >= 0");
    const int n = S.n;
    TrimmedCoverResult res;
    if (k == 0) {  // the empty tuple covers U only when U is empty
        res.count = n == 0 ? 1 : 0;
        res.covered = res.count > 0;
        return res;
    }
    if (S.sets.empty()) return res;

    std::vector<std::pair<Mask, BigInt>> sparse;
    sparse.reserve(S.sets.size());
    for (std::size_t i = 0; i < S.sets.size(); ++i)
        sparse.emplace_back(S.sets[i], BigInt(S.multiplicity(i)));
    BigIntRing R;
    std::uint64_t touched = 0;
    auto z = algebra::trimmedUpClosureTransform(R, algebra::SmallMatrixKind::Zeta, sparse, n,
                                                &touched);
    res.closureSize = touched;
    // Top Moebius coefficient: alternating sum of the k-th powers over the
    // closure (the transform input is zero everywhere else).
    for (const auto& [mask, zval] : z) {
        BigInt p = 1;
        for (int j = 0; j < k; ++j) p *= zval;
        if ((n - popcount(mask)) & 1)
            res.count -= p;
        else
            res.count += p;
    }
    res.covered = res.count > 0;
    res.touchedTotal = res.closureSize * std::uint64_t(n + 2);
    return res;
}

int CoverTable::indexOf(Mask m) const {
    auto it = std::lower_bound(family.begin(), family.end(), m);
    if (it == family.end() || *it != m) return -1;
    return int(it - family.begin());
}

CoverTable coverWithinISets(const MemberOracle& oracle, std::vector<Mask> family, int k) {
    if (k < 0) throw InvalidArgument("coverWithinISets: k must be >= 0");
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    {
        std::unordered_set<Mask> present(family.begin(), family.end());
        for (Mask f : family) {
            Mask rest = f;
            while (rest) {
                const Mask bit = rest & (~rest + 1);
                if (!present.count(f ^ bit))
                    throw InvalidArgument("coverWithinISets: family is not down-closed");
                rest ^= bit;
            }
        }
    }
    CoverTable table;
    table.family = std::move(family);
    const std::size_t m = table.family.size();
    table.exactTuples.assign(m, std::vector<BigInt>(std::size_t(k) + 1, 0));
    if (m == 0) return table;

    const int n = 64 - std::countl_zero(table.family.back() | 1);  // bits spanned
    std::vector<BigInt> g(m, 0);
    for (std::size_t i = 0; i < m; ++i) g[i] = oracle(table.family[i]) ? 1 : 0;
    table.oracleCalls = m;
    BigIntRing R;
    algebra::zetaOnFamily(R, table.family, g, n);  // g[F] = #members inside F

    for (int i = 0; i <= k; ++i) {
        std::vector<BigInt> h(m);
        for (std::size_t j = 0; j < m; ++j) {
            BigInt p = 1;
            for (int t = 0; t < i; ++t) p *= g[j];
            h[j] = p;
        }
        algebra::moebiusOnFamily(R, table.family, h, n);
        for (std::size_t j = 0; j < m; ++j) table.exactTuples[j][std::size_t(i)] = h[j];
    }
    return table;
}

CrossingResult crossMiddleLayer(const MemberOracle& oracle, const std::vector<Mask>& half,
                                int n, int k) {
    if (k < 0) throw InvalidArgument("crossMiddleLayer: k must be >= 0");
    const int minSize = (n + 1) / 2;
    const Mask U = fullMask(n);
    for (Mask f : half) {
        if (f & ~U) throw InvalidArgument("crossMiddleLayer: mask outside the universe");
        if (popcount(f) < minSize)
            throw InvalidArgument("crossMiddleLayer: a mask is below the middle layer");
    }
    CrossingResult res;
    if (half.empty()) return res;

    std::vector<Mask> comps;
    comps.reserve(half.size());
    for (Mask f : half) comps.push_back(U & ~f);
    const std::vector<Mask> downF = algebra::downClosure(half);
    const std::vector<Mask> downC = algebra::downClosure(comps);
    res.touchedMasks = downF.size() + downC.size();

    const CoverTable front = coverWithinISets(oracle, downF, k);
    const CoverTable back = coverWithinISets(oracle, downC, k);
    res.oracleCalls = front.oracleCalls + back.oracleCalls;

    for (Mask f : half) {
        for (int a = 0; a <= k; ++a) {
            if (front.coverable(f, a) && back.coverable(U & ~f, k - a)) {
                res.covered = true;
                res.witnessHalf = f;
                res.witnessSplit = a;
                return res;
            }
        }
    }
    return res;
}

LargeKResult setCoverLargeK(const SetSystem& S, int k, double sigma, std::uint64_t seed,
                            const LargeKConfig& config, Exec exec) {
    const int n = S.n;
    if (k < 1) throw InvalidArgument("setCoverLargeK: k must be >= 1");
    if (double(k) + 1e-9 < sigma * n)
        throw InvalidArgument("setCoverLargeK: requires k >= sigma*n");
    LargeKResult res;

    // Guess each large set; the rest of the cover is found exactly on the
    // shrunken universe.
    for (std::size_t i = 0; i < S.sets.size(); ++i) {
        if (double(popcount(S.sets[i])) + 1e-9 < config.eps1 * n) continue;
        const Mask guessed = S.sets[i];
        std::vector<int> keep;
        for (int v = 0; v < n; ++v)
            if (!hasBit(guessed, v)) keep.push_back(v);
        SetSystem induced;
        induced.n = int(keep.size());
        std::unordered_set<Mask> seen;
        for (Mask s : S.sets) {
            Mask remapped = 0;
            for (std::size_t j = 0; j < keep.size(); ++j)
                if (hasBit(s, keep[j])) remapped |= Mask(1) << j;
            if (seen.insert(remapped).second) induced.sets.push_back(remapped);
        }
        if (setCover2n(induced, k - 1, exec).covered) {
            res.covered = true;
            res.largeSetBranch = int(i);
            return res;
        }
    }

    const int lo = (n + 1) / 2;
    const int hi = std::max(lo, int(std::floor((0.5 + config.eps2) * n)));
    const double p = std::pow(2.0, -sigma * double(n));
    const std::vector<Mask> downS = algebra::downClosure(S.sets);
    const std::unordered_set<Mask> downSet(downS.begin(), downS.end());
    MemberOracle oracle = [&](Mask x) { return downSet.count(x) > 0; };

    const std::uint64_t winner =
        firstWinnerIndex(std::uint64_t(config.repeats), exec, [&](std::uint64_t t) {
            Rng rng(deriveSeed(seed, t));
            std::vector<Mask> sampled;
            for (int size = lo; size <= hi && size <= n; ++size) {
                // walk all size-`size` masks in ascending order
                Mask m = fullMask(size);
                for (;;) {
                    if (rng.bernoulli(p)) sampled.push_back(m);
                    if (size == 0 || m == (fullMask(size) << (n - size))) break;
                    const Mask c = m & (~m + 1);
                    const Mask r = m + c;
                    m = r | (((m ^ r) >> 2) / c);
                }
            }
            return crossMiddleLayer(oracle, sampled, n, k).covered;
        });
    if (winner != kNoWinner) {
        res.covered = true;
        res.successTrial = int(winner) + 1;
    }
    return res;
}

ContainerCoverResult setCoverWithContainers(const MemberOracle& oracle,
                                            const std::vector<Mask>& containers, int n,
                                            double epsThreshold, Exec exec) {
    const int k = int(containers.size());
    if (k < 1) throw InvalidArgument("setCoverWithContainers: need at least one container");
    if (k > 26) throw BudgetError("setCoverWithContainers: too many containers for a 2^k loop");
    ContainerCoverResult res;
    res.subsetsTried = std::uint64_t(1) << k;
    const int minSize = (n + 1) / 2;

    const std::uint64_t winner =
        firstWinnerIndex(res.subsetsTried, exec, [&](std::uint64_t L) {
            Mask cl = 0;
            for (int i = 0; i < k; ++i)
                if ((L >> i) & 1) cl |= containers[std::size_t(i)];
            if (double(popcount(cl)) > (1.0 - epsThreshold) * n + 1e-9) return false;
            std::vector<Mask> half;
            Mask sub = cl;  // all subsets of the container union, large ones kept
            for (;;) {
                if (popcount(sub) >= minSize) half.push_back(sub);
                if (sub == 0) break;
                sub = (sub - 1) & cl;
            }
            if (half.empty()) return false;
            return crossMiddleLayer(oracle, half, n, k).covered;
        });
    if (winner != kNoWinner) {
        res.covered = true;
        res.acceptedSubset = winner;
    }
    return res;
}

namespace {

void requireNonNegativeWeights(const WeightedInstance& inst, const char* who) {
    for (const auto& w : inst.w)
        if (w < 0) throw InvalidArgument(std::string(who) + ": negative weights unsupported");
}

}  // namespace

TightPackingResult binPackingTight(const WeightedInstance& inst) {
    if (!inst.isBinPacking) throw InvalidArgument("binPackingTight: not a bin packing instance");
    requireNonNegativeWeights(inst, "binPackingTight");
    const int n = inst.n;
    const int k = inst.bins;
    if (k < 1) throw InvalidArgument("binPackingTight: need at least one bin");
    const BigInt total = inst.weightOf(fullMask(n));
    if (total != inst.capacity * k)
        throw InvalidArgument("binPackingTight: instance is not tight (total != bins*capacity)");

    TightPackingResult res;
    if ((inst.capacity * k) % 2 != 0) return res;  // no half-weight layer exists
    const BigInt halfWeight = total / 2;
    const int minSize = (n + 1) / 2;

    // Meet in the middle: all masks X with w(X) = total/2 and |X| >= ceil(n/2).
    const int nl = n / 2;
    std::map<BigInt, std::vector<Mask>> right;
    for (Mask m = 0;; ++m) {
        Mask shifted = m << nl;
        right[inst.weightOf(shifted)].push_back(shifted);
        if (m == fullMask(n - nl)) break;
    }
    std::vector<Mask> half;
    for (Mask m = 0;; ++m) {
        auto it = right.find(halfWeight - inst.weightOf(m));
        if (it != right.end())
            for (Mask r : it->second)
                if (popcount(m | r) >= minSize) half.push_back(m | r);
        if (m == fullMask(nl)) break;
    }
    std::sort(half.begin(), half.end());
    res.familySize = half.size();
    if (half.empty()) return res;

    MemberOracle binOracle = [&](Mask x) { return inst.weightOf(x) == inst.capacity; };
    const CrossingResult cross = crossMiddleLayer(binOracle, half, n, k);
    res.packable = cross.covered;
    res.witnessHalf = cross.witnessHalf;
    res.witnessSplit = cross.witnessSplit;
    res.touchedMasks = cross.touchedMasks;
    return res;
}

DistinctSumsDpResult binPackingDistinctSumsDP(const WeightedInstance& inst,
                                              std::uint64_t stateBudget) {
    if (!inst.isBinPacking)
        throw InvalidArgument("binPackingDistinctSumsDP: not a bin packing instance");
    requireNonNegativeWeights(inst, "binPackingDistinctSumsDP");
    const int n = inst.n;
    const int k = inst.bins;
    if (k < 1) throw InvalidArgument("binPackingDistinctSumsDP: need at least one bin");

    DistinctSumsDpResult res;
    // Realizable subset sums, built item by item.
    std::set<BigInt> sums{BigInt(0)};
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> added;
        for (const auto& s : sums) added.push_back(s + inst.w[std::size_t(i)]);
        sums.insert(added.begin(), added.end());
        if (sums.size() > stateBudget)
            throw BudgetError("binPackingDistinctSumsDP: subset-sum table exceeds the budget");
    }
    std::vector<BigInt> sumList(sums.begin(), sums.end());
    res.distinctSums = sumList.size();
    if (std::pow(double(res.distinctSums), double(k)) > double(stateBudget))
        throw BudgetError("binPackingDistinctSumsDP: state space estimate exceeds the budget");

    auto indexOfSum = [&](const BigInt& s) {
        return std::uint32_t(std::lower_bound(sumList.begin(), sumList.end(), s) -
                             sumList.begin());
    };

    // States: sorted k-tuples of load indices.
    std::set<std::vector<std::uint32_t>> frontier;
    frontier.insert(std::vector<std::uint32_t>(std::size_t(k), indexOfSum(0)));
    for (int i = 0; i < n; ++i) {
        std::set<std::vector<std::uint32_t>> next;
        for (const auto& state : frontier) {
            for (int b = 0; b < k; ++b) {
                if (b > 0 && state[std::size_t(b)] == state[std::size_t(b - 1)])
                    continue;  // identical load: same successor state
                const BigInt load = sumList[state[std::size_t(b)]] + inst.w[std::size_t(i)];
                if (load > inst.capacity) continue;
                std::vector<std::uint32_t> succ = state;
                succ[std::size_t(b)] = indexOfSum(load);
                std::sort(succ.begin(), succ.end());
                next.insert(std::move(succ));
            }
        }
        res.statesVisited += next.size();
        if (res.statesVisited > stateBudget)
            throw BudgetError("binPackingDistinctSumsDP: visited states exceed the budget");
        frontier = std::move(next);
        if (frontier.empty()) return res;
    }
    res.packable = !frontier.empty();
    return res;
}

}  // namespace exactexpo::covering
