#include "exactexpo/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace exactexpo::sparsifier {

namespace {

constexpr int kDepthCap = 10000;  // safety valve; termination is guaranteed

bool sizeMaskLess(Mask a, Mask b) {
    const int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
}

// All subsets of `set` with exactly `want` elements, ascending by mask.
void enumerateSubsetsOfSize(Mask set, int want, std::vector<Mask>& out) {
    std::vector<int> bits;
    for (int b = 0; b < 64; ++b)
        if (hasBit(set, b)) bits.push_back(b);
    const int s = int(bits.size());
    if (want > s) return;
    std::vector<int> pick(std::size_t(want), 0);
    for (int i = 0; i < want; ++i) pick[std::size_t(i)] = i;
    for (;;) {
        Mask m = 0;
        for (int i : pick) m |= Mask(1) << bits[std::size_t(i)];
        out.push_back(m);
        int i = want - 1;
        while (i >= 0 && pick[std::size_t(i)] == s - want + i) --i;
        if (i < 0) break;
        ++pick[std::size_t(i)];
        for (int j = i + 1; j < want; ++j) pick[std::size_t(j)] = pick[std::size_t(j - 1)] + 1;
    }
}

}  // namespace

SparsifierConfig SparsifierConfig::make(int k, double epsilon) {
    if (k < 1) throw InvalidArgument("SparsifierConfig: k must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw InvalidArgument("SparsifierConfig: epsilon must lie in (0, 1)");
    SparsifierConfig cfg;
    cfg.k = k;
    cfg.epsilon = epsilon;
    const double raw = double(k) * std::log2(1.0 / epsilon) / epsilon;
    cfg.alpha = std::max<std::uint64_t>(1, std::uint64_t(std::ceil(raw)));
    return cfg;
}

BigInt SparsifierConfig::beta(int j) const {
    if (j < 1) throw InvalidArgument("SparsifierConfig::beta: j must be >= 1");
    BigInt base = BigInt(4) * alpha * k;
    BigInt r = 1;
    for (int i = 1; i < j; ++i) r *= base;
    return r;
}

BigInt SparsifierConfig::theta(int j) const { return BigInt(alpha) * beta(j); }

BigInt SparsifierConfig::degreeBound() const { return k == 1 ? BigInt(1) : theta(k - 1); }

std::vector<Mask> minimalize(std::vector<Mask> family) {
    std::sort(family.begin(), family.end(), sizeMaskLess);
    family.erase(std::unique(family.begin(), family.end()), family.end());
    std::vector<Mask> out;
    out.reserve(family.size());
    for (Mask f : family) {
        bool dominated = false;
        for (Mask m : out) {
            if ((m & f) == m) {  // m subseteq f; m != f after dedup unless equal size
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(f);
    }
    return out;
}

SetSystem minimalize(const SetSystem& fam) {
    SetSystem out;
    out.n = fam.n;
    out.sets = minimalize(fam.sets);
    return out;
}

std::optional<Flower> findGoodFlower(const std::vector<Mask>& family, int s, int p,
                                     const BigInt& theta) {
    if (p < 1 || p > s - 1) throw InvalidArgument("findGoodFlower: need 1 <= p <= s-1");
    std::unordered_map<Mask, std::vector<Mask>> byHeart;
    std::vector<Mask> hearts;
    for (Mask set : family) {
        if (popcount(set) != s) continue;
        hearts.clear();
        enumerateSubsetsOfSize(set, s - p, hearts);
        for (Mask h : hearts) byHeart[h].push_back(set);
    }
    bool found = false;
    Mask best = 0;
    for (const auto& [h, members] : byHeart) {
        if (BigInt(members.size()) < theta) continue;
        if (!found || h < best) {
            found = true;
            best = h;
        }
    }
    if (!found) return std::nullopt;
    Flower fl;
    fl.heart = best;
    fl.petalSize = p;
    fl.members = byHeart[best];
    std::sort(fl.members.begin(), fl.members.end());
    return fl;
}

namespace {

void reduceRec(const std::vector<Mask>& family, int n, const SparsifierConfig& cfg,
               const BranchVisitor& visitor, int depth, std::vector<SetSystem>& out) {
    if (depth > kDepthCap)
        throw std::runtime_error("sparsifier::reduce: recursion depth cap exceeded");
    for (int s = 2; s <= cfg.k; ++s) {
        for (int p = 1; p <= s - 1; ++p) {
            auto flower = findGoodFlower(family, s, p, cfg.theta(p));
            if (!flower) continue;
            std::vector<Mask> heartBranch = family;
            heartBranch.push_back(flower->heart);
            heartBranch = minimalize(std::move(heartBranch));
            std::vector<Mask> petalBranch = family;
            for (Mask m : flower->members) petalBranch.push_back(m & ~flower->heart);
            petalBranch = minimalize(std::move(petalBranch));
            if (visitor) {
                visitor(family, heartBranch);
                visitor(family, petalBranch);
            }
            reduceRec(heartBranch, n, cfg, visitor, depth + 1, out);
            reduceRec(petalBranch, n, cfg, visitor, depth + 1, out);
            return;
        }
    }
    SetSystem leaf;
    leaf.n = n;
    leaf.sets = family;
    out.push_back(std::move(leaf));
}

}  // namespace

std::vector<SetSystem> reduce(const SetSystem& F, const SparsifierConfig& cfg,
                              const BranchVisitor& visitor) {
    for (Mask s : F.sets)
        if (popcount(s) > cfg.k)
            throw InvalidArgument("sparsifier::reduce: a set exceeds the width bound k");
    std::vector<SetSystem> out;
    reduceRec(minimalize(F.sets), F.n, cfg, visitor, 0, out);
    return out;
}

int sigma(const std::vector<Mask>& family, const SparsifierConfig& cfg) {
    if (cfg.k <= 1) return 0;
    int best = 0;
    for (int s = 1; s < cfg.k; ++s) {
        bool ok = true;
        for (int j = 2; j <= s && ok; ++j) {
            for (int h = 1; h <= j - 1 && ok; ++h) {
                const BigInt cap = 2 * cfg.theta(j - h);
                std::unordered_map<Mask, std::uint64_t> counts;
                std::vector<Mask> subs;
                for (Mask set : family) {
                    if (popcount(set) != j) continue;
                    subs.clear();
                    enumerateSubsetsOfSize(set, h, subs);
                    for (Mask sub : subs)
                        if (BigInt(++counts[sub]) > cap) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
            }
        }
        if (!ok) break;
        best = s;
    }
    return best;
}

namespace {

bool hitsAll(const std::vector<Mask>& family, Mask x) {
    for (Mask s : family)
        if ((s & x) == 0) return false;
    return true;
}

}  // namespace

SparsifierReport verifySparsifierOutput(const SetSystem& F,
                                        const std::vector<SetSystem>& outputs,
                                        const SparsifierConfig& cfg) {
    if (F.n > 20) throw InvalidArgument("verifySparsifierOutput: universe too large (max 20)");
    SparsifierReport rep;
    rep.degreeBound = cfg.degreeBound();
    rep.outputCount = outputs.size();
    rep.outputCap = std::pow(2.0, 2.0 * cfg.epsilon * double(F.n));
    rep.countOk = double(rep.outputCount) <= rep.outputCap;

    rep.equivalenceHolds = true;
    for (Mask x = 0; x <= fullMask(F.n); ++x) {
        const bool hitsInput = hitsAll(F.sets, x);
        bool hitsSome = false;
        for (const auto& o : outputs)
            if (hitsAll(o.sets, x)) {
                hitsSome = true;
                break;
            }
        if (hitsInput != hitsSome) {
            rep.equivalenceHolds = false;
            break;
        }
        if (x == fullMask(F.n)) break;  // guard wrap at n = 64 (unreachable: n <= 20)
    }

    rep.maxFrequency = 0;
    for (const auto& o : outputs) {
        for (int v = 0; v < F.n; ++v) {
            std::uint64_t freq = 0;
            for (Mask s : o.sets) freq += hasBit(s, v);
            rep.maxFrequency = std::max(rep.maxFrequency, freq);
        }
    }
    rep.frequencyOk = BigInt(rep.maxFrequency) <= rep.degreeBound;
    return rep;
}

}  // namespace exactexpo::sparsifier
