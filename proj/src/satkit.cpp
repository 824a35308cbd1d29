#include "exactexpo/satkit.hpp"

#include <algorithm>
#include <cstdlib>

namespace exactexpo::satkit {

namespace {

int varOf(int lit) { return std::abs(lit) - 1; }
bool signOf(int lit) { return lit > 0; }  // true = positive literal

}  // namespace

CnfFormula applyRestriction(const CnfFormula& phi, const Restriction& rho) {
    if (rho.size() != phi.numVars)
        throw InvalidArgument("applyRestriction: restriction length mismatch");
    CnfFormula out;
    out.numVars = phi.numVars;
    for (const auto& clause : phi.clauses) {
        std::vector<int> kept;
        bool satisfied = false;
        for (int lit : clause) {
            const std::int8_t v = rho.val[std::size_t(varOf(lit))];
            if (v == Restriction::kStar) {
                kept.push_back(lit);
            } else if ((v == 1) == signOf(lit)) {
                satisfied = true;
                break;
            }
            // else: literal falsified, dropped
        }
        if (!satisfied) out.clauses.push_back(std::move(kept));
    }
    return out;
}

// --- Canonical decision tree ------------------------------------------------

namespace {

struct CdtBuilder {
    const CnfFormula& phi;
    int cap;
    std::vector<std::int8_t> assign;  // -1 unassigned
    CanonicalDecisionTree tree;

    CdtBuilder(const CnfFormula& f, int depthCap)
        : phi(f), cap(depthCap), assign(std::size_t(f.numVars), -1) {}

    int makeLeaf(int value, int depth) {
        tree.depth = std::max(tree.depth, depth);
        tree.nodes.push_back(CdtNode{-1, -1, -1, value});
        return int(tree.nodes.size()) - 1;
    }

    // First clause not satisfied by the current partial assignment, or -1.
    int firstOpenClause() const {
        for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
            bool sat = false;
            for (int lit : phi.clauses[i]) {
                const std::int8_t v = assign[std::size_t(varOf(lit))];
                if (v != -1 && (v == 1) == signOf(lit)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return int(i);
        }
        return -1;
    }

    bool clauseSatisfied(int ci) const {
        for (int lit : phi.clauses[std::size_t(ci)]) {
            const std::int8_t v = assign[std::size_t(varOf(lit))];
            if (v != -1 && (v == 1) == signOf(lit)) return true;
        }
        return false;
    }

    int build(int depth) {
        const int ci = firstOpenClause();
        if (ci < 0) return makeLeaf(1, depth);
        std::vector<int> vars;
        for (int lit : phi.clauses[std::size_t(ci)])
            if (assign[std::size_t(varOf(lit))] == -1) vars.push_back(varOf(lit));
        if (vars.empty()) return makeLeaf(0, depth);  // clause falsified
        if (depth + int(vars.size()) > cap)
            throw BudgetError("buildCanonicalDecisionTree: depth cap exceeded");
        return expand(ci, vars, 0, depth);
    }

    int expand(int ci, const std::vector<int>& vars, int j, int depth) {
        if (j == int(vars.size()))
            return clauseSatisfied(ci) ? build(depth) : makeLeaf(0, depth);
        const int v = vars[std::size_t(j)];
        tree.nodes.push_back(CdtNode{v, -1, -1, -1});
        const int self = int(tree.nodes.size()) - 1;
        assign[std::size_t(v)] = 0;
        const int lo = expand(ci, vars, j + 1, depth + 1);
        assign[std::size_t(v)] = 1;
        const int hi = expand(ci, vars, j + 1, depth + 1);
        assign[std::size_t(v)] = -1;
        tree.nodes[std::size_t(self)].lo = lo;
        tree.nodes[std::size_t(self)].hi = hi;
        return self;
    }
};

}  // namespace

CanonicalDecisionTree buildCanonicalDecisionTree(const CnfFormula& phi, int depthCap) {
    CdtBuilder b(phi, depthCap);
    b.build(0);
    return std::move(b.tree);
}

// --- Branching solver ----------------------------------------------------------

namespace {

bool branchRec(const CnfFormula& phi, std::uint64_t& leaves) {
    if (phi.clauses.empty()) {
        ++leaves;
        return true;
    }
    for (const auto& clause : phi.clauses)
        if (clause.empty()) {
            ++leaves;
            return false;
        }
    const auto& clause = phi.clauses.front();
    for (std::size_t i = 0; i < clause.size(); ++i) {
        Restriction rho = Restriction::allStars(phi.numVars);
        for (std::size_t j = 0; j < i; ++j) rho.set(varOf(clause[j]), !signOf(clause[j]));
        rho.set(varOf(clause[i]), signOf(clause[i]));
        if (branchRec(applyRestriction(phi, rho), leaves)) return true;
    }
    return false;
}

}  // namespace

BranchingResult monienSpeckenmeyer(const CnfFormula& phi) {
    BranchingResult r;
    r.sat = branchRec(phi, r.leafCalls);
    return r;
}

// --- Local search -------------------------------------------------------------

namespace {

int firstUnsatisfiedClause(const CnfFormula& phi, const std::vector<std::uint8_t>& x) {
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        bool sat = false;
        for (int lit : phi.clauses[i])
            if (bool(x[std::size_t(varOf(lit))]) == signOf(lit)) {
                sat = true;
                break;
            }
        if (!sat) return int(i);
    }
    return -1;
}

bool localRec(const CnfFormula& phi, std::vector<std::uint8_t>& x, int radius,
              std::uint64_t& leaves) {
    const int ci = firstUnsatisfiedClause(phi, x);
    if (ci < 0) {
        ++leaves;
        return true;
    }
    const auto& clause = phi.clauses[std::size_t(ci)];
    if (radius == 0 || clause.empty()) {
        ++leaves;
        return false;
    }
    for (int lit : clause) {
        const std::size_t v = std::size_t(varOf(lit));
        x[v] ^= 1;
        const bool found = localRec(phi, x, radius - 1, leaves);
        x[v] ^= 1;
        if (found) return true;
    }
    return false;
}

}  // namespace

LocalSearchResult localSearch(const CnfFormula& phi, std::vector<std::uint8_t> x, int radius) {
    if (int(x.size()) != phi.numVars)
        throw InvalidArgument("localSearch: assignment length mismatch");
    if (radius < 0) throw InvalidArgument("localSearch: radius must be >= 0");
    LocalSearchResult r;
    r.sat = localRec(phi, x, radius, r.leafCalls);
    return r;
}

// --- Ball-covering solver --------------------------------------------------------

BallCoverResult schoening(const CnfFormula& phi, std::uint64_t seed, Exec exec) {
    const int n = phi.numVars;
    if (n < 1) throw InvalidArgument("schoening: need at least one variable");
    const int k = phi.maxWidth();
    BallCoverResult r;
    r.radius = (n + k) / (k + 1);  // ceil(n / (k+1)); a larger ball only helps
    BigInt binom = 1;
    for (int i = 1; i <= r.radius; ++i) binom = binom * (n - i + 1) / i;
    const BigInt planned = ((BigInt(1) << n) + binom - 1) / binom;
    if (planned > BigInt(~std::uint64_t(0)))
        throw BudgetError("schoening: planned trial count overflows 64 bits");
    r.trialsPlanned = planned.convert_to<std::uint64_t>();

    for (const auto& clause : phi.clauses)
        if (clause.empty()) return r;  // unsatisfiable; no trial can succeed

    const std::uint64_t winner =
        firstWinnerIndex(r.trialsPlanned, exec, [&](std::uint64_t t) {
            Rng rng(deriveSeed(seed, t));
            auto x = std::vector<std::uint8_t>(std::size_t(n));
            for (auto& b : x) b = std::uint8_t(rng.coin());
            return localSearch(phi, std::move(x), r.radius).sat;
        });
    if (winner != kNoWinner) {
        r.sat = true;
        r.successTrial = winner + 1;
    }
    return r;
}

// --- Restriction solver ------------------------------------------------------------

RestrictionSolverResult switchSat(const CnfFormula& phi, std::uint64_t seed, Exec exec) {
    const int n = phi.numVars;
    const int k = phi.maxWidth();
    RestrictionSolverResult r;
    const int starCount = k >= 1 ? n / (30 * k) : 0;  // floor(pn), p = 1/(30k)
    Rng rng(seed);
    r.starVars = rng.sampleSubset(n, starCount);
    std::vector<int> nonStars;
    nonStars.reserve(std::size_t(n - starCount));
    {
        std::size_t si = 0;
        for (int v = 0; v < n; ++v) {
            if (si < r.starVars.size() && r.starVars[si] == v)
                ++si;
            else
                nonStars.push_back(v);
        }
    }
    const int freeBits = n - starCount;
    if (freeBits > 62) throw BudgetError("switchSat: restriction loop count overflows");
    r.restrictionsPlanned = std::uint64_t(1) << freeBits;

    // Evaluates restriction idx: bit j of idx is the value of nonStars[j].
    auto evalOne = [&](std::uint64_t idx, std::uint64_t& nodes) {
        Restriction rho = Restriction::allStars(n);
        for (std::size_t j = 0; j < nonStars.size(); ++j)
            rho.set(nonStars[j], (idx >> j) & 1);
        const CanonicalDecisionTree tree =
            buildCanonicalDecisionTree(applyRestriction(phi, rho), n);
        nodes = tree.nodeCount();
        return tree.hasOneLeaf();
    };

    std::uint64_t winner = kNoWinner;
    if (exec == Exec::Serial || workerCount() <= 1) {
        for (std::uint64_t i = 0; i < r.restrictionsPlanned; ++i) {
            std::uint64_t nodes = 0;
            const bool hit = evalOne(i, nodes);
            r.treeNodesBuilt += nodes;
            if (hit) {
                winner = i;
                break;
            }
        }
    } else {
        const std::uint64_t block = std::uint64_t(workerCount()) * 8;
        for (std::uint64_t base = 0; base < r.restrictionsPlanned && winner == kNoWinner;
             base += block) {
            const std::uint64_t hi = std::min(r.restrictionsPlanned, base + block);
            std::vector<std::uint64_t> nodes(hi - base, 0);
            std::vector<char> hit(hi - base, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workerCount())
#endif
            for (std::int64_t i = std::int64_t(base); i < std::int64_t(hi); ++i)
                hit[std::size_t(i - std::int64_t(base))] =
                    evalOne(std::uint64_t(i), nodes[std::size_t(i - std::int64_t(base))]);
            for (std::uint64_t i = base; i < hi; ++i) {
                r.treeNodesBuilt += nodes[i - base];
                if (hit[i - base]) {
                    winner = i;
                    break;
                }
            }
        }
    }
    if (winner != kNoWinner) {
        r.sat = true;
        r.successIndex = winner + 1;
    }
    return r;
}

}  // namespace exactexpo::satkit
