#include "exactexpo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "exactexpo/algebra.hpp"
#include "exactexpo/hamiltonicity.hpp"
#include "exactexpo/instances.hpp"
#include "exactexpo/satkit.hpp"
#include "exactexpo/subsetsum.hpp"

namespace exactexpo::bench {
namespace {

struct RowTask {
    std::string algorithm;
    int n = 0;
    int instanceIndex = 0;
    std::uint64_t instSeed = 0;
    std::uint64_t solverSeed = 0;
};

WeightedInstance randomSubsetSum(int n, std::uint64_t seed) {
    Rng rng(seed);
    WeightedInstance inst;
    inst.n = n;
    const int bits = std::min(n, 20);
    for (int i = 0; i < n; ++i) inst.w.emplace_back(rng.below(std::uint64_t(1) << bits) + 1);
    const Mask sub = rng.below(Mask(1) << n);
    inst.target = rng.coin() ? inst.weightOf(sub) : BigInt(rng.below(std::uint64_t(1) << bits));
    return inst;
}

// Cut families are found once per t and shared by every narrowcut row.
const hamiltonicity::CutFamily& familyForT(int t) {
    static std::map<int, hamiltonicity::CutFamily> cache;
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    auto found = t <= 4 ? hamiltonicity::findNarrowCutFamilyExhaustive(t)
                        : hamiltonicity::findNarrowCutFamilyPaired(t);
    if (!found.family) throw InvalidArgument("bench: no narrow cut family for t=" + std::to_string(t));
    return cache.emplace(t, *found.family).first->second;
}

BenchRow runOne(const RowTask& task) {
    BenchRow row;
    row.algorithm = task.algorithm;
    row.n = task.n;
    row.instanceIndex = task.instanceIndex;
    const int n = task.n;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (task.algorithm == "schoening") {
            const CnfFormula phi = genRandomKCnf(n, 4 * n, 3, task.instSeed);
            const auto r = satkit::schoening(phi, task.solverSeed);
            row.decision = r.sat;
            row.trials = r.trialsPlanned;
            row.success = r.successTrial;
        } else if (task.algorithm == "local") {
            const CnfFormula phi = genRandomKCnf(n, 4 * n, 3, task.instSeed);
            Rng rng(task.solverSeed);
            auto x = std::vector<std::uint8_t>(std::size_t(n));
            for (auto& b : x) b = std::uint8_t(rng.coin());
            const auto r = satkit::localSearch(phi, x, (n + 3) / 4);
            row.decision = r.sat;
            row.leafCalls = r.leafCalls;
        } else if (task.algorithm == "monien") {
            const CnfFormula phi = genRandomKCnf(n, 3 * n, 3, task.instSeed);
            const auto r = satkit::monienSpeckenmeyer(phi);
            row.decision = r.sat;
            row.leafCalls = r.leafCalls;
        } else if (task.algorithm == "mitm") {
            const WeightedInstance inst = randomSubsetSum(n, task.instSeed);
            const auto r = subsetsum::meetInMiddle(inst);
            row.decision = r.witness.has_value();
            row.listLeft = r.leftListSize;
            row.listRight = r.rightListSize;
        } else if (task.algorithm == "ham2n") {
            const Multigraph g = genRandomGraph(n, 0.5, false, task.instSeed);
            const auto r = hamiltonicity::undirectedHam2n(g, task.solverSeed);
            row.decision = r.hamiltonian;
            row.cutLoops = r.cutLoopCount;
            row.success = r.successRound;
        } else if (task.algorithm == "narrowcut") {
            const Multigraph g = genRandomGraph(n, 0.5, false, task.instSeed);
            const auto r = hamiltonicity::narrowCutHamiltonicity(g, familyForT(n), task.solverSeed);
            row.decision = r.hamiltonian;
            row.cutLoops = r.loopCount;
            row.success = r.successRound;
        } else if (task.algorithm == "trimmedzeta") {
            Rng rng(task.instSeed);
            auto support = std::set<Mask>();
            while (int(support.size()) < n) support.insert(rng.below(Mask(1) << n));
            auto sparse = std::vector<std::pair<Mask, std::int64_t>>();
            for (Mask m : support) sparse.emplace_back(m, std::int64_t(rng.below(1000)) + 1);
            algebra::Int64Ring R;
            std::uint64_t touched = 0;
            (void)algebra::trimmedUpClosureTransform(R, algebra::SmallMatrixKind::Zeta, sparse, n,
                                                     &touched);
            auto keys = std::vector<Mask>(support.begin(), support.end());
            row.decision = true;
            row.masksTouched = touched;
            row.closureSize = algebra::upClosure(keys, n).size();
        } else {
            throw InvalidArgument("bench: unknown algorithm " + task.algorithm);
        }
    } catch (const BudgetError&) {
        row.budgetExceeded = true;
    }
    row.elapsedMs =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return row;
}

std::string cell(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string gmeanCell(const std::vector<std::uint64_t>& vals) {
    if (vals.empty()) return {};
    for (std::uint64_t v : vals)
        if (v == 0) return "0.000";
    double acc = 0.0;
    for (std::uint64_t v : vals) acc += std::log(double(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", std::exp(acc / double(vals.size())));
    return buf;
}

std::string fmtMs(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

}  // namespace

const std::vector<std::string>& benchAlgorithms() {
    static const std::vector<std::string> ids = {"schoening", "local",     "monien",     "mitm",
                                                 "ham2n",     "narrowcut", "trimmedzeta"};
    return ids;
}

bool algorithmDefinedAt(const std::string& algorithm, int n) {
    if (algorithm == "schoening" || algorithm == "local" || algorithm == "monien")
        return n >= 3 && n <= 30;
    if (algorithm == "mitm") return n >= 1 && n <= 40;
    if (algorithm == "ham2n") return n >= 2 && n % 2 == 0 && n <= 24;
    if (algorithm == "narrowcut") return n >= 2 && n % 2 == 0 && n <= 6;
    if (algorithm == "trimmedzeta") return n >= 1 && n <= 20;
    return false;
}

std::vector<BenchRow> runSweep(const BenchSpec& spec) {
    if (spec.nStep <= 0 || spec.nMin > spec.nMax || spec.instancesPerSize <= 0)
        throw InvalidArgument("bench: invalid sweep range");
    for (const auto& a : spec.algorithms) {
        const auto& known = benchAlgorithms();
        if (std::find(known.begin(), known.end(), a) == known.end())
            throw InvalidArgument("bench: unknown algorithm " + a);
    }
    auto tasks = std::vector<RowTask>();
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        for (int n = spec.nMin; n <= spec.nMax; n += spec.nStep) {
            if (!algorithmDefinedAt(spec.algorithms[a], n)) continue;
            // Families are searched up front so parallel rows only read them.
            if (spec.algorithms[a] == "narrowcut") (void)familyForT(n);
            for (int i = 0; i < spec.instancesPerSize; ++i) {
                const std::uint64_t key =
                    (std::uint64_t(a) << 24) | (std::uint64_t(n) << 12) | std::uint64_t(i);
                tasks.push_back({spec.algorithms[a], n, i, deriveSeed(spec.seed, 2 * key),
                                 deriveSeed(spec.seed, 2 * key + 1)});
            }
        }
    }
    auto rows = std::vector<BenchRow>(tasks.size());
    if (spec.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(workerCount())
        for (std::int64_t i = 0; i < std::int64_t(tasks.size()); ++i)
            rows[std::size_t(i)] = runOne(tasks[std::size_t(i)]);
    } else {
        for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = runOne(tasks[i]);
    }
    return rows;
}

std::string renderCsv(const std::vector<BenchRow>& rows, bool withTiming) {
    std::string out =
        "algorithm,n,instance,decision,trials,success,leaf_calls,list_left,list_right,"
        "cut_loops,masks_touched,closure_size,budget_exceeded,elapsed_ms\n";
    auto emitGroup = [&](std::size_t lo, std::size_t hi) {
        // Summary over rows [lo, hi): geometric means of the set cells.
        auto collect = [&](auto member) {
            auto vals = std::vector<std::uint64_t>();
            for (std::size_t i = lo; i < hi; ++i)
                if (rows[i].*member) vals.push_back(*(rows[i].*member));
            return vals;
        };
        out += rows[lo].algorithm + ',' + std::to_string(rows[lo].n) + ",gmean,,";
        out += gmeanCell(collect(&BenchRow::trials)) + ',';
        out += gmeanCell(collect(&BenchRow::success)) + ',';
        out += gmeanCell(collect(&BenchRow::leafCalls)) + ',';
        out += gmeanCell(collect(&BenchRow::listLeft)) + ',';
        out += gmeanCell(collect(&BenchRow::listRight)) + ',';
        out += gmeanCell(collect(&BenchRow::cutLoops)) + ',';
        out += gmeanCell(collect(&BenchRow::masksTouched)) + ',';
        out += gmeanCell(collect(&BenchRow::closureSize)) + ",,";
        if (withTiming) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) acc += rows[i].elapsedMs;
            out += fmtMs(acc / double(hi - lo));
        } else {
            out += '-';
        }
        out += '\n';
    };
    std::size_t groupStart = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BenchRow& r = rows[i];
        out += r.algorithm + ',' + std::to_string(r.n) + ',' + std::to_string(r.instanceIndex) +
               ',' + (r.decision ? "1" : "0") + ',';
        out += cell(r.trials) + ',' + cell(r.success) + ',' + cell(r.leafCalls) + ',' +
               cell(r.listLeft) + ',' + cell(r.listRight) + ',' + cell(r.cutLoops) + ',' +
               cell(r.masksTouched) + ',' + cell(r.closureSize) + ',';
        out += (r.budgetExceeded ? "1" : "0");
        out += ',';
        out += withTiming ? fmtMs(r.elapsedMs) : std::string("-");
        out += '\n';
        const bool groupEnds = i + 1 == rows.size() || rows[i + 1].algorithm != r.algorithm ||
                               rows[i + 1].n != r.n;
        if (groupEnds) {
            emitGroup(groupStart, i + 1);
            groupStart = i + 1;
        }
    }
    return out;
}

}  // namespace exactexpo::bench
