#include "exactexpo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "exactexpo/algebra.hpp"
#include "exactexpo/bench.hpp"
#include "exactexpo/coloring.hpp"
#include "exactexpo/covering.hpp"
#include "exactexpo/hamiltonicity.hpp"
#include "exactexpo/instances.hpp"
#include "exactexpo/oracles.hpp"
#include "exactexpo/satkit.hpp"
#include "exactexpo/sparsifier.hpp"
#include "exactexpo/subsetsum.hpp"

namespace exactexpo::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kRunSchema = "exactexpo.run/1";
constexpr const char* kVerifySchema = "exactexpo.verify/1";

// Command-level misuse distinct from instance-file ParseError; both exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digestOf(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

ordered_json maskToIndices(Mask m, int n) {
    auto arr = ordered_json::array();
    for (int i = 0; i < n; ++i)
        if (hasBit(m, i)) arr.push_back(i + 1);
    return arr;
}

class Timer {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Options shared by every solve verb; exactly one verb parses per run.
struct Common {
    std::string file;
    std::string algo;
    std::uint64_t seed = 0;
    bool noTiming = false;
    bool parallel = false;

    Exec exec() const { return parallel ? Exec::Parallel : Exec::Serial; }
};

ordered_json runReport(const char* verb, const Common& c, const std::string& bytes) {
    ordered_json j;
    j["schema"] = kRunSchema;
    j["verb"] = verb;
    j["algo"] = c.algo;
    j["digest"] = digestOf(bytes);
    j["seed"] = c.seed;
    return j;
}

int emit(std::ostream& out, ordered_json& j, bool decision, const Common& c, double ms) {
    if (!c.noTiming) j["elapsed_ms"] = ms;
    out << j.dump(2) << "\n";
    return decision ? 0 : 1;
}

[[noreturn]] void unknownAlgo(const char* verb, const std::string& algo) {
    throw UsageError(std::string(verb) + ": unknown --algo " + algo);
}

// ----- sat ---------------------------------------------------------------

int runSat(const Common& c, std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const CnfFormula phi = parseCnf(bytes);
    ordered_json j = runReport("sat", c, bytes);
    j["n"] = phi.numVars;
    auto counters = ordered_json::object();
    bool decision = false;
    Timer t;
    if (c.algo == "schoening") {
        const auto r = satkit::schoening(phi, c.seed, c.exec());
        decision = r.sat;
        counters["trials_planned"] = r.trialsPlanned;
        counters["success_trial"] = r.successTrial;
        counters["radius"] = std::uint64_t(r.radius);
    } else if (c.algo == "monien") {
        const auto r = satkit::monienSpeckenmeyer(phi);
        decision = r.sat;
        counters["leaf_calls"] = r.leafCalls;
    } else if (c.algo == "switch") {
        const auto r = satkit::switchSat(phi, c.seed, c.exec());
        decision = r.sat;
        counters["restrictions_planned"] = r.restrictionsPlanned;
        counters["success_index"] = r.successIndex;
        counters["tree_nodes_built"] = r.treeNodesBuilt;
        counters["star_count"] = std::uint64_t(r.starVars.size());
    } else if (c.algo == "brute") {
        decision = oracles::satOracle(phi);
    } else {
        unknownAlgo("sat", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    j["counters"] = counters;
    return emit(out, j, decision, c, ms);
}

// ----- color -------------------------------------------------------------

int runColor(const Common& c, int k, std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const Multigraph g = parseGraph(bytes, false);
    ordered_json j = runReport("color", c, bytes);
    j["n"] = g.n;
    j["k"] = k;
    auto counters = ordered_json::object();
    bool decision = false;
    ordered_json witness;
    ordered_json count;
    Timer t;
    if (c.algo == "random15n") {
        if (k != 3) throw UsageError("color: --algo random15n requires --k 3");
        const auto r = coloring::threeColoring15n(g, c.seed, ~std::uint64_t(0), c.exec());
        decision = r.coloring.has_value();
        if (r.coloring) witness = *r.coloring;
        counters["trials_planned"] = r.trialsPlanned;
        counters["success_trial"] = r.successTrial;
    } else if (c.algo == "cover" || c.algo == "cover-trimmed") {
        const auto r = coloring::kColoringViaCover(g, k, c.algo == "cover-trimmed", c.exec());
        decision = r.colorable;
        count = r.coverCount.str();
        counters["family_size"] = std::uint64_t(r.familySize);
        counters["up_closure_size"] = r.upClosureSize;
        counters["masks_touched"] = r.touchedMasks;
    } else if (c.algo == "brute") {
        decision = oracles::coloringOracle(g, k);
    } else {
        unknownAlgo("color", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    if (!count.is_null()) j["count"] = count;
    if (!witness.is_null()) j["witness"] = witness;
    j["counters"] = counters;
    return emit(out, j, decision, c, ms);
}

// ----- setcover ------------------------------------------------------------

int runSetCover(const Common& c, int k, double sigma, std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const SetSystem S = parseSetSystem(bytes);
    ordered_json j = runReport("setcover", c, bytes);
    j["n"] = S.n;
    j["k"] = k;
    auto counters = ordered_json::object();
    bool decision = false;
    ordered_json count;
    Timer t;
    if (c.algo == "2n") {
        const auto r = covering::setCover2n(S, k, c.exec());
        decision = r.covered;
        count = r.count.str();
        counters["touched_per_pass"] = r.touchedPerPass;
        counters["passes"] = std::uint64_t(r.passes);
        counters["touched_total"] = r.touchedTotal;
    } else if (c.algo == "trimmed") {
        const auto r = covering::setCoverTrimmed(S, k);
        decision = r.covered;
        count = r.count.str();
        counters["closure_size"] = r.closureSize;
        counters["touched_total"] = r.touchedTotal;
    } else if (c.algo == "largek") {
        const auto r = covering::setCoverLargeK(S, k, sigma, c.seed, {}, c.exec());
        decision = r.covered;
        counters["large_set_branch"] = std::int64_t(r.largeSetBranch);
        counters["success_trial"] = std::uint64_t(r.successTrial);
    } else if (c.algo == "brute") {
        const BigInt n = oracles::setCoverOracle(S, k);
        decision = n > 0;
        count = n.str();
    } else {
        unknownAlgo("setcover", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    if (!count.is_null()) j["count"] = count;
    j["counters"] = counters;
    return emit(out, j, decision, c, ms);
}

// ----- binpack -------------------------------------------------------------

int runBinPack(const Common& c, std::uint64_t stateBudget, std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const WeightedInstance inst = parseWeighted(bytes);
    if (!inst.isBinPacking) throw UsageError("binpack: input is a subset sum instance");
    ordered_json j = runReport("binpack", c, bytes);
    j["n"] = inst.n;
    j["bins"] = inst.bins;
    auto counters = ordered_json::object();
    bool decision = false;
    ordered_json witness;
    Timer t;
    if (c.algo == "tight") {
        const auto r = covering::binPackingTight(inst);
        decision = r.packable;
        if (r.packable) witness = maskToIndices(r.witnessHalf, inst.n);
        counters["family_size"] = std::uint64_t(r.familySize);
        counters["touched_masks"] = r.touchedMasks;
        counters["witness_split"] = std::int64_t(r.witnessSplit);
    } else if (c.algo == "dp") {
        const auto r = covering::binPackingDistinctSumsDP(inst, stateBudget);
        decision = r.packable;
        counters["distinct_sums"] = std::uint64_t(r.distinctSums);
        counters["states_visited"] = r.statesVisited;
    } else if (c.algo == "brute") {
        decision = oracles::binPackingOracle(inst);
    } else {
        unknownAlgo("binpack", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    if (!witness.is_null()) j["witness"] = witness;
    j["counters"] = counters;
    return emit(out, j, decision, c, ms);
}

// ----- ham -----------------------------------------------------------------

const hamiltonicity::CutFamily& builtinFamily(int t) {
    static std::map<int, hamiltonicity::CutFamily> cache;
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    if (t != 2 && t != 4 && t != 6)
        throw UsageError("ham: no built-in narrow cut family for n=" + std::to_string(t) +
                         "; provide --family");
    auto found = t <= 4 ? hamiltonicity::findNarrowCutFamilyExhaustive(t)
                        : hamiltonicity::findNarrowCutFamilyPaired(t);
    return cache.emplace(t, *found.family).first->second;
}

int runHam(const Common& c, bool directed, const std::string& familyPath, std::uint64_t p,
           int tail, int head, int root, bool skip, std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const Multigraph g = parseGraph(bytes, directed);
    ordered_json j = runReport("ham", c, bytes);
    j["n"] = g.n;
    j["directed"] = directed;
    auto counters = ordered_json::object();
    bool decision = false;
    ordered_json count;
    ordered_json note;
    Timer t;
    if (c.algo == "cuts2n") {
        if (directed) throw UsageError("ham: --algo cuts2n needs an undirected graph");
        const auto r = hamiltonicity::undirectedHam2n(g, c.seed, 10, c.exec());
        decision = r.hamiltonian;
        if (!r.note.empty()) note = r.note;
        counters["cut_loops"] = r.cutLoopCount;
        counters["rounds"] = std::uint64_t(r.rounds);
        counters["success_round"] = std::uint64_t(r.successRound);
    } else if (c.algo == "narrow") {
        hamiltonicity::CutFamily fam;
        if (familyPath.empty()) {
            fam = builtinFamily(g.n);
        } else {
            fam = hamiltonicity::parseCutFamily(readFile(familyPath));
            if (fam.t != g.n)
                throw UsageError("ham: cut family is for n=" + std::to_string(fam.t) +
                                 ", graph has n=" + std::to_string(g.n));
        }
        const auto r = hamiltonicity::narrowCutHamiltonicity(g, fam, c.seed, directed, 10, c.exec());
        decision = r.hamiltonian;
        counters["cut_loops"] = r.loopCount;
        counters["rounds"] = std::uint64_t(r.rounds);
        counters["success_round"] = std::uint64_t(r.successRound);
    } else if (c.algo == "count-mod-p") {
        if (!directed) throw UsageError("ham: --algo count-mod-p needs --directed");
        if (!algebra::isPrime(p)) throw UsageError("ham: --p must be prime");
        const auto r = hamiltonicity::countHamCyclesModP(g, p, c.seed, skip, c.exec());
        decision = r.residue != 0;
        count = std::to_string(r.residue);
        if (r.residue == 0) note = "zero residue does not certify the absence of cycles";
        counters["arcs_processed"] = r.arcsProcessed;
        counters["subsets_per_arc"] = r.subsetsPerArc;
        counters["determinants_skipped"] = r.determinantsSkipped;
    } else if (c.algo == "exact-ie") {
        if (!directed) throw UsageError("ham: --algo exact-ie needs --directed");
        if (tail < 1 || tail > g.n || head < 1 || head > g.n)
            throw UsageError("ham: --tail/--head out of range");
        const auto r = hamiltonicity::hamCyclesThroughArcExact(g, tail - 1, head - 1);
        decision = r.count > 0;
        count = r.count.str();
        counters["subsets_enumerated"] = r.subsetsEnumerated;
    } else if (c.algo == "branchings") {
        if (!directed) throw UsageError("ham: --algo branchings needs --directed");
        if (root < 1 || root > g.n) throw UsageError("ham: --root out of range");
        const BigInt n = hamiltonicity::outBranchingCount(g, root - 1);
        decision = n > 0;
        count = n.str();
    } else if (c.algo == "matching") {
        if (directed) throw UsageError("ham: --algo matching needs an undirected graph");
        const auto r = hamiltonicity::perfectMatchingTest(g, c.seed);
        decision = r.matched;
        counters["rounds"] = std::uint64_t(r.rounds);
        counters["success_round"] = std::uint64_t(r.successRound);
    } else if (c.algo == "brute") {
        const BigInt n = oracles::hamCountOracle(g);
        decision = n > 0;
        count = n.str();
    } else {
        unknownAlgo("ham", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    if (!count.is_null()) j["count"] = count;
    if (!note.is_null()) j["note"] = note;
    j["counters"] = counters;
    return emit(out, j, decision, c, ms);
}

// ----- subsetsum -------------------------------------------------------------

int runSubsetSum(const Common& c, std::uint64_t budgetR, bool wantDiagnostics,
                 std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const WeightedInstance inst = parseWeighted(bytes);
    if (inst.isBinPacking) throw UsageError("subsetsum: input is a bin packing instance");
    ordered_json j = runReport("subsetsum", c, bytes);
    j["n"] = inst.n;
    j["target"] = inst.target.str();
    auto counters = ordered_json::object();
    bool decision = false;
    ordered_json witness;
    Timer t;
    if (c.algo == "mitm") {
        const auto r = subsetsum::meetInMiddle(inst);
        decision = r.witness.has_value();
        if (r.witness) witness = maskToIndices(*r.witness, inst.n);
        counters["list_left"] = r.leftListSize;
        counters["list_right"] = r.rightListSize;
    } else if (c.algo == "rep") {
        const auto r = subsetsum::representationMethod(inst, c.seed, budgetR, c.exec());
        decision = r.witness.has_value();
        if (r.witness) witness = maskToIndices(*r.witness, inst.n);
        counters["success_repetition"] = r.successRepetition;
        counters["prime"] = r.prime;
        counters["left_residue"] = r.leftResidue;
        counters["list_left"] = r.leftListSize;
        counters["list_right"] = r.rightListSize;
        counters["collisions_scanned"] = r.collisionsScanned;
    } else if (c.algo == "brute") {
        decision = oracles::subsetSumOracle(inst);
    } else {
        unknownAlgo("subsetsum", c.algo);
    }
    const double ms = t.ms();
    j["decision"] = decision;
    if (!witness.is_null()) j["witness"] = witness;
    j["counters"] = counters;
    if (wantDiagnostics) {
        const auto d = subsetsum::diagnostics(inst);
        ordered_json dj;
        dj["cardinality"] = std::uint64_t(d.cardinality);
        dj["pseudo_solutions"] = d.pseudoSolutionCount;
        dj["distinct_sums"] = d.distinctSubsetSums;
        dj["max_frequency"] = d.maxFrequency;
        j["diagnostics"] = dj;
    }
    return emit(out, j, decision, c, ms);
}

// ----- sparsify -----------------------------------------------------------------

int runSparsify(const Common& c, int k, double eps, const std::string& outDir,
                std::ostream& out) {
    const std::string bytes = readFile(c.file);
    const SetSystem S = parseSetSystem(bytes);
    int maxSize = 1;
    for (Mask m : S.sets) maxSize = std::max(maxSize, popcount(m));
    if (k == 0) k = maxSize;
    if (k < maxSize)
        throw UsageError("sparsify: --k below the largest set size " + std::to_string(maxSize));
    const auto cfg = sparsifier::SparsifierConfig::make(k, eps);
    ordered_json j = runReport("sparsify", c, bytes);
    j["n"] = S.n;
    j["k"] = k;
    j["eps"] = eps;
    Timer t;
    const auto outputs = sparsifier::reduce(S, cfg);
    const double ms = t.ms();
    j["decision"] = true;
    j["output_count"] = std::uint64_t(outputs.size());
    j["degree_bound"] = cfg.degreeBound().str();
    j["output_cap"] = std::pow(2.0, 2.0 * eps * S.n);
    if (outDir.empty()) {
        auto arr = ordered_json::array();
        for (const auto& o : outputs) arr.push_back(renderSetSystem(o));
        j["systems"] = arr;
    } else {
        std::filesystem::create_directories(outDir);
        auto files = ordered_json::array();
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "out_%05zu.txt", i);
            const auto path = std::filesystem::path(outDir) / name;
            std::ofstream f(path, std::ios::binary);
            if (!f) throw UsageError("sparsify: cannot write " + path.string());
            f << renderSetSystem(outputs[i]);
            files.push_back(std::string(name));
        }
        j["files"] = files;
    }
    return emit(out, j, true, c, ms);
}

// ----- verify ----------------------------------------------------------------

bool hitsAll(const SetSystem& s, Mask x) {
    for (Mask m : s.sets)
        if ((m & x) == 0) return false;
    return true;
}

int verifyFactorization(int t, bool noTiming, std::ostream& out) {
    (void)noTiming;
    const auto rep = hamiltonicity::verifyFactorizationChar2(t);
    const bool pass = t == 2 ? rep.equalDoubledEdge : rep.equal;
    ordered_json j;
    j["schema"] = kVerifySchema;
    j["target"] = "factorization";
    j["t"] = t;
    j["pass"] = pass;
    j["matching_count"] = std::uint64_t(rep.matchingCount);
    j["cut_count"] = std::uint64_t(rep.cutCount);
    if (!pass) {
        j["mismatch_row"] = rep.mismatchRow;
        j["mismatch_col"] = rep.mismatchCol;
    }
    out << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

int verifyCutFamily(const std::string& path, std::ostream& out) {
    const auto fam = hamiltonicity::parseCutFamily(readFile(path));
    const auto rep = hamiltonicity::verifyNarrowCutFactorization(fam.t, fam);
    const bool pass = fam.t == 2 ? rep.equalDoubledEdge : rep.equal;
    ordered_json j;
    j["schema"] = kVerifySchema;
    j["target"] = "cutfamily";
    j["t"] = fam.t;
    j["cuts"] = std::uint64_t(fam.cuts.size());
    j["pass"] = pass;
    if (!pass) {
        j["mismatch_row"] = rep.mismatchRow;
        j["mismatch_col"] = rep.mismatchCol;
    }
    out << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

int verifySparsify(const std::string& inputPath, const std::string& outputsDir, int k, double eps,
                   std::ostream& out) {
    const SetSystem S = parseSetSystem(readFile(inputPath));
    int maxSize = 1;
    for (Mask m : S.sets) maxSize = std::max(maxSize, popcount(m));
    if (k == 0) k = maxSize;
    auto paths = std::vector<std::filesystem::path>();
    if (!std::filesystem::is_directory(outputsDir))
        throw UsageError("verify sparsify: " + outputsDir + " is not a directory");
    for (const auto& entry : std::filesystem::directory_iterator(outputsDir))
        if (entry.is_regular_file()) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    auto outputs = std::vector<SetSystem>();
    for (const auto& p : paths) outputs.push_back(parseSetSystem(readFile(p.string())));
    const auto cfg = sparsifier::SparsifierConfig::make(k, eps);
    const auto rep = sparsifier::verifySparsifierOutput(S, outputs, cfg);
    const bool pass = rep.equivalenceHolds && rep.frequencyOk && rep.countOk;
    ordered_json j;
    j["schema"] = kVerifySchema;
    j["target"] = "sparsify";
    j["k"] = k;
    j["eps"] = eps;
    j["output_count"] = std::uint64_t(rep.outputCount);
    j["equivalence"] = rep.equivalenceHolds;
    j["frequency_ok"] = rep.frequencyOk;
    j["count_ok"] = rep.countOk;
    j["max_frequency"] = rep.maxFrequency;
    j["degree_bound"] = rep.degreeBound.str();
    j["output_cap"] = rep.outputCap;
    if (!rep.equivalenceHolds) {
        // Locate the first subset where input and outputs disagree.
        for (Mask x = 0; x < (Mask(1) << S.n); ++x) {
            const bool hitsInput = hitsAll(S, x);
            bool hitsSome = false;
            for (const auto& o : outputs) hitsSome = hitsSome || hitsAll(o, x);
            if (hitsInput != hitsSome) {
                ordered_json cx;
                cx["subset"] = maskToIndices(x, S.n);
                cx["hits_input"] = hitsInput;
                cx["hits_outputs"] = hitsSome;
                j["first_counterexample"] = cx;
                break;
            }
        }
    }
    j["pass"] = pass;
    out << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact exponential-time algorithms: solvers, sweeps, verifiers"};
    app.name("exactexpo");
    app.require_subcommand(1);
    Common c;
    app.add_option("--seed", c.seed, "base seed; per-trial seeds derive from it");
    app.add_flag("--no-timing", c.noTiming, "omit elapsed time for byte-identical reruns");
    app.add_flag("--parallel", c.parallel, "parallel execution (EXACTEXPO_THREADS caps workers)");

    int code = 2;

    // Each verb keeps its own algorithm selector: a shared variable with
    // per-subcommand default_val() would be overwritten by whichever verb
    // registers last, not by the verb actually invoked.
    auto* sat = app.add_subcommand("sat", "CNF satisfiability (DIMACS input)");
    sat->fallthrough();
    std::string satAlgo = "schoening";
    sat->add_option("file", c.file, "CNF file")->required();
    sat->add_option("--algo", satAlgo, "schoening | monien | switch | brute")
        ->capture_default_str();
    sat->callback([&] {
        c.algo = satAlgo;
        code = runSat(c, out);
    });

    auto* color = app.add_subcommand("color", "graph k-coloring");
    color->fallthrough();
    int colorK = 3;
    std::string colorAlgo = "random15n";
    color->add_option("file", c.file, "graph file")->required();
    color->add_option("--algo", colorAlgo, "random15n | cover | cover-trimmed | brute")
        ->capture_default_str();
    color->add_option("--k", colorK, "color count (default 3)");
    color->callback([&] {
        c.algo = colorAlgo;
        code = runColor(c, colorK, out);
    });

    auto* cover = app.add_subcommand("setcover", "cover the universe with k member sets");
    cover->fallthrough();
    int coverK = 1;
    double sigma = 0.25;
    std::string coverAlgo = "2n";
    cover->add_option("file", c.file, "set system file")->required();
    cover->add_option("--algo", coverAlgo, "2n | trimmed | largek | brute")
        ->capture_default_str();
    cover->add_option("--k", coverK, "number of sets")->required();
    cover->add_option("--sigma", sigma, "largek regime parameter (k >= sigma*n)");
    cover->callback([&] {
        c.algo = coverAlgo;
        code = runSetCover(c, coverK, sigma, out);
    });

    auto* binpack = app.add_subcommand("binpack", "bin packing decision");
    binpack->fallthrough();
    std::uint64_t stateBudget = std::uint64_t(1) << 26;
    std::string packAlgo = "dp";
    binpack->add_option("file", c.file, "bin packing file (\"n c k\" header)")->required();
    binpack->add_option("--algo", packAlgo, "tight | dp | brute")->capture_default_str();
    binpack->add_option("--state-budget", stateBudget, "DP state cap before refusing");
    binpack->callback([&] {
        c.algo = packAlgo;
        code = runBinPack(c, stateBudget, out);
    });

    auto* ham = app.add_subcommand("ham", "Hamiltonicity deciders and cycle counters");
    ham->fallthrough();
    bool directed = false;
    std::string familyPath;
    std::uint64_t modP = 2;
    int tail = 0, head = 0, root = 1;
    bool noSkip = false;
    std::string hamAlgo = "brute";
    ham->add_option("file", c.file, "graph file")->required();
    ham->add_option("--algo", hamAlgo,
                    "cuts2n | narrow | count-mod-p | exact-ie | branchings | matching | brute")
        ->capture_default_str();
    ham->add_flag("--directed", directed, "read the graph as directed");
    ham->add_option("--family", familyPath, "narrow cut family file (narrow)");
    ham->add_option("--p", modP, "modulus, prime (count-mod-p)");
    ham->add_option("--tail", tail, "anchor arc tail, 1-based (exact-ie)");
    ham->add_option("--head", head, "anchor arc head, 1-based (exact-ie)");
    ham->add_option("--root", root, "branching root, 1-based (branchings)");
    ham->add_flag("--no-skip", noSkip, "disable zero-row subset skipping (count-mod-p)");
    ham->callback([&] {
        c.algo = hamAlgo;
        code = runHam(c, directed, familyPath, modP, tail, head, root, !noSkip, out);
    });

    auto* ssum = app.add_subcommand("subsetsum", "subset sum search");
    ssum->fallthrough();
    std::uint64_t budgetR = 20;
    bool wantDiagnostics = false;
    std::string ssumAlgo = "mitm";
    ssum->add_option("file", c.file, "subset sum file (\"n t\" header)")->required();
    ssum->add_option("--algo", ssumAlgo, "mitm | rep | brute")->capture_default_str();
    ssum->add_option("--budget", budgetR, "repetition budget (rep)");
    ssum->add_flag("--diagnostics", wantDiagnostics,
                   "append pseudo-solution / sum-distribution statistics (n <= 24)");
    ssum->callback([&] {
        c.algo = ssumAlgo;
        code = runSubsetSum(c, budgetR, wantDiagnostics, out);
    });

    auto* sparsify = app.add_subcommand("sparsify", "split a set system into low-frequency parts");
    sparsify->fallthrough();
    int sparsifyK = 0;
    double eps = 0.3;
    std::string outDir;
    sparsify->add_option("file", c.file, "set system file")->required();
    sparsify->add_option("--k", sparsifyK, "max set size (default: largest in the input)");
    sparsify->add_option("--eps", eps, "branching knob; outputs <= 2^(2*eps*n)");
    sparsify->add_option("--outdir", outDir, "write outputs as out_NNNNN.txt here");
    sparsify->callback([&] {
        c.algo = "reduce";
        code = runSparsify(c, sparsifyK, eps, outDir, out);
    });

    auto* bench = app.add_subcommand("bench", "counter-scaling sweep, CSV on stdout");
    bench->fallthrough();
    auto benchSpec = exactexpo::bench::BenchSpec{};
    auto algos = std::vector<std::string>();
    bench->add_option("--algos", algos, "comma-separated algorithm ids (default: all)")
        ->delimiter(',');
    bench->add_option("--n-min", benchSpec.nMin, "smallest size");
    bench->add_option("--n-max", benchSpec.nMax, "largest size");
    bench->add_option("--step", benchSpec.nStep, "size stride");
    bench->add_option("--instances", benchSpec.instancesPerSize, "instances per size");
    bench->callback([&] {
        benchSpec.algorithms = algos.empty() ? exactexpo::bench::benchAlgorithms() : algos;
        benchSpec.seed = c.seed;
        benchSpec.exec = c.exec();
        const auto rows = exactexpo::bench::runSweep(benchSpec);
        out << exactexpo::bench::renderCsv(rows, !c.noTiming);
        code = 0;
    });

    auto* verify = app.add_subcommand("verify", "pass/fail checks of published artifacts");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* vfact = verify->add_subcommand("factorization",
                                         "matchings-connectivity = split * split^T over GF(2)");
    vfact->fallthrough();
    int factT = 4;
    vfact->add_option("--t", factT, "even vertex count, 2..8")->required();
    vfact->callback([&] { code = verifyFactorization(factT, c.noTiming, out); });
    auto* vcut = verify->add_subcommand("cutfamily", "narrow cut family factorization");
    vcut->fallthrough();
    std::string cutPath;
    vcut->add_option("file", cutPath, "cut family file")->required();
    vcut->callback([&] { code = verifyCutFamily(cutPath, out); });
    auto* vsparse = verify->add_subcommand("sparsify", "audit sparsifier outputs");
    vsparse->fallthrough();
    std::string vInput, vOutputs;
    int vK = 0;
    double vEps = 0.3;
    vsparse->add_option("--input", vInput, "original set system")->required();
    vsparse->add_option("--outputs", vOutputs, "directory of output systems")->required();
    vsparse->add_option("--k", vK, "max set size (default: largest in the input)");
    vsparse->add_option("--eps", vEps, "knob the outputs were produced with");
    vsparse->callback([&] { code = verifySparsify(vInput, vOutputs, vK, vEps, out); });

    try {
        auto reversed = std::vector<std::string>(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

int run(int argc, const char* const* argv) {
    auto args = std::vector<std::string>();
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace exactexpo::cli
