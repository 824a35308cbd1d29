// Compares the OpenMP-parallel kernels against their serial reference
// implementations: same inputs, results checked for exact equality, wall
// times reported side by side. Exit code 0 iff every pair agrees.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "exactexpo/algebra.hpp"
#include "exactexpo/coloring.hpp"
#include "exactexpo/covering.hpp"
#include "exactexpo/hamiltonicity.hpp"
#include "exactexpo/instances.hpp"
#include "exactexpo/satkit.hpp"
#include "exactexpo/subsetsum.hpp"

using namespace exactexpo;

namespace {

int failures = 0;

template <class F>
double timeMs(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void report(const std::string& kernel, double serialMs, double parallelMs, bool equal) {
    std::printf("%-22s %10.1f ms %10.1f ms   x%.2f   %s\n", kernel.c_str(), serialMs, parallelMs,
                parallelMs > 0 ? serialMs / parallelMs : 0.0, equal ? "equal" : "MISMATCH");
    if (!equal) ++failures;
}

}  // namespace

int main() {
    std::printf("%-22s %13s %13s %7s\n", "kernel", "serial", "parallel", "speedup");

    {
        const int n = 22;
        Rng rng(1);
        auto v = std::vector<std::int64_t>(std::size_t(1) << n);
        for (auto& x : v) x = std::int64_t(rng.below(1000)) - 500;
        algebra::Int64Ring R;
        auto a = v;
        auto b = v;
        const double s = timeMs([&] { algebra::zetaTransform(R, a, n, Exec::Serial); });
        const double p = timeMs([&] { algebra::zetaTransform(R, b, n, Exec::Parallel); });
        report("zeta n=22", s, p, a == b);
    }
    {
        const CnfFormula phi = genRandomKCnf(26, 104, 3, 7);
        satkit::BallCoverResult rs, rp;
        const double s = timeMs([&] { rs = satkit::schoening(phi, 5, Exec::Serial); });
        const double p = timeMs([&] { rp = satkit::schoening(phi, 5, Exec::Parallel); });
        report("schoening n=26", s, p,
               rs.sat == rp.sat && rs.successTrial == rp.successTrial &&
                   rs.trialsPlanned == rp.trialsPlanned);
    }
    {
        const Multigraph g = genRandomGraph(12, 0.4, false, 11);
        hamiltonicity::Ham2nResult rs, rp;
        const double s = timeMs([&] { rs = hamiltonicity::undirectedHam2n(g, 3, 10, Exec::Serial); });
        const double p =
            timeMs([&] { rp = hamiltonicity::undirectedHam2n(g, 3, 10, Exec::Parallel); });
        report("cut-sum ham n=12", s, p,
               rs.hamiltonian == rp.hamiltonian && rs.successRound == rp.successRound);
    }
    {
        const Multigraph g = genRandomGraph(15, 0.35, true, 13);
        hamiltonicity::ModCountResult rs, rp;
        const double s =
            timeMs([&] { rs = hamiltonicity::countHamCyclesModP(g, 5, 3, true, Exec::Serial); });
        const double p =
            timeMs([&] { rp = hamiltonicity::countHamCyclesModP(g, 5, 3, true, Exec::Parallel); });
        report("ham count mod 5 n=15", s, p,
               rs.residue == rp.residue && rs.arcsProcessed == rp.arcsProcessed);
    }
    {
        SetSystem S;
        S.n = 18;
        Rng rng(17);
        for (int i = 0; i < 40; ++i) S.sets.push_back(rng.below(Mask(1) << S.n));
        covering::SetCoverCount rs, rp;
        const double s = timeMs([&] { rs = covering::setCover2n(S, 3, Exec::Serial); });
        const double p = timeMs([&] { rp = covering::setCover2n(S, 3, Exec::Parallel); });
        report("set cover 2^n n=18", s, p,
               rs.count == rp.count && rs.touchedTotal == rp.touchedTotal);
    }
    {
        const Multigraph g = genRandomGraph(17, 0.12, false, 23);
        coloring::ThreeColoringResult rs, rp;
        const double s =
            timeMs([&] { rs = coloring::threeColoring15n(g, 9, ~std::uint64_t(0), Exec::Serial); });
        const double p = timeMs(
            [&] { rp = coloring::threeColoring15n(g, 9, ~std::uint64_t(0), Exec::Parallel); });
        report("3-coloring n=17", s, p,
               rs.coloring == rp.coloring && rs.successTrial == rp.successTrial);
    }
    {
        const auto planted = genPlantedSubsetSum(26, 29);
        subsetsum::RepresentationResult rs, rp;
        const double s = timeMs(
            [&] { rs = subsetsum::representationMethod(planted.instance, 31, 20, Exec::Serial); });
        const double p = timeMs(
            [&] { rp = subsetsum::representationMethod(planted.instance, 31, 20, Exec::Parallel); });
        report("representation n=26", s, p,
               rs.witness == rp.witness && rs.successRepetition == rp.successRepetition);
    }

    if (failures) std::printf("%d kernel(s) disagree\n", failures);
    return failures == 0 ? 0 : 1;
}
