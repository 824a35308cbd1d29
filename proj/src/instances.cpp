#include "exactexpo/instances.hpp"

#include <sstream>

namespace exactexpo {

namespace {

// Line-oriented tokenizer that skips '#' comment lines and blank lines,
// tracking 1-based line numbers for error messages.
struct LineReader {
    explicit LineReader(const std::string& text) : in(text) {}
    // Next non-comment line; skips blank lines unless keepBlank is set
    // (set-system bodies treat a blank line as the empty set).
    bool next(std::string& line, int& lineNo, bool keepBlank = false) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++current;
            std::size_t start = raw.find_first_not_of(" \t\r");
            if (start == std::string::npos) {
                if (!keepBlank) continue;
            } else if (raw[start] == '#') {
                continue;
            }
            line = raw;
            lineNo = current;
            return true;
        }
        return false;
    }
    std::istringstream in;
    int current = 0;
};

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

long long parseInt(const std::string& tok, int lineNo, const char* what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(lineNo, std::string("expected integer for ") + what + ", got '" + tok + "'");
    }
}

BigInt parseBigInt(const std::string& tok, int lineNo, const char* what) {
    std::size_t i = (tok.size() && tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) throw ParseError(lineNo, std::string("expected integer for ") + what);
    for (; i < tok.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(tok[i])))
            throw ParseError(lineNo, std::string("expected integer for ") + what + ", got '" + tok + "'");
    return BigInt(tok);
}

}  // namespace

// --- CNF ------------------------------------------------------------------

CnfFormula parseCnf(const std::string& text) {
    LineReader rd(text);
    std::string line;
    int lineNo = 0;
    CnfFormula f;
    long long declaredClauses = -1;
    bool sawHeader = false;
    std::vector<int> current;

    while (rd.next(line, lineNo)) {
        auto tk = tokens(line);
        if (tk.empty()) continue;
        if (tk[0] == "c") continue;  // DIMACS comment
        if (tk[0] == "p") {
            if (sawHeader) throw ParseError(lineNo, "duplicate header");
            if (tk.size() != 4 || tk[1] != "cnf")
                throw ParseError(lineNo, "malformed header, expected 'p cnf n m'");
            long long n = parseInt(tk[2], lineNo, "variable count");
            long long m = parseInt(tk[3], lineNo, "clause count");
            if (n < 0 || m < 0) throw ParseError(lineNo, "negative header counts");
            f.numVars = int(n);
            declaredClauses = m;
            sawHeader = true;
            continue;
        }
        if (!sawHeader) throw ParseError(lineNo, "clause before 'p cnf' header");
        for (const auto& t : tk) {
            long long lit = parseInt(t, lineNo, "literal");
            if (lit == 0) {
                for (int l : current) {
                    int v = l > 0 ? l : -l;
                    int dup = 0;
                    for (int l2 : current)
                        dup += ((l2 > 0 ? l2 : -l2) == v);
                    if (dup > 1)
                        throw ParseError(lineNo, "variable " + std::to_string(v) + " repeated in clause");
                }
                f.clauses.push_back(current);
                current.clear();
            } else {
                long long v = lit > 0 ? lit : -lit;
                if (v > f.numVars)
                    throw ParseError(lineNo, "variable " + std::to_string(v) + " > numVars " +
                                                 std::to_string(f.numVars));
                current.push_back(int(lit));
            }
        }
    }
    if (!sawHeader) throw ParseError(1, "empty input");
    if (!current.empty()) throw ParseError(rd.current, "unterminated clause (missing 0)");
    if (declaredClauses >= 0 && std::size_t(declaredClauses) != f.clauses.size())
        throw ParseError(rd.current, "header declares " + std::to_string(declaredClauses) +
                                         " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

std::string renderCnf(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.numVars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int l : c) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

// --- Graphs ----------------------------------------------------------------

void Multigraph::addEdge(int u, int v, std::uint32_t m) {
    if (u == v) throw InvalidArgument("loop edges are not allowed");
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("vertex out of range");
    if (directed) {
        adj[u][v] += m;
    } else {
        if (adj[u][v] || m > 1) throw InvalidArgument("duplicate undirected edge");
        adj[u][v] = adj[v][u] = 1;
    }
}

Mask Multigraph::neighborsMask(int v) const {
    if (n > 64) throw InvalidArgument("neighborsMask requires n <= 64");
    Mask m = 0;
    for (int w = 0; w < n; ++w)
        if (adj[v][w] || adj[w][v]) m |= Mask(1) << w;
    return m;
}

std::uint64_t Multigraph::edgeCount() const {
    std::uint64_t c = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) c += adj[u][v];
    return directed ? c : c / 2;
}

Multigraph parseGraph(const std::string& text, bool directed) {
    LineReader rd(text);
    std::string line;
    int lineNo = 0;
    if (!rd.next(line, lineNo)) throw ParseError(1, "empty input");
    auto head = tokens(line);
    if (head.size() != 2) throw ParseError(lineNo, "expected header 'n m'");
    long long n = parseInt(head[0], lineNo, "vertex count");
    long long m = parseInt(head[1], lineNo, "edge count");
    if (n < 0 || m < 0) throw ParseError(lineNo, "negative header counts");
    Multigraph g = Multigraph::empty(int(n), directed);
    for (long long e = 0; e < m; ++e) {
        if (!rd.next(line, lineNo)) throw ParseError(rd.current + 1, "missing edge line");
        auto tk = tokens(line);
        if (tk.size() != 2 && tk.size() != 3)
            throw ParseError(lineNo, "expected 'u v [multiplicity]'");
        long long u = parseInt(tk[0], lineNo, "endpoint");
        long long v = parseInt(tk[1], lineNo, "endpoint");
        long long mult = tk.size() == 3 ? parseInt(tk[2], lineNo, "multiplicity") : 1;
        if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineNo, "vertex index out of range");
        if (u == v) throw ParseError(lineNo, "loop edge rejected");
        if (mult < 1) throw ParseError(lineNo, "multiplicity must be positive");
        try {
            g.addEdge(int(u - 1), int(v - 1), std::uint32_t(mult));
        } catch (const InvalidArgument& err) {
            throw ParseError(lineNo, err.what());
        }
    }
    if (rd.next(line, lineNo)) throw ParseError(lineNo, "trailing content after declared edges");
    return g;
}

std::string renderGraph(const Multigraph& g) {
    std::ostringstream body;
    std::uint64_t m = 0;
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) {
            if (!g.adj[u][v]) continue;
            if (!g.directed && v < u) continue;
            ++m;
            body << (u + 1) << ' ' << (v + 1);
            if (g.adj[u][v] != 1) body << ' ' << g.adj[u][v];
            body << '\n';
        }
    std::ostringstream out;
    out << g.n << ' ' << m << '\n' << body.str();
    return out.str();
}

// --- Set systems --------------------------------------------------------------

SetSystem parseSetSystem(const std::string& text) {
    LineReader rd(text);
    std::string line;
    int lineNo = 0;
    if (!rd.next(line, lineNo)) throw ParseError(1, "empty input");
    auto head = tokens(line);
    if (head.size() != 1) throw ParseError(lineNo, "expected header 'n'");
    long long n = parseInt(head[0], lineNo, "universe size");
    if (n < 0 || n > 64) throw ParseError(lineNo, "universe size must be in [0, 64]");
    SetSystem s;
    s.n = int(n);
    while (rd.next(line, lineNo, /*keepBlank=*/true)) {
        Mask mask = 0;
        for (const auto& t : tokens(line)) {
            long long e = parseInt(t, lineNo, "element");
            if (e < 1 || e > n) throw ParseError(lineNo, "element out of range");
            if (hasBit(mask, int(e - 1))) throw ParseError(lineNo, "element repeated in set");
            mask |= Mask(1) << (e - 1);
        }
        for (Mask prev : s.sets)
            if (prev == mask)
                throw ParseError(lineNo, "duplicate set (multiplicities are programmatic only)");
        s.sets.push_back(mask);
    }
    return s;
}

std::string renderSetSystem(const SetSystem& s) {
    std::ostringstream out;
    out << s.n << '\n';
    for (Mask m : s.sets) {
        bool first = true;
        for (int i = 0; i < s.n; ++i)
            if (hasBit(m, i)) {
                if (!first) out << ' ';
                out << (i + 1);
                first = false;
            }
        out << '\n';
    }
    return out.str();
}

// --- Weighted instances --------------------------------------------------------

WeightedInstance parseWeighted(const std::string& text) {
    LineReader rd(text);
    std::string line;
    int lineNo = 0;
    if (!rd.next(line, lineNo)) throw ParseError(1, "empty input");
    auto head = tokens(line);
    WeightedInstance inst;
    if (head.size() == 2) {
        inst.isBinPacking = false;
        inst.n = int(parseInt(head[0], lineNo, "item count"));
        inst.target = parseBigInt(head[1], lineNo, "target");
        if (inst.target < 0) throw ParseError(lineNo, "negative target");
    } else if (head.size() == 3) {
        inst.isBinPacking = true;
        inst.n = int(parseInt(head[0], lineNo, "item count"));
        inst.capacity = parseBigInt(head[1], lineNo, "capacity");
        inst.bins = int(parseInt(head[2], lineNo, "bin count"));
        if (inst.capacity < 0) throw ParseError(lineNo, "negative capacity");
        if (inst.bins < 0) throw ParseError(lineNo, "negative bin count");
    } else {
        throw ParseError(lineNo, "expected header 'n t' or 'n c k'");
    }
    if (inst.n < 0) throw ParseError(lineNo, "negative item count");
    while (rd.next(line, lineNo)) {
        for (const auto& t : tokens(line)) {
            BigInt w = parseBigInt(t, lineNo, "weight");
            if (w < 0) throw ParseError(lineNo, "negative weight");
            inst.w.push_back(w);
        }
    }
    if (int(inst.w.size()) != inst.n)
        throw ParseError(rd.current, "expected " + std::to_string(inst.n) + " weights, found " +
                                         std::to_string(inst.w.size()));
    return inst;
}

std::string renderWeighted(const WeightedInstance& inst) {
    std::ostringstream out;
    if (inst.isBinPacking)
        out << inst.n << ' ' << inst.capacity << ' ' << inst.bins << '\n';
    else
        out << inst.n << ' ' << inst.target << '\n';
    for (int i = 0; i < inst.n; ++i) out << inst.w[i] << (i + 1 == inst.n ? '\n' : ' ');
    if (inst.n == 0) out << '\n';
    return out.str();
}

// --- Generators ------------------------------------------------------------------

CnfFormula genRandomKCnf(int n, int m, int k, std::uint64_t seed) {
    if (k < 1 || k > n) throw InvalidArgument("genRandomKCnf: need 1 <= k <= n");
    if (m < 0) throw InvalidArgument("genRandomKCnf: negative clause count");
    Rng rng(seed);
    CnfFormula f;
    f.numVars = n;
    f.clauses.reserve(m);
    for (int c = 0; c < m; ++c) {
        auto vars = rng.sampleSubset(n, k);
        std::vector<int> clause(k);
        for (int i = 0; i < k; ++i) clause[i] = rng.coin() ? (vars[i] + 1) : -(vars[i] + 1);
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

Multigraph genRandomGraph(int n, double p, bool directed, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw InvalidArgument("genRandomGraph: p outside [0,1]");
    Rng rng(seed);
    Multigraph g = Multigraph::empty(n, directed);
    for (int u = 0; u < n; ++u)
        for (int v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (rng.bernoulli(p)) g.addEdge(u, v);
        }
    return g;
}

Multigraph genRandomRegular(int n, int d, std::uint64_t seed) {
    if (d < 0 || d >= n) throw InvalidArgument("genRandomRegular: need 0 <= d < n");
    if ((std::int64_t(n) * d) % 2 != 0) throw InvalidArgument("genRandomRegular: d*n must be even");
    Rng rng(seed);
    const int points = n * d;
    std::vector<int> perm(points);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        for (int i = 0; i < points; ++i) perm[i] = i;
        // Random perfect matching of the points: pair positions (2i, 2i+1)
        // of a uniform shuffle.
        for (int i = points - 1; i > 0; --i) {
            int j = int(rng.below(std::uint64_t(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        Multigraph g = Multigraph::empty(n, false);
        bool ok = true;
        for (int i = 0; ok && i + 1 < points; i += 2) {
            int u = perm[i] / d, v = perm[i + 1] / d;
            if (u == v || g.adj[u][v]) {
                ok = false;  // loop or multi-edge: reject and resample
            } else {
                g.addEdge(u, v);
            }
        }
        if (ok) return g;
    }
    throw InvalidArgument("genRandomRegular: rejection budget exhausted");
}

PlantedSubsetSum genPlantedSubsetSum(int n, std::uint64_t seed) {
    if (n <= 0 || n % 2 != 0) throw InvalidArgument("genPlantedSubsetSum: n must be positive and even");
    if (n > 62) throw InvalidArgument("genPlantedSubsetSum: n <= 62 required");
    Rng rng(seed);
    PlantedSubsetSum out;
    out.instance.n = n;
    out.instance.w.resize(n);
    for (int i = 0; i < n; ++i)
        out.instance.w[i] = BigInt(rng.range(1, std::uint64_t(1) << n));
    out.planted = fullMask(n / 2);
    out.instance.target = out.instance.weightOf(out.planted);
    return out;
}

}  // namespace exactexpo
