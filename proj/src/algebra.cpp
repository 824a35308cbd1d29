#include "exactexpo/algebra.hpp"

#include <algorithm>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>

namespace exactexpo {

int workerCount() {
    int hw = 1;
#ifdef _OPENMP
    hw = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("EXACTEXPO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) hw = std::min<long>(hw, v);
    }
    return std::max(1, hw);
}

}  // namespace exactexpo

namespace exactexpo::algebra {

// --- GF(2^k) -----------------------------------------------------------------

namespace {

// Smallest low-part mask making x^k + low irreducible, for k = 1..64.
// Generated offline by exhaustive search; re-verified at construction.
constexpr std::uint64_t kIrreducibleLowMask[65] = {
    0x0ULL,  // degree 0: unused
    0x1ULL,  0x3ULL,  0x3ULL,  0x3ULL,  0x5ULL,  0x3ULL,  0x3ULL,  0x1bULL,  // 1..8
    0x3ULL,  0x9ULL,  0x5ULL,  0x9ULL,  0x1bULL, 0x21ULL, 0x3ULL,  0x2bULL,  // 9..16
    0x9ULL,  0x9ULL,  0x27ULL, 0x9ULL,  0x5ULL,  0x3ULL,  0x21ULL, 0x1bULL,  // 17..24
    0x9ULL,  0x1bULL, 0x27ULL, 0x3ULL,  0x5ULL,  0x3ULL,  0x9ULL,  0x8dULL,  // 25..32
    0x4bULL, 0x1bULL, 0x5ULL,  0x35ULL, 0x3fULL, 0x63ULL, 0x11ULL, 0x39ULL,  // 33..40
    0x9ULL,  0x27ULL, 0x59ULL, 0x21ULL, 0x1bULL, 0x3ULL,  0x21ULL, 0x2dULL,  // 41..48
    0x71ULL, 0x1dULL, 0x4bULL, 0x9ULL,  0x47ULL, 0x7dULL, 0x47ULL, 0x95ULL,  // 49..56
    0x11ULL, 0x63ULL, 0x7bULL, 0x3ULL,  0x27ULL, 0x69ULL, 0x3ULL,  0x1bULL,  // 57..64
};

using u128 = unsigned __int128;

int polyDeg(u128 a) {
    if (!a) return -1;
    int d = 0;
    while (a >> 1) { a >>= 1; ++d; }
    return d;
}

u128 polyMod(u128 a, u128 m) {
    const int dm = polyDeg(m);
    for (;;) {
        int da = polyDeg(a);
        if (da < dm) return a;
        a ^= m << (da - dm);
    }
}

u128 polyGcd(u128 a, u128 b) {
    while (b) {
        u128 t = polyMod(a, b);
        a = b;
        b = t;
    }
    return a;
}

// Multiplication in GF(2)[x] / (x^k + low), elements as k-bit words.
std::uint64_t gfMul(int k, std::uint64_t low, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t m = (k == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << k) - 1);
    a &= m;
    b &= m;
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        std::uint64_t carry = (a >> (k - 1)) & 1;
        a = (a << 1) & m;
        if (carry) a ^= low & m;
    }
    return r;
}

}  // namespace

bool gf2PolyIrreducible(int k, std::uint64_t low) {
    if (k < 1 || k > 64) return false;
    if (!(low & 1)) return false;  // reducible: divisible by x
    const std::uint64_t x = (k == 1) ? (low & 1) : 2;  // the element "x" reduced mod f
    // x^(2^k) == x
    std::uint64_t r = x;
    for (int i = 0; i < k; ++i) r = gfMul(k, low, r, r);
    if (r != x) return false;
    // gcd(x^(2^(k/q)) - x, f) = 1 for every prime q | k
    const u128 f = (u128(1) << k) ^ u128(low);
    for (int q = 2; q <= k; ++q) {
        if (k % q) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (!prime) continue;
        std::uint64_t t = x;
        for (int i = 0; i < k / q; ++i) t = gfMul(k, low, t, t);
        t ^= x;
        if (t == 0) return false;  // x^(2^(k/q)) == x: proper subfield contains x
        if (polyDeg(polyGcd(f, u128(t))) != 0) return false;
    }
    return true;
}

Gf2kField::Gf2kField(int kBits) : k_(kBits) {
    if (kBits < 1 || kBits > 64) throw InvalidArgument("Gf2kField: degree must be in 1..64");
    low_ = kIrreducibleLowMask[kBits];
    if (!gf2PolyIrreducible(k_, low_))
        throw std::logic_error("Gf2kField: table polynomial failed irreducibility re-check");
}

Gf2kField::Elem Gf2kField::mul(Elem a, Elem b) const { return gfMul(k_, low_, a, b); }

Gf2kField::Elem Gf2kField::inv(Elem a) const {
    if ((a & mask()) == 0) throw InvalidArgument("Gf2kField: zero has no inverse");
    // Fermat: a^(2^k - 2)
    Elem result = 1;
    Elem base = a & mask();
    Elem e = mask() - 1;  // 2^k - 2
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Gf2kField Gf2kField::withMinSize(std::uint64_t size) {
    int k = 1;
    while (k < 64 && (std::uint64_t(1) << k) < size) ++k;
    return Gf2kField(k);
}

// --- Primes and Z_p -------------------------------------------------------------

namespace {

std::uint64_t mulmodU64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)(a) * b % m);
}

std::uint64_t powmodU64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmodU64(r, a, m);
        a = mulmodU64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool isPrime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is a proven deterministic witness set below 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmodU64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmodU64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

ZpField::ZpField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t(1) << 62)) throw InvalidArgument("ZpField: p out of range");
    if (!isPrime(p)) throw InvalidArgument("ZpField: modulus is not prime");
}

ZpField::Elem ZpField::inv(Elem a) const {
    a %= p_;
    if (a == 0) throw InvalidArgument("ZpField: zero has no inverse");
    return powmodU64(a, p_ - 2, p_);
}

ZpField::Elem ZpField::reduce(const BigInt& x) const {
    BigInt r = x % BigInt(p_);
    if (r < 0) r += p_;
    return r.convert_to<std::uint64_t>();
}

ZpField::Elem ZpField::reduceSigned(std::int64_t x) const {
    std::int64_t r = x % std::int64_t(p_);
    if (r < 0) r += std::int64_t(p_);
    return std::uint64_t(r);
}

std::uint64_t samplePrime(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
    if (lo < 2 || lo > hi || hi >= (std::uint64_t(1) << 62))
        throw InvalidArgument("samplePrime: need 2 <= lo <= hi < 2^62");
    Rng rng(seed);
    // Expected tries ~ ln(hi); 4096 exhausts only with negligible probability
    // on any range that contains a prime.
    for (int tries = 0; tries < 4096; ++tries) {
        std::uint64_t c = rng.range(lo, hi);
        if (isPrime(c)) return c;
    }
    for (std::uint64_t c = lo;; ++c) {
        if (isPrime(c)) return c;
        if (c == hi) break;
    }
    throw InvalidArgument("samplePrime: range contains no prime");
}

// --- Determinants -----------------------------------------------------------------

template <class Field>
typename Field::Elem determinant(Matrix<typename Field::Elem> m, const Field& F) {
    using E = typename Field::Elem;
    if (m.rows != m.cols) throw InvalidArgument("determinant: matrix not square");
    const int n = m.rows;
    E det = F.one();
    bool negate = false;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != F.zero()) { pivot = r; break; }
        if (pivot < 0) return F.zero();
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            negate = !negate;
        }
        det = F.mul(det, m.at(col, col));
        E inv = F.inv(m.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col) == F.zero()) continue;
            E factor = F.mul(m.at(r, col), inv);
            for (int c = col; c < n; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(col, c)));
        }
    }
    if (negate) det = F.sub(F.zero(), det);
    return det;
}

template Gf2kField::Elem determinant<Gf2kField>(Matrix<Gf2kField::Elem>, const Gf2kField&);
template ZpField::Elem determinant<ZpField>(Matrix<ZpField::Elem>, const ZpField&);

BigInt determinantExactInt(Matrix<BigInt> m) {
    if (m.rows != m.cols) throw InvalidArgument("determinantExactInt: matrix not square");
    const int n = m.rows;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (m.at(r, k) != 0) { pivot = r; break; }
            if (pivot < 0) return 0;
            for (int c = k; c < n; ++c) std::swap(m.at(pivot, c), m.at(k, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // Bareiss: division is exact
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

// --- Transforms ---------------------------------------------------------------------

template <class Ring>
std::vector<typename Ring::Elem> yatesKroneckerMatVec(
    const Ring& R, const Matrix<typename Ring::Elem>& base, int n,
    const std::vector<typename Ring::Elem>& v, Exec exec, std::uint64_t* touched) {
    using E = typename Ring::Elem;
    const int r = base.rows, c = base.cols;
    if (r < 1 || c < 1) throw InvalidArgument("yatesKroneckerMatVec: empty base");
    std::uint64_t want = 1;
    for (int i = 0; i < n; ++i) {
        if (want > (std::uint64_t(1) << 62) / std::uint64_t(c))
            throw InvalidArgument("yatesKroneckerMatVec: c^n overflows the memory budget");
        want *= std::uint64_t(c);
    }
    if (v.size() != want) throw InvalidArgument("yatesKroneckerMatVec: v must have c^n entries");

    std::vector<E> cur = v;
    std::uint64_t touchCount = 0;
    std::uint64_t lowSize = 1;                 // r^pass
    std::uint64_t highSize = want;             // c^(n-pass-1) * c, shrinking
    for (int pass = 0; pass < n; ++pass) {
        highSize /= std::uint64_t(c);  // block count above the active digit
        const std::uint64_t pairs = highSize * lowSize;
        std::vector<E> next(pairs * std::uint64_t(r), R.zero());
        const std::int64_t total = std::int64_t(pairs);
        const bool par = exec == Exec::Parallel && workerCount() > 1 && total > 1024;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workerCount()) if (par)
#endif
        for (std::int64_t idx = 0; idx < total; ++idx) {
            const std::uint64_t hi = std::uint64_t(idx) / lowSize;
            const std::uint64_t lo = std::uint64_t(idx) % lowSize;
            for (int e = 0; e < r; ++e) {
                E acc = R.zero();
                for (int d = 0; d < c; ++d)
                    acc = R.add(acc, R.mul(base.at(e, d), cur[(hi * c + d) * lowSize + lo]));
                next[(hi * r + e) * lowSize + lo] = acc;
            }
        }
        (void)par;
        touchCount += pairs * std::uint64_t(r + c);
        cur = std::move(next);
        lowSize *= std::uint64_t(r);
    }
    if (touched) *touched = touchCount;
    return cur;
}

namespace {

template <class Ring, bool kZeta>
void latticePass(const Ring& R, std::vector<typename Ring::Elem>& v, int n, Exec exec,
                 std::uint64_t* touched) {
    if (v.size() != (std::size_t(1) << n))
        throw InvalidArgument("lattice transform: length must be 2^n");
    std::uint64_t touchCount = 0;
    for (int bit = 0; bit < n; ++bit) {
        const std::uint64_t step = std::uint64_t(1) << bit;
        const std::int64_t total = std::int64_t(v.size() / 2);
        const bool par = exec == Exec::Parallel && workerCount() > 1 && total > 4096;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workerCount()) if (par)
#endif
        for (std::int64_t i = 0; i < total; ++i) {
            // i enumerates masks with the active bit cleared.
            const std::uint64_t lowPart = std::uint64_t(i) & (step - 1);
            const std::uint64_t highPart = (std::uint64_t(i) >> bit) << (bit + 1);
            const std::uint64_t target = highPart | step | lowPart;
            if constexpr (kZeta)
                v[target] = R.add(v[target], v[target ^ step]);
            else
                v[target] = R.sub(v[target], v[target ^ step]);
        }
        (void)par;
        touchCount += std::uint64_t(total) * 2;
    }
    if (touched) *touched = touchCount;
}

}  // namespace

template <class Ring>
void zetaTransform(const Ring& R, std::vector<typename Ring::Elem>& v, int n, Exec exec,
                   std::uint64_t* touched) {
    latticePass<Ring, true>(R, v, n, exec, touched);
}

template <class Ring>
void moebiusTransform(const Ring& R, std::vector<typename Ring::Elem>& v, int n, Exec exec,
                      std::uint64_t* touched) {
    latticePass<Ring, false>(R, v, n, exec, touched);
}

std::vector<Mask> upClosure(const std::vector<Mask>& support, int n) {
    std::unordered_set<Mask> seen(support.begin(), support.end());
    std::vector<Mask> work(seen.begin(), seen.end());
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Mask m = work[i];
        for (int b = 0; b < n; ++b) {
            const Mask up = m | (Mask(1) << b);
            if (up != m && seen.insert(up).second) work.push_back(up);
        }
    }
    std::sort(work.begin(), work.end());
    return work;
}

std::vector<Mask> downClosure(const std::vector<Mask>& family) {
    std::unordered_set<Mask> seen;
    for (Mask f : family) {
        Mask sub = f;
        for (;;) {
            seen.insert(sub);
            if (sub == 0) break;
            sub = (sub - 1) & f;
        }
    }
    std::vector<Mask> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

template <class Ring, bool kZeta>
void familyPass(const Ring& R, const std::vector<Mask>& family,
                std::vector<typename Ring::Elem>& values, int n) {
    if (family.size() != values.size())
        throw InvalidArgument("family transform: family/values size mismatch");
    std::unordered_map<Mask, std::size_t> index;
    index.reserve(family.size() * 2);
    for (std::size_t i = 0; i < family.size(); ++i) index.emplace(family[i], i);
    for (int bit = 0; bit < n; ++bit) {
        const Mask step = Mask(1) << bit;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (!(family[i] & step)) continue;
            auto it = index.find(family[i] ^ step);
            if (it == index.end()) continue;  // absent: value is zero by closure
            if constexpr (kZeta)
                values[i] = R.add(values[i], values[it->second]);
            else
                values[i] = R.sub(values[i], values[it->second]);
        }
    }
}

}  // namespace

template <class Ring>
void zetaOnFamily(const Ring& R, const std::vector<Mask>& family,
                  std::vector<typename Ring::Elem>& values, int n) {
    familyPass<Ring, true>(R, family, values, n);
}

template <class Ring>
void moebiusOnFamily(const Ring& R, const std::vector<Mask>& family,
                     std::vector<typename Ring::Elem>& values, int n) {
    familyPass<Ring, false>(R, family, values, n);
}

template <class Ring>
std::unordered_map<Mask, typename Ring::Elem> trimmedUpClosureTransform(
    const Ring& R, SmallMatrixKind kind,
    const std::vector<std::pair<Mask, typename Ring::Elem>>& sparseV, int n,
    std::uint64_t* touched) {
    if (kind != SmallMatrixKind::Zeta && kind != SmallMatrixKind::Moebius)
        throw InvalidArgument("trimmedUpClosureTransform: kind must be Zeta or Moebius");
    std::vector<Mask> support;
    support.reserve(sparseV.size());
    for (const auto& [m, val] : sparseV) {
        (void)val;
        if (n < 64 && m >= (Mask(1) << n))
            throw InvalidArgument("trimmedUpClosureTransform: mask outside universe");
        support.push_back(m);
    }
    std::vector<Mask> closure = upClosure(support, n);
    std::unordered_map<Mask, std::size_t> index;
    index.reserve(closure.size() * 2);
    for (std::size_t i = 0; i < closure.size(); ++i) index.emplace(closure[i], i);
    std::vector<typename Ring::Elem> values(closure.size(), R.zero());
    for (const auto& [m, val] : sparseV) {
        auto& slot = values[index.at(m)];
        slot = R.add(slot, val);
    }
    if (kind == SmallMatrixKind::Zeta)
        zetaOnFamily(R, closure, values, n);
    else
        moebiusOnFamily(R, closure, values, n);
    if (touched) *touched = closure.size();
    std::unordered_map<Mask, typename Ring::Elem> out;
    out.reserve(closure.size() * 2);
    for (std::size_t i = 0; i < closure.size(); ++i) out.emplace(closure[i], values[i]);
    return out;
}

// --- Explicit instantiations ----------------------------------------------------

#define EXACTEXPO_INSTANTIATE_RING(Ring)                                                     \
    template std::vector<Ring::Elem> yatesKroneckerMatVec<Ring>(                             \
        const Ring&, const Matrix<Ring::Elem>&, int, const std::vector<Ring::Elem>&, Exec,   \
        std::uint64_t*);                                                                     \
    template void zetaTransform<Ring>(const Ring&, std::vector<Ring::Elem>&, int, Exec,      \
                                      std::uint64_t*);                                       \
    template void moebiusTransform<Ring>(const Ring&, std::vector<Ring::Elem>&, int, Exec,   \
                                         std::uint64_t*);                                    \
    template void zetaOnFamily<Ring>(const Ring&, const std::vector<Mask>&,                  \
                                     std::vector<Ring::Elem>&, int);                         \
    template void moebiusOnFamily<Ring>(const Ring&, const std::vector<Mask>&,               \
                                        std::vector<Ring::Elem>&, int);                      \
    template std::unordered_map<Mask, Ring::Elem> trimmedUpClosureTransform<Ring>(           \
        const Ring&, SmallMatrixKind, const std::vector<std::pair<Mask, Ring::Elem>>&, int,  \
        std::uint64_t*);

EXACTEXPO_INSTANTIATE_RING(Int64Ring)
EXACTEXPO_INSTANTIATE_RING(BigIntRing)
EXACTEXPO_INSTANTIATE_RING(Gf2kField)
EXACTEXPO_INSTANTIATE_RING(ZpField)

#undef EXACTEXPO_INSTANTIATE_RING

}  // namespace exactexpo::algebra
