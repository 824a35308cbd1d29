#pragma once

// Finite fields (GF(2^k), Z_p), exact integer linear algebra, and
// subset-lattice transforms (Yates' Kronecker-power mat-vec, zeta, Moebius,
// and family-restricted "trimmed" variants).
//
// Rings are passed as objects exposing Elem/add/sub/mul/zero/one (fields add
// inv). Transform templates are instantiated for the concrete rings used by
// the solvers; see src/algebra.cpp for the extern declarations.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "exactexpo/common.hpp"

namespace exactexpo::algebra {

// --- Rings and fields -------------------------------------------------------

struct Int64Ring {
    using Elem = std::int64_t;
    static Elem add(Elem a, Elem b) { return a + b; }
    static Elem sub(Elem a, Elem b) { return a - b; }
    static Elem mul(Elem a, Elem b) { return a * b; }
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
};

struct BigIntRing {
    using Elem = BigInt;
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
};

// GF(2^k), k in 1..64, elements as k-bit words in the polynomial basis.
// The irreducible polynomial per degree is a fixed embedded table (smallest
// low-part mask), re-verified at construction.
class Gf2kField {
  public:
    using Elem = std::uint64_t;

    explicit Gf2kField(int kBits);

    int kBits() const { return k_; }
    std::uint64_t polyLowMask() const { return low_; }

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem sub(Elem a, Elem b) const { return a ^ b; }
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // a != 0
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem mask() const { return k_ == 64 ? ~Elem(0) : ((Elem(1) << k_) - 1); }

    // Smallest field of this family with at least `size` elements.
    static Gf2kField withMinSize(std::uint64_t size);

  private:
    int k_;
    std::uint64_t low_;
};

// Irreducibility of x^k + low over GF(2); used by the construction check.
bool gf2PolyIrreducible(int k, std::uint64_t low);

// Deterministic Miller-Rabin, valid for all inputs below 2^64.
bool isPrime(std::uint64_t n);

// Z_p for prime p < 2^62.
class ZpField {
  public:
    using Elem = std::uint64_t;

    explicit ZpField(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p_ ? s - p_ : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return Elem((unsigned __int128)(a) * b % p_); }
    Elem inv(Elem a) const;  // a != 0
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem reduce(const BigInt& x) const;
    Elem reduceSigned(std::int64_t x) const;

  private:
    std::uint64_t p_;
};

// Uniform prime in [lo, hi] via rejection sampling; falls back to a linear
// scan when the rejection budget is exhausted, so it fails only if the range
// contains no prime.
std::uint64_t samplePrime(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed);

// --- Matrices ----------------------------------------------------------------

template <class T>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}
    Matrix(int r, int c, std::initializer_list<T> init) : rows(r), cols(c), a(init) {}
    T& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    const T& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
    bool operator==(const Matrix&) const = default;
};

// Base matrices for Kronecker powers. Zeta = (1 0 / 1 1), Moebius =
// (1 0 / -1 1) (signs via ring sub), NarrowCutQ = 3x3 all-ones minus identity.
enum class SmallMatrixKind { Zeta, Moebius, NarrowCutQ };

template <class Ring>
Matrix<typename Ring::Elem> smallMatrix(const Ring& R, SmallMatrixKind kind) {
    using E = typename Ring::Elem;
    switch (kind) {
        case SmallMatrixKind::Zeta: {
            Matrix<E> m(2, 2);
            m.at(0, 0) = R.one(); m.at(0, 1) = R.zero();
            m.at(1, 0) = R.one(); m.at(1, 1) = R.one();
            return m;
        }
        case SmallMatrixKind::Moebius: {
            Matrix<E> m(2, 2);
            m.at(0, 0) = R.one(); m.at(0, 1) = R.zero();
            m.at(1, 0) = R.sub(R.zero(), R.one()); m.at(1, 1) = R.one();
            return m;
        }
        case SmallMatrixKind::NarrowCutQ: {
            Matrix<E> m(3, 3);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m.at(r, c) = r == c ? R.zero() : R.one();
            return m;
        }
    }
    throw InvalidArgument("smallMatrix: unknown kind");
}

// Exact determinant over a field (Gaussian elimination, pivot search over
// the remaining rows; a pivotless column ends the elimination with 0).
// 0x0 -> 1.
template <class Field>
typename Field::Elem determinant(Matrix<typename Field::Elem> m, const Field& F);

// Exact integer determinant via fraction-free Bareiss elimination. 0x0 -> 1.
BigInt determinantExactInt(Matrix<BigInt> m);

// --- Subset-lattice transforms --------------------------------------------------

// y = (A^{(x) n}) v for an r x c base A and v of length c^n, by n passes of
// stride loops (Yates). Counter, when given, accumulates the number of
// vector slots read or written.
template <class Ring>
std::vector<typename Ring::Elem> yatesKroneckerMatVec(
    const Ring& R, const Matrix<typename Ring::Elem>& base, int n,
    const std::vector<typename Ring::Elem>& v, Exec exec = Exec::Parallel,
    std::uint64_t* touched = nullptr);

// In-place zeta / Moebius over the dense subset lattice of [n].
// (zeta v)[Y] = sum_{X subseteq Y} v[X]; Moebius is its inverse.
template <class Ring>
void zetaTransform(const Ring& R, std::vector<typename Ring::Elem>& v, int n,
                   Exec exec = Exec::Parallel, std::uint64_t* touched = nullptr);
template <class Ring>
void moebiusTransform(const Ring& R, std::vector<typename Ring::Elem>& v, int n,
                      Exec exec = Exec::Parallel, std::uint64_t* touched = nullptr);

// Family-restricted transforms. The family must be closed in the direction
// that makes the restriction exact: up-closed when values vanish outside the
// family's up-closure (sparse inputs), down-closed always. Entries absent
// from the family are treated as zero. Values are kept aligned with `family`
// (sorted ascending).
template <class Ring>
void zetaOnFamily(const Ring& R, const std::vector<Mask>& family,
                  std::vector<typename Ring::Elem>& values, int n);
template <class Ring>
void moebiusOnFamily(const Ring& R, const std::vector<Mask>& family,
                     std::vector<typename Ring::Elem>& values, int n);

// All supersets of at least one support mask, sorted ascending.
std::vector<Mask> upClosure(const std::vector<Mask>& support, int n);
// All subsets of at least one family mask, sorted ascending.
std::vector<Mask> downClosure(const std::vector<Mask>& family);

// Sparse trimmed transform over the up-closure of supp(v): agrees with the
// dense transform on every mask in the closure and touches exactly
// |upClosure(supp v)| masks (reported in `touched`).
template <class Ring>
std::unordered_map<Mask, typename Ring::Elem> trimmedUpClosureTransform(
    const Ring& R, SmallMatrixKind kind,
    const std::vector<std::pair<Mask, typename Ring::Elem>>& sparseV, int n,
    std::uint64_t* touched = nullptr);

}  // namespace exactexpo::algebra
