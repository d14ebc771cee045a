#pragma once

// Exact integer and root-of-unity arithmetic. Everything else in the library
// reduces its finite character sums to the primitives here: reduced rational
// phases a/q standing for e(a/q) = exp(2*pi*i*a/q), modular inverses, CRT,
// and the elementary reciprocity splitting
//     a*mbar/n + a*nbar/m == a/(mn)  (mod 1),  (m,n)=1.
//
// 64-bit integers throughout, with 128-bit intermediates for products; sums
// of roots of unity are accumulated in compensated (Kahan) double precision.

#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "subconv/errors.hpp"

namespace subconv::arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Overflow-checked helpers
// ---------------------------------------------------------------------------

inline i64 checked_mul(i64 a, i64 b) {
    i128 p = i128(a) * i128(b);
    if (p > i128(INT64_MAX) || p < i128(INT64_MIN))
        throw Overflow("checked_mul: 64-bit overflow");
    return i64(p);
}

inline i64 checked_add(i64 a, i64 b) {
    i128 s = i128(a) + i128(b);
    if (s > i128(INT64_MAX) || s < i128(INT64_MIN))
        throw Overflow("checked_add: 64-bit overflow");
    return i64(s);
}

// a mod m reduced to [0, m), m >= 1
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// (a * b) mod m without overflow, m >= 1, a,b arbitrary 64-bit
inline i64 mulmod(i64 a, i64 b, i64 m) {
    i128 p = i128(mod_floor(a, m)) * i128(mod_floor(b, m));
    return i64(p % m);
}

inline i64 powmod(i64 base, u64 exp, i64 m) {
    i64 r = 1 % m, b = mod_floor(base, m);
    while (exp) {
        if (exp & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    return r;
}

// Extended gcd: returns g = gcd(a,b) and (x,y) with a*x + b*y = g.
struct ExtGcd {
    i64 g, x, y;
};
inline ExtGcd ext_gcd(i64 a, i64 b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1 : 1, 0};
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

// Modular inverse of a mod q, result in [0, q).  Throws NotCoprime when
// gcd(a, q) > 1.  q = 1 returns 0 (the unique residue).
inline i64 inv_mod(i64 a, i64 q) {
    if (q <= 0) throw PreconditionViolated("inv_mod: modulus must be positive");
    if (q == 1) return 0;
    ExtGcd e = ext_gcd(mod_floor(a, q), q);
    if (e.g != 1) throw NotCoprime("inv_mod: gcd(a,q) > 1");
    return mod_floor(e.x, q);
}

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct PrimePower {
    i64 prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

// Sorted prime-power decomposition.  factorize(1) is the empty list.
using Factorization = std::vector<PrimePower>;

bool is_prime(i64 n);                 // deterministic Miller-Rabin, 64-bit
Factorization factorize(i64 n);       // Pollard rho + trial division, 1 <= n < 2^63

i64 euler_phi(i64 n);
i64 euler_phi(const Factorization& f);
int mobius(i64 n);                    // 0 if not squarefree
i64 radical(const Factorization& f);
std::vector<i64> divisors(i64 n);     // all positive divisors, sorted
i64 divisor_count(i64 n);

// Primes <= n, by sieve.
std::vector<i64> primes_up_to(i64 n);
// pi(n) = number of primes <= n.
i64 prime_pi(i64 n);

// ---------------------------------------------------------------------------
// RationalPhase: the reduced fraction a/q standing for e(a/q)
// ---------------------------------------------------------------------------

class RationalPhase {
public:
    RationalPhase() : num_(0), den_(1) {}

    // e(a/q); a arbitrary, q >= 1.  Reduced so that gcd(num,den)=1 and
    // 0 <= num < den.
    RationalPhase(i64 a, i64 q) {
        if (q <= 0) throw PreconditionViolated("RationalPhase: denominator must be positive");
        a = mod_floor(a, q);
        i64 g = std::gcd(a, q);
        num_ = a / g;
        den_ = q / g;
    }

    i64 numerator() const { return num_; }
    i64 denominator() const { return den_; }

    // e(a/q)*e(b/r) = e(a/q + b/r), exactly in rational arithmetic.
    RationalPhase operator+(const RationalPhase& o) const {
        i64 g = std::gcd(den_, o.den_);
        i64 den = checked_mul(den_ / g, o.den_);
        // num = num_*(o.den_/g) + o.num_*(den_/g), reduced mod den
        i128 n = i128(num_) * (o.den_ / g) + i128(o.num_) * (den_ / g);
        i128 d = i128(den);
        i128 r = n % d;
        if (r < 0) r += d;
        return RationalPhase(i64(r), den);
    }

    RationalPhase operator-() const { return RationalPhase(-num_, den_); }
    RationalPhase operator-(const RationalPhase& o) const { return *this + (-o); }

    // e(a/q)^k
    RationalPhase times(i64 k) const {
        return RationalPhase(mulmod(num_, mod_floor(k, den_), den_), den_);
    }

    bool operator==(const RationalPhase&) const = default;

    // Unit-modulus complex value, |error| <= 1e-15.
    complexd eval() const {
        double t = 2.0 * 3.14159265358979323846264338327950288 *
                   (double(num_) / double(den_));
        return {std::cos(t), std::sin(t)};
    }

private:
    i64 num_;
    i64 den_;  // > 0
};

// e(a/q) as a complex number.
inline complexd phase_unit(i64 a, i64 q) { return RationalPhase(a, q).eval(); }

// ---------------------------------------------------------------------------
// CRT
// ---------------------------------------------------------------------------

struct Residue {
    i64 value;
    i64 modulus;
};

// Combine residues with pairwise coprime moduli; result in [0, prod).
// Throws ModuliNotCoprime if any pair of moduli shares a factor.
i64 crt_combine(const std::vector<Residue>& parts);

// ---------------------------------------------------------------------------
// Elementary reciprocity
// ---------------------------------------------------------------------------

struct ReciprocitySplit {
    RationalPhase m_inverse_over_n;  // a*mbar/n
    RationalPhase n_inverse_over_m;  // a*nbar/m
    RationalPhase negated_joint;     // -a/(mn)
};

// For (m,n)=1 returns phases with a*mbar/n + a*nbar/m - a/(mn) == 0 (mod 1)
// exactly in rational arithmetic.
ReciprocitySplit reciprocity_split(i64 a, i64 m, i64 n);

// ---------------------------------------------------------------------------
// Compensated accumulation
// ---------------------------------------------------------------------------

class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

class KahanComplex {
public:
    void add(complexd z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    complexd value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// ---------------------------------------------------------------------------
// Small deterministic RNG (splitmix64) so that seeded reports are
// byte-identical across platforms; std:: distributions are not.
// ---------------------------------------------------------------------------

class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    u64 next_below(u64 n) { return next() % n; }

    // independent stream for a sub-task
    SplitMix64 fork(u64 tag) {
        SplitMix64 child(state_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
        child.next();
        return child;
    }

private:
    u64 state_;
};

} // namespace subconv::arith
