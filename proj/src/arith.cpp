#include "subconv/arith.hpp"

#include <algorithm>

namespace subconv::arith {

namespace {

// Miller-Rabin strong-pseudoprime test for one base.
bool sprp(i64 n, i64 a) {
    if (a % n == 0) return true;
    i64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    i64 x = powmod(a, u64(d), n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Pollard rho (Brent variant); n odd composite, not a prime power of 2.
i64 pollard_rho(i64 n, u64 seed) {
    SplitMix64 rng(seed ^ u64(n));
    while (true) {
        i64 c = i64(rng.next_below(u64(n - 1))) + 1;
        i64 x = i64(rng.next_below(u64(n)));
        i64 y = x, d = 1;
        i64 saved = 1;
        int steps = 0;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            i64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            saved = mulmod(saved, diff, n);
            if (++steps % 64 == 0) {
                d = std::gcd(saved, n);
                saved = 1;
            }
        }
        if (d == 1) d = std::gcd(saved, n);
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(i64 n, Factorization& out, u64 seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    i64 d = pollard_rho(n, seed);
    factor_rec(d, out, seed + 1);
    factor_rec(n / d, out, seed + 2);
}

} // namespace

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for all 64-bit n with this base set.
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!sprp(n, a)) return false;
    return true;
}

Factorization factorize(i64 n) {
    if (n < 1) throw PreconditionViolated("factorize: n must be >= 1");
    Factorization flat;
    // Strip small primes first; Pollard only sees the hard cofactor.
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        while (n % p == 0) { flat.push_back({p, 1}); n /= p; }
    }
    if (n > 1) factor_rec(n, flat, 0x5eedULL);
    std::sort(flat.begin(), flat.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    Factorization out;
    for (const PrimePower& pp : flat) {
        if (!out.empty() && out.back().prime == pp.prime)
            out.back().exponent += 1;
        else
            out.push_back(pp);
    }
    return out;
}

i64 euler_phi(const Factorization& f) {
    i64 r = 1;
    for (const PrimePower& pp : f) {
        i64 pe = 1;
        for (int i = 1; i < pp.exponent; ++i) pe = checked_mul(pe, pp.prime);
        r = checked_mul(r, checked_mul(pe, pp.prime - 1));
    }
    return r;
}

i64 euler_phi(i64 n) { return euler_phi(factorize(n)); }

int mobius(i64 n) {
    Factorization f = factorize(n);
    for (const PrimePower& pp : f)
        if (pp.exponent > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

i64 radical(const Factorization& f) {
    i64 r = 1;
    for (const PrimePower& pp : f) r = checked_mul(r, pp.prime);
    return r;
}

std::vector<i64> divisors(i64 n) {
    Factorization f = factorize(n);
    std::vector<i64> out{1};
    for (const PrimePower& pp : f) {
        size_t old = out.size();
        i64 pe = 1;
        for (int e = 1; e <= pp.exponent; ++e) {
            pe = checked_mul(pe, pp.prime);
            for (size_t i = 0; i < old; ++i) out.push_back(checked_mul(out[i], pe));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 divisor_count(i64 n) {
    i64 d = 1;
    for (const PrimePower& pp : factorize(n)) d *= pp.exponent + 1;
    return d;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> comp(size_t(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (!comp[size_t(i)]) {
            out.push_back(i);
            for (i64 j = i * i; j <= n; j += i) comp[size_t(j)] = true;
        }
    }
    return out;
}

i64 prime_pi(i64 n) {
    return i64(primes_up_to(n).size());
}

i64 crt_combine(const std::vector<Residue>& parts) {
    i64 r = 0, m = 1;
    for (const Residue& p : parts) {
        if (p.modulus <= 0)
            throw PreconditionViolated("crt_combine: moduli must be positive");
        i64 g = std::gcd(m, p.modulus);
        if (g != 1)
            throw ModuliNotCoprime("crt_combine: moduli share a factor");
        // x = r (mod m), x = p.value (mod p.modulus)
        i64 m2 = p.modulus;
        i64 diff = mod_floor(p.value - r, m2);
        i64 t = mulmod(diff, inv_mod(m, m2), m2);
        i64 newmod = checked_mul(m, m2);
        r = mod_floor(checked_add(r, checked_mul(t, m)), newmod);
        m = newmod;
    }
    return mod_floor(r, m);
}

ReciprocitySplit reciprocity_split(i64 a, i64 m, i64 n) {
    if (m < 1 || n < 1)
        throw PreconditionViolated("reciprocity_split: m, n must be >= 1");
    if (std::gcd(m, n) != 1)
        throw NotCoprime("reciprocity_split: gcd(m,n) > 1");
    i64 mbar = inv_mod(m, n);  // 0 when n = 1
    i64 nbar = inv_mod(n, m);
    i64 mn = checked_mul(m, n);
    return {
        RationalPhase(mulmod(mod_floor(a, n), mbar, n), n),
        RationalPhase(mulmod(mod_floor(a, m), nbar, m), m),
        RationalPhase(mod_floor(-a, mn), mn),
    };
}

} // namespace subconv::arith
