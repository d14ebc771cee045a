#include <doctest.h>

#include <numeric>

#include "subconv/arith.hpp"

using namespace subconv;
using arith::i64;

namespace {

// independent trial-division oracle
std::vector<std::pair<i64, int>> trial_division(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace

TEST_CASE("factorize basics") {
    CHECK(arith::factorize(1).empty());
    auto f12 = arith::factorize(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0].prime == 2);
    CHECK(f12[0].exponent == 2);
    CHECK(f12[1].prime == 3);
    CHECK(f12[1].exponent == 1);

    auto f = arith::factorize(600851475143LL);
    REQUIRE(f.size() == 4);
    CHECK(f[0].prime == 71);
    CHECK(f[1].prime == 839);
    CHECK(f[2].prime == 1471);
    CHECK(f[3].prime == 6857);
}

TEST_CASE("factorize against trial division") {
    arith::SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        i64 n = 1 + i64(rng.next_below(5000000));
        auto mine = arith::factorize(n);
        auto oracle = trial_division(n);
        REQUIRE(mine.size() == oracle.size());
        i64 rebuilt = 1;
        for (size_t k = 0; k < mine.size(); ++k) {
            CHECK(mine[k].prime == oracle[k].first);
            CHECK(mine[k].exponent == oracle[k].second);
            CHECK(arith::is_prime(mine[k].prime));
            for (int e = 0; e < mine[k].exponent; ++e) rebuilt *= mine[k].prime;
        }
        CHECK(rebuilt == n);
    }
}

TEST_CASE("inv_mod") {
    for (i64 q : {i64(2), i64(7), i64(100), i64(9973)}) CHECK(arith::inv_mod(1, q) == 1);
    CHECK(arith::inv_mod(3, 7) == 5);
    CHECK_THROWS_AS(arith::inv_mod(6, 9), NotCoprime);

    arith::SplitMix64 rng(11);
    for (int i = 0; i < 500; ++i) {
        i64 q = 2 + i64(rng.next_below(1000000));
        i64 a = 1 + i64(rng.next_below(arith::u64(q - 1)));
        if (std::gcd(a, q) != 1) continue;
        i64 inv = arith::inv_mod(a, q);
        CHECK(arith::mulmod(a, inv, q) == 1);
        CHECK(inv >= 0);
        CHECK(inv < q);
        // involution
        CHECK(arith::inv_mod(inv, q) == a % q);
    }
}

TEST_CASE("crt_combine") {
    CHECK(arith::crt_combine({{0, 3}, {0, 5}}) == 0);
    CHECK(arith::crt_combine({{2, 3}, {3, 5}}) == 8);
    // exhaustive scan oracle on [0, 15)
    for (i64 r3 = 0; r3 < 3; ++r3)
        for (i64 r5 = 0; r5 < 5; ++r5) {
            i64 x = arith::crt_combine({{r3, 3}, {r5, 5}});
            i64 expect = -1;
            for (i64 t = 0; t < 15; ++t)
                if (t % 3 == r3 && t % 5 == r5) { expect = t; break; }
            CHECK(x == expect);
        }
    i64 y = arith::crt_combine({{1, 4}, {2, 9}, {3, 25}});
    CHECK(y % 4 == 1);
    CHECK(y % 9 == 2);
    CHECK(y % 25 == 3);
    CHECK(y >= 0);
    CHECK(y < 900);
    CHECK_THROWS_AS(arith::crt_combine({{1, 4}, {1, 6}}), ModuliNotCoprime);
}

TEST_CASE("rational phase algebra") {
    using arith::RationalPhase;
    RationalPhase a(3, 8), b(7, 8);
    auto c = a + b;
    CHECK(c.numerator() == 1);
    CHECK(c.denominator() == 4);
    // eval additivity
    for (i64 q : {i64(5), i64(12), i64(97)}) {
        for (i64 x = 0; x < q; ++x) {
            auto lhs = RationalPhase(x, q).eval() * RationalPhase(2 * x + 1, q).eval();
            auto rhs = (RationalPhase(x, q) + RationalPhase(2 * x + 1, q)).eval();
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }
    CHECK(std::abs(std::abs(RationalPhase(5, 7).eval()) - 1.0) <= 1e-15);
}

TEST_CASE("reciprocity split") {
    // m = 1 degenerate
    auto r = arith::reciprocity_split(1, 1, 7);
    auto total = r.m_inverse_over_n + r.n_inverse_over_m + r.negated_joint;
    CHECK(total.numerator() == 0);

    // spec example (1, 3, 5): 2/5 + 2/3 - 1/15 == 1 (mod 1)
    auto s = arith::reciprocity_split(1, 3, 5);
    CHECK(s.m_inverse_over_n == arith::RationalPhase(2, 5));
    CHECK(s.n_inverse_over_m == arith::RationalPhase(2, 3));
    CHECK(s.negated_joint == arith::RationalPhase(-1, 15));

    CHECK_THROWS_AS(arith::reciprocity_split(1, 6, 9), NotCoprime);

    // identity holds exactly for all coprime pairs up to 200
    arith::SplitMix64 rng(3);
    for (i64 m = 1; m <= 200; ++m) {
        for (i64 n = 1; n <= 200; ++n) {
            if (std::gcd(m, n) != 1) continue;
            i64 a = i64(rng.next_below(1000)) - 500;
            auto sp = arith::reciprocity_split(a, m, n);
            auto z = sp.m_inverse_over_n + sp.n_inverse_over_m + sp.negated_joint;
            REQUIRE(z.numerator() == 0);  // exact rational identity
        }
    }
}

TEST_CASE("overflow guards") {
    CHECK_THROWS_AS(arith::checked_mul(INT64_MAX / 2, 3), Overflow);
    CHECK(arith::checked_mul(1LL << 30, 1LL << 30) == (1LL << 60));
}
