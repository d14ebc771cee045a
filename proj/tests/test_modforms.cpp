#include <doctest.h>

#include <cmath>
#include <sstream>

#include "subconv/modforms.hpp"

using namespace subconv;
using arith::complexd;
using arith::i64;

TEST_CASE("divisor sequence") {
    auto seq = modforms::coeffs_divisor(3000);
    CHECK(seq(1) == complexd{1.0, 0.0});
    CHECK(seq(6) == complexd{4.0, 0.0});
    CHECK(seq(12) == complexd{6.0, 0.0});
    // independent divisor enumeration
    for (i64 n = 1; n <= 300; ++n) {
        i64 d = 0;
        for (i64 k = 1; k <= n; ++k)
            if (n % k == 0) ++d;
        CHECK(seq(n) == complexd{double(d), 0.0});
    }
    CHECK(modforms::hecke_check(seq, 50).pass);
}

TEST_CASE("ramanujan tau exact values") {
    auto tau = modforms::ramanujan_tau(1000);
    // reference values from the eta-product expansion
    CHECK(i64(tau[1]) == 1);
    CHECK(i64(tau[2]) == -24);
    CHECK(i64(tau[3]) == 252);
    CHECK(i64(tau[4]) == -1472);
    CHECK(i64(tau[5]) == 4830);
    CHECK(i64(tau[6]) == -6048);
    CHECK(i64(tau[7]) == -16744);
    CHECK(i64(tau[10]) == -115920);
    // composite values via the Hecke structure (an independent route from
    // the eta-product expansion that produced them)
    CHECK(tau[6] == tau[2] * tau[3]);
    CHECK(tau[10] == tau[2] * tau[5]);
    CHECK(tau[24] == tau[8] * tau[3]);
    CHECK(tau[100] == tau[4] * tau[25]);
    CHECK(i64(tau[24]) == 21288960);
    for (i64 p : {i64(2), i64(3), i64(5)}) {
        __int128 p11 = 1;
        for (int i = 0; i < 11; ++i) p11 *= p;
        CHECK(tau[size_t(p * p)] == tau[size_t(p)] * tau[size_t(p)] - p11);
    }
}

TEST_CASE("delta form normalization and Hecke") {
    auto seq = modforms::coeffs_delta_form(1000);
    CHECK(seq(1) == complexd{1.0, 0.0});
    CHECK(std::abs(seq(2).real() - (-24.0 / std::pow(2.0, 5.5))) <= 1e-15);
    CHECK(seq.weight() == 12);
    CHECK(seq.level() == 1);
    CHECK(modforms::hecke_check(seq, 30).pass);
    // Deligne bound |lambda(p)| <= 2 at primes
    for (i64 p : {i64(2), i64(3), i64(5), i64(7), i64(11), i64(13), i64(97)})
        CHECK(std::abs(seq(p)) <= 2.0);
}

TEST_CASE("synthetic sequence relations") {
    auto chars = charsums::characters_mod(101);
    const auto& chi = chars[1];
    auto seq = modforms::coeffs_synthetic(10300, chi, complexd{0.2, 0.1}, 99);
    CHECK(seq(1) == complexd{1.0, 0.0});
    CHECK(seq.level() == 101);

    // lambda(q^2) = lambda(q)^2 - chi(q) for primes q != p
    for (i64 q : arith::primes_up_to(97)) {
        CHECK(std::abs(seq(q * q) - (seq(q) * seq(q) - chi(q))) <= 1e-12);
    }
    // lambda(p^r) = lambda_p^r
    CHECK(std::abs(seq(101) - complexd{0.2, 0.1}) <= 1e-15);
    CHECK(std::abs(seq(101 * 101) - complexd{0.2, 0.1} * complexd{0.2, 0.1}) <= 1e-15);
    // lambda(n) = chi(n) conj(lambda(n)) for (n, p) = 1
    for (i64 n = 1; n <= 10300; ++n) {
        if (n % 101 == 0) continue;
        CHECK(std::abs(seq(n) - chi(n) * std::conj(seq(n))) <= 1e-9);
    }
    CHECK(modforms::hecke_check(seq, 100).pass);
    // determinism
    auto seq2 = modforms::coeffs_synthetic(100, chi, complexd{0.2, 0.1}, 99);
    for (i64 n = 1; n <= 100; ++n) CHECK(seq(n) == seq2(n));
    CHECK_THROWS_AS(
        modforms::coeffs_synthetic(100, chi, complexd{1.2, 0.0}, 1), InvalidLambdaP);
}

TEST_CASE("amplifier identity") {
    auto chars = charsums::characters_mod(101);
    auto seq = modforms::coeffs_synthetic(10100, chars[2], complexd{-0.3, 0.2}, 7);
    // L = 2: single prime 2 in (1, 2]
    auto rep2 = modforms::amplifier_eval(seq, 2);
    CHECK(rep2.prime_count == 1);
    CHECK(std::abs(rep2.A - complexd{1.0, 0.0}) <= 1e-9);
    // L = 10: pi(10) - pi(5) = 1 (the prime 7)
    auto rep10 = modforms::amplifier_eval(seq, 10);
    CHECK(rep10.prime_count == arith::prime_pi(10) - arith::prime_pi(5));
    CHECK(rep10.prime_count == 1);
    CHECK(rep10.deviation <= 1e-9);
    // L = 100: pi(100) - pi(50) = 10
    auto rep100 = modforms::amplifier_eval(seq, 100);
    CHECK(rep100.prime_count == 10);
    CHECK(rep100.deviation <= 1e-9);
    // level too small
    auto small_chi = charsums::characters_mod(7)[1];
    auto small = modforms::coeffs_synthetic(100, small_chi, complexd{0.0, 0.0}, 1);
    CHECK_THROWS_AS(modforms::amplifier_eval(small, 8), LevelTooSmall);
}

TEST_CASE("l2 ratios") {
    auto ones = modforms::CoefficientSequence::from_values(
        std::vector<complexd>(1000, {1.0, 0.0}), 1, 0,
        charsums::DirichletCharacter::principal(1), {1.0, 0.0});
    CHECK(modforms::l2_ratio(ones, 1000) == doctest::Approx(1.0));
    auto delta = modforms::coeffs_delta_form(1000);
    CHECK(modforms::l2_ratio(delta, 1000) < 5.0);
    auto divisor = modforms::coeffs_divisor(10000);
    // the divisor ratio grows like a cubic in log N: 75.1 at 1e3, 150.4 at
    // 1e4; record it and pin the honest ceiling
    double r = modforms::l2_ratio(divisor, 10000);
    CHECK(r > 100.0);
    CHECK(r < 200.0);
}

TEST_CASE("hecke_check range precondition") {
    auto seq = modforms::coeffs_divisor(100);
    CHECK_THROWS_AS(modforms::hecke_check(seq, 11), PreconditionViolated);
}

TEST_CASE("csv round trip") {
    auto chars = charsums::characters_mod(11);
    auto seq = modforms::coeffs_synthetic(200, chars[1], complexd{0.1, 0.0}, 3);
    std::stringstream ss;
    seq.to_csv(ss);
    auto back = modforms::CoefficientSequence::from_csv(ss, seq.level(), seq.weight(),
                                                        seq.nebentypus(), {1.0, 0.0});
    REQUIRE(back.n_max() == seq.n_max());
    for (i64 n = 1; n <= seq.n_max(); ++n) CHECK(std::abs(back(n) - seq(n)) <= 1e-15);
    CHECK(back.kind() == modforms::SequenceKind::Imported);
}
