#include <doctest.h>

#include <cmath>

#include "subconv/pipeline.hpp"

using namespace subconv;
using arith::complexd;
using arith::i64;

TEST_CASE("amplifier support") {
    // L = 3, j = 1: primes in (1.5, 3] are {2, 3}
    auto s = pipeline::amplifier_support(3, 1);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == 2);
    CHECK(s[1] == 3);
    // j = 2 squares them
    auto s2 = pipeline::amplifier_support(5, 2);
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == 9);
    CHECK(s2[1] == 25);
}

TEST_CASE("s_direct linearity and support") {
    auto cfg = pipeline::make_desk_config(11, 300, 3, 1, 5);
    complexd s = pipeline::s_direct(cfg);
    // |S| <= sum |lambda_f lambda_g w|
    double ceiling = 0.0;
    for (i64 n = 150; n <= 600; ++n)
        ceiling += std::abs((*cfg.seq_f)(n)) * std::abs((*cfg.seq_g)(n)) *
                   cfg.w_N(double(n));
    CHECK(std::abs(s) <= ceiling + 1e-9);
    // doubling w_N doubles S: emulate by doubling lambda_g via direct sum
    arith::KahanComplex twice;
    for (i64 n = 150; n <= 600; ++n) {
        double w = cfg.w_N(double(n));
        if (w == 0.0) continue;
        twice.add((*cfg.seq_f)(n) * (*cfg.seq_g)(n) * (2.0 * w));
    }
    CHECK(std::abs(twice.value() - 2.0 * s) <= 1e-9 * (1.0 + std::abs(s)));
}

TEST_CASE("amplified deposit/removal identity") {
    for (int j : {1, 2}) {
        auto cfg = pipeline::make_desk_config(11, 200, 2, j, 17);
        auto rep = pipeline::s_amplified(cfg);
        CHECK(rep.pass);
        CHECK(rep.residual <= 1e-9 * rep.scale);
    }
    // L = 10, j = 1 and 2, divisor g and synthetic f at p = 101, N = 5000
    for (int j : {1, 2}) {
        auto cfg = pipeline::make_desk_config(101, 5000, 10, j, 23);
        auto rep = pipeline::s_amplified(cfg);
        CHECK(rep.pass);
    }
}

TEST_CASE("delta identity after insertion") {
    auto cfg = pipeline::make_desk_config(11, 200, 3, 1, 7);
    auto rep = pipeline::delta_identity_check(cfg, 3);
    CHECK(rep.pass);
    CHECK(rep.rel_residual <= 1e-5);
    // ell = 1 degenerate
    auto rep1 = pipeline::delta_identity_check(cfg, 1);
    CHECK(rep1.pass);
}

TEST_CASE("v poisson identity desk instance") {
    auto inst = sheval::ShevalInstance::make(11, 3, 5, 2, 3, 12, 18);
    auto rep = pipeline::v_poisson_check(inst, 1500.0);
    CHECK(rep.pass);
    CHECK(rep.residual <= rep.tolerance);
    CHECK(rep.decay_ok);

    // disjoint windows: both sides ~ 0
    auto far = sheval::ShevalInstance::make(11, 3, 5, 1, 30, 12, 19);
    auto repf = pipeline::v_poisson_check(far, 40.0);
    CHECK(std::abs(repf.v_direct) <= 1e-9);
    CHECK(std::abs(repf.v_poisson) <= 1e-3);

    // D = 0 instance
    auto zero = sheval::ShevalInstance::make(11, 3, 5, 3, 5, 9, 9);
    REQUIRE(zero.D == 0);
    auto repz = pipeline::v_poisson_check(zero, 1200.0);
    CHECK(repz.pass);
}

TEST_CASE("partition bookkeeping identities") {
    auto cfg = pipeline::make_desk_config(11, 500, 3, 1, 29);
    auto rep = pipeline::partition_report(cfg);
    double tol = 1e-9 * rep.scale;
    CHECK(rep.dev_prime_split <= tol);
    CHECK(rep.dev_incl_excl <= tol);
    CHECK(rep.dev_zero_split <= tol);
    CHECK(rep.dev_diag_split <= tol);
    CHECK(rep.pass);
    CHECK(rep.tuples_nonzero > 0);
    // zero-frequency vanishing off the diagonal
    CHECK(rep.max_shat0_offdiag <= 1e-6);
}

TEST_CASE("partition empty range") {
    // Nprime range forced empty by a tiny Z: all windows empty
    auto cfg = pipeline::make_desk_config(11, 500, 3, 1, 31);
    cfg.Z = 1e-3;
    auto rep = pipeline::partition_report(cfg);
    CHECK(std::abs(rep.T_prime) == 0.0);
    CHECK(std::abs(rep.T_all) == 0.0);
    CHECK(rep.pass);
}
