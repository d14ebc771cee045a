#include <doctest.h>

#include <cmath>
#include <sstream>

#include "subconv/kfrac.hpp"

using namespace subconv;
using arith::complexd;
using arith::i64;

namespace {

kfrac::KfracInstance singleton(i64 a, i64 m, i64 n) {
    // ranges (M, 2M] etc. holding exactly one live coefficient each
    kfrac::KfracInstance inst;
    inst.a = a;
    inst.M = m - 1 > 0 ? m - 1 : 1;
    inst.N = n - 1 > 0 ? n - 1 : 1;
    inst.K = 1;
    inst.alpha.assign(size_t(inst.M), {0.0, 0.0});
    inst.beta.assign(size_t(inst.N), {0.0, 0.0});
    inst.gamma.assign(size_t(inst.K) + 1, {0.0, 0.0});
    inst.alpha[size_t(m - inst.M - 1)] = {1.0, 0.0};
    inst.beta[size_t(n - inst.N - 1)] = {1.0, 0.0};
    return inst;
}

} // namespace

TEST_CASE("bilinear singleton example") {
    // m = 3, n = 5, a = 1: 3bar = 2 (mod 5), so the sum is e(2/5)
    auto inst = singleton(1, 3, 5);
    complexd got = kfrac::bilinear_sum(inst);
    CHECK(std::abs(got - arith::phase_unit(2, 5)) <= 1e-14);
}

TEST_CASE("bilinear a = 0 counts coprime pairs") {
    kfrac::KfracInstance inst;
    inst.a = 0;
    inst.M = inst.N = 20;
    inst.K = 1;
    inst.alpha.assign(20, {1.0, 0.0});
    inst.beta.assign(20, {1.0, 0.0});
    inst.gamma.assign(2, {1.0, 0.0});
    i64 pairs = 0;
    for (i64 m = 21; m <= 40; ++m)
        for (i64 n = 21; n <= 40; ++n)
            if (std::gcd(m, n) == 1) ++pairs;
    complexd got = kfrac::bilinear_sum(inst);
    CHECK(std::abs(got - complexd{double(pairs), 0.0}) <= 1e-9);
}

TEST_CASE("bilinear conjugate equivariance and trivial ceiling") {
    arith::SplitMix64 rng(13);
    kfrac::KfracInstance inst;
    inst.a = 5;
    inst.M = inst.N = 48;
    inst.K = 1;
    inst.gamma.assign(2, {1.0, 0.0});
    for (i64 i = 0; i < 48; ++i) {
        inst.alpha.push_back({rng.next_double() * 2 - 1, rng.next_double() * 2 - 1});
        inst.beta.push_back({rng.next_double() * 2 - 1, rng.next_double() * 2 - 1});
    }
    complexd plus = kfrac::bilinear_sum(inst);
    inst.a = -5;
    complexd minus = kfrac::bilinear_sum(inst);
    // negating a conjugates the sum when the coefficients are real; for
    // complex coefficients conjugate the coefficient vectors as well
    kfrac::KfracInstance conj_inst = inst;
    for (auto& z : conj_inst.alpha) z = std::conj(z);
    for (auto& z : conj_inst.beta) z = std::conj(z);
    complexd conj_minus = kfrac::bilinear_sum(conj_inst);
    CHECK(std::abs(conj_minus - std::conj(plus)) <= 1e-10);
    CHECK(std::abs(minus) <= inst.alpha_norm() * inst.beta_norm() * 48.0 * 1.01);
}

TEST_CASE("trilinear reduces to bilinear for a single k") {
    auto inst = singleton(2, 5, 7);
    inst.K = 1;
    inst.gamma = {complexd{1.0, 0.0}, complexd{0.0, 0.0}};  // only k = K = 1 lives
    complexd tri = kfrac::trilinear_sum(inst);
    auto b = singleton(2 * 1, 5, 7);
    complexd bil = kfrac::bilinear_sum(b);
    CHECK(std::abs(tri - bil) <= 1e-12);
}

TEST_CASE("trilinear geometric inner sum") {
    // gamma all ones: |sum_k e(theta k)| <= min(K+1, 1/(2 ||theta||))
    auto inst = singleton(1, 4, 9);  // 4bar mod 9 = 7 -> theta = 7/9
    inst.K = 30;
    inst.gamma.assign(31, {1.0, 0.0});
    complexd tri = kfrac::trilinear_sum(inst);
    double theta = 7.0 / 9.0;
    double dist = std::min(theta, 1.0 - theta);
    // 7/9 is 2/9 from the nearest integer
    CHECK(std::abs(tri) <= std::min(31.0, 1.0 / (2.0 * dist)) + 1e-9);
    // geometric series oracle
    complexd z = arith::phase_unit(7, 9);
    complexd expect{0.0, 0.0};
    complexd zk = std::pow(z, 30);
    for (int k = 30; k <= 60; ++k) { expect += zk; zk *= z; }
    CHECK(std::abs(tri - expect) <= 1e-10);
}

TEST_CASE("rhs formulas") {
    CHECK(kfrac::bilinear_rhs(1, 1, 1, 1.0, 1.0, 0.0) ==
          doctest::Approx(std::pow(2.0, 0.375) * std::pow(2.0, 11.0 / 48.0)));
    // doubling M multiplies by at most 2^{3/8 + 11/48}
    double base = kfrac::bilinear_rhs(3, 64, 64, 1.0, 1.0, 0.0);
    double dbl = kfrac::bilinear_rhs(3, 128, 64, 1.0, 1.0, 0.0);
    CHECK(dbl <= base * std::pow(2.0, 0.375 + 11.0 / 48.0) * (1 + 1e-12));
    // independent reimplementation
    auto bilinear_oracle = [](double a, double M, double N, double eps) {
        return std::pow(a + M * N, 3.0 / 8.0) * std::pow(M + N, 11.0 / 48.0 + eps);
    };
    CHECK(kfrac::bilinear_rhs(7, 32, 64, 1.0, 1.0, 0.05) ==
          doctest::Approx(bilinear_oracle(7, 32, 64, 0.05)));

    CHECK(kfrac::trilinear_rhs(1, 1, 1, 1, 1.0, 1.0, 1.0, 0.0) ==
          doctest::Approx(std::sqrt(2.0) * (std::pow(2.0, 0.25) + std::pow(2.0, 0.125))));
    auto bc_oracle = [](double a, double M, double N, double K, double eps) {
        return std::sqrt(1.0 + a * K / (M * N)) *
               (std::pow(K * M * N, 0.35 + eps) * std::pow(M + N, 0.25) +
                std::pow(K * M * N, 0.375 + eps) * std::pow(K * (M + N), 0.125));
    };
    CHECK(kfrac::trilinear_rhs(5, 16, 32, 8, 1.0, 1.0, 1.0, 0.02) ==
          doctest::Approx(bc_oracle(5, 16, 32, 8, 0.02)));
}

TEST_CASE("budget guards") {
    kfrac::KfracInstance inst;
    inst.a = 1;
    inst.M = 100000;
    inst.N = 100000;
    inst.K = 1;
    inst.alpha.assign(100000, {1.0, 0.0});
    inst.beta.assign(100000, {1.0, 0.0});
    inst.gamma.assign(2, {1.0, 0.0});
    CHECK_THROWS_AS(kfrac::bilinear_sum(inst), BudgetExceeded);
}

TEST_CASE("cancellation experiment determinism and shape") {
    kfrac::CancellationConfig cfg;
    cfg.trials = 0;
    CHECK(kfrac::cancellation_experiment(cfg).rows.empty());

    cfg.trials = 12;
    cfg.M = cfg.N = 32;
    cfg.seed = 777;
    auto r1 = kfrac::cancellation_experiment(cfg);
    auto r2 = kfrac::cancellation_experiment(cfg);
    REQUIRE(r1.rows.size() == 12);
    for (size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].abs_sum == r2.rows[i].abs_sum);
        CHECK(r1.rows[i].ratio_trivial == r2.rows[i].ratio_trivial);
    }
    std::ostringstream a, b;
    kfrac::write_csv(r1, a);
    kfrac::write_csv(r2, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("median cancellation improves with size") {
    kfrac::CancellationConfig cfg;
    cfg.trials = 60;
    cfg.seed = 4242;
    cfg.M = cfg.N = 64;
    auto small = kfrac::cancellation_experiment(cfg);
    cfg.M = cfg.N = 256;
    auto large = kfrac::cancellation_experiment(cfg);
    CHECK(large.median_ratio_trivial < small.median_ratio_trivial);
}

TEST_CASE("structured model runs and records ratios") {
    kfrac::CancellationConfig cfg;
    cfg.model = kfrac::CoefficientModel::Structured;
    cfg.trials = 6;
    cfg.M = cfg.N = 60;
    cfg.K = 6;
    cfg.l1 = 3;
    cfg.l2 = 5;
    cfg.p = 11;
    auto rep = kfrac::cancellation_experiment(cfg);
    REQUIRE(rep.rows.size() == 6);
    for (const auto& row : rep.rows) {
        CHECK(row.model == "structured");
        CHECK(row.rhs > 0.0);
        CHECK(row.trivial > 0.0);
    }
}
