#include <doctest.h>

#include <cmath>

#include "subconv/oscint.hpp"

using namespace subconv;
using arith::complexd;
using arith::i64;

namespace {

// independent oracle: J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt
double bessel_integral_oracle(int n, double x) {
    const int panels = 2000;
    const double pi = 3.14159265358979323846264338327950288;
    // composite Simpson with a fine fixed grid (x <= ~1e4 keeps this sound)
    int steps = 2 * panels;
    double h = pi / steps;
    double s = 0.0;
    for (int i = 0; i <= steps; ++i) {
        double t = i * h;
        double v = std::cos(n * t - x * std::sin(t));
        double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * v;
    }
    return s * h / 3.0 / pi;
}

} // namespace

TEST_CASE("bessel_j basics") {
    CHECK(oscint::bessel_j(0, 0.0) == 1.0);
    CHECK(oscint::bessel_j(11, 0.0) == 0.0);
    // near the first zero of J_0
    CHECK(std::abs(oscint::bessel_j(0, 2.404825557695773)) <= 1e-9);
    // J_1 at the same point (derivative relation sanity: J_0' = -J_1 != 0)
    CHECK(std::abs(oscint::bessel_j(1, 2.404825557695773)) > 0.1);
}

TEST_CASE("bessel_j against the integral oracle across regimes") {
    for (int nu : {0, 1, 2, 5, 11, 20, 50}) {
        for (double x : {0.5, 2.0, 10.0, 17.9, 18.1, 25.0, 40.0, 80.0, 300.0, 2000.0}) {
            double mine = oscint::bessel_j(nu, x);
            double oracle = bessel_integral_oracle(nu, x);
            CHECK(std::abs(mine - oracle) <= 1e-10 + 1e-10 * std::abs(oracle));
        }
    }
    // spec point: J_11(30)
    CHECK(std::abs(oscint::bessel_j(11, 30.0) - bessel_integral_oracle(11, 30.0)) <= 1e-11);
}

TEST_CASE("bessel switchover continuity") {
    // series -> Miller -> Hankel transitions agree to ~1e-10 relative
    for (int nu : {0, 3, 11, 13}) {
        for (double x : {17.999, 18.001, 39.99, 40.01, 84.49, 84.51}) {
            double a = oscint::bessel_j(nu, x);
            double b = bessel_integral_oracle(nu, x);
            CHECK(std::abs(a - b) <= 1e-10);
        }
    }
}

TEST_CASE("bessel asymptotic residual decay") {
    CHECK(oscint::bessel_asymptotic_residual(2, 100.0) <= 5e-3);
    CHECK(oscint::bessel_asymptotic_residual(12, 10.0) <= 5.0 * std::pow(10.0, -1.5));
    CHECK(oscint::bessel_asymptotic_residual(2, 1e4) <= 5e-6);
    for (int k : {2, 4, 8, 12, 14}) {
        for (double x : {2.0, 5.0, 10.0, 100.0, 1000.0}) {
            CHECK(oscint::bessel_asymptotic_residual(k, x) <= 5.0 * std::pow(x, -1.5));
        }
    }
}

TEST_CASE("smooth test function support") {
    oscint::SmoothTestFunction h{100.0, 20.0};
    CHECK(h(100.0) == 1.0);
    CHECK(h(180.0) == 0.0);
    CHECK(h(20.0) == 0.0);
    CHECK(h(99.0) > 0.9);
    CHECK(h.support_lo() == 20.0);
    CHECK(h.support_hi() == 180.0);
    // smooth positive interior
    for (double x = 21.0; x < 179.0; x += 1.7) CHECK(h(x) > 0.0);
}

TEST_CASE("quadrature on closed forms") {
    // int_0^1 x^2 = 1/3
    double v = oscint::integrate_real([](double x) { return x * x; }, 0.0, 1.0, 0.0);
    CHECK(std::abs(v - 1.0 / 3.0) <= 1e-13);
    // oscillatory: int_0^1 e(-f x) dx
    for (double f : {3.0, 37.5, 211.0}) {
        complexd got = oscint::integrate(
            [f](double x) {
                double a = -2.0 * M_PI * f * x;
                return complexd{std::cos(a), std::sin(a)};
            },
            0.0, 1.0, f);
        complexd expect = (f == 0.0) ? complexd{1.0, 0.0}
                                     : (complexd{0.0, 1.0} /
                                        (2.0 * M_PI * f)) *
                                           (std::exp(complexd{0.0, -2.0 * M_PI * f}) - 1.0);
        CHECK(std::abs(got - expect) <= 1e-12);
    }
}

TEST_CASE("fourier_integral trivials") {
    oscint::ProductWindow w;
    w.f1 = oscint::SmoothTestFunction{0.0, 25.0};
    w.f2 = oscint::SmoothTestFunction{0.0, 25.0};
    // freq 0: positive bump mass
    complexd mass = oscint::fourier_integral(w, 0.0);
    CHECK(mass.real() > 0.0);
    CHECK(std::abs(mass.imag()) <= 1e-12 * mass.real());
    // disjoint supports: exactly zero
    oscint::ProductWindow disjoint = w;
    disjoint.shift2 = 500.0;
    CHECK(disjoint.empty());
    CHECK(oscint::fourier_integral(disjoint, 0.3) == complexd{0.0, 0.0});
    // decay at large frequency
    double big = std::abs(oscint::fourier_integral(w, 4.0));
    CHECK(big <= 1e-10 * mass.real());
}

TEST_CASE("voronoi identity on the delta form") {
    static const auto seq = modforms::coeffs_delta_form(6000);
    // c = 1 Mellin-equivalent case, still executed numerically
    oscint::SmoothTestFunction h{50.0, 10.0};
    auto rep = oscint::voronoi_check(seq, 1, 1, h);
    CHECK(rep.rel_error <= 1e-5);
    // (a, c) = (1, 3)
    oscint::SmoothTestFunction h2{100.0, 20.0};
    auto rep2 = oscint::voronoi_check(seq, 1, 3, h2);
    CHECK(rep2.rel_error <= 1e-5);
    // (a, c) = (3, 7)
    oscint::SmoothTestFunction h3{200.0, 30.0};
    auto rep3 = oscint::voronoi_check(seq, 3, 7, h3);
    CHECK(rep3.rel_error <= 1e-5);
    // gcd violation
    CHECK_THROWS_AS(oscint::voronoi_check(seq, 2, 4, h2), PreconditionViolated);
}

TEST_CASE("plancherel periodization identity") {
    oscint::ProductWindow w;
    w.f1 = oscint::SmoothTestFunction{0.0, 18.0};
    w.f2 = oscint::SmoothTestFunction{0.0, 22.0};
    w.shift1 = 3.0;
    CHECK(oscint::plancherel_defect(w, 29) <= 1e-4);
}
