#pragma once

// Bessel J evaluation (series / backward recurrence / Hankel asymptotics),
// oscillation-aware adaptive Gauss-Legendre quadrature, and the numerical
// Voronoi verification for the level-1 weight-12 form.

#include <complex>
#include <functional>

#include "subconv/arith.hpp"
#include "subconv/modforms.hpp"

namespace subconv::oscint {

using arith::complexd;
using arith::i64;

// J_order(x) for integer order >= 0, x >= 0.  Relative accuracy ~1e-10
// (absolute near zeros of J).  order <= 200, x <= 1e6.
double bessel_j(int order, double x);

// |J_{k-1}(2 pi x) - sqrt(1/(pi^2 x)) cos(2 pi x - (k-1) pi/2 - pi/4)|
double bessel_asymptotic_residual(int k, double x);

// ---------------------------------------------------------------------------
// Smooth test functions and windows
// ---------------------------------------------------------------------------

// Gaussian bump exp(-((x-mu)/sigma)^2) windowed to [mu-4sigma, mu+4sigma]
// by a C-infinity cutoff; exactly 0 outside the support.
struct SmoothTestFunction {
    double mu = 0.0;
    double sigma = 1.0;

    double operator()(double x) const;
    double support_lo() const { return mu - 4.0 * sigma; }
    double support_hi() const { return mu + 4.0 * sigma; }
};

// w(x) = f1(slope1*x + shift1) * f2(slope2*x + shift2), slopes > 0.
struct ProductWindow {
    SmoothTestFunction f1, f2;
    double slope1 = 1.0, shift1 = 0.0;
    double slope2 = 1.0, shift2 = 0.0;

    double operator()(double x) const {
        return f1(slope1 * x + shift1) * f2(slope2 * x + shift2);
    }
    double support_lo() const;
    double support_hi() const;
    bool empty() const { return !(support_lo() < support_hi()); }
};

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureOptions {
    double rel_tol = 1e-9;
    long max_panels = 1000000;
};

// Adaptive Gauss-Legendre on [a,b].  freq is an upper bound for the
// integrand's local frequency in cycles per unit length; initial panels are
// no wider than 1/(8 freq).
complexd integrate(const std::function<complexd(double)>& f, double a, double b,
                   double freq, const QuadratureOptions& opt = {});
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double freq, const QuadratureOptions& opt = {});

// int w(x) e(-freq x) dx, e(t) = exp(2 pi i t).
complexd fourier_integral(const ProductWindow& w, double freq,
                          const QuadratureOptions& opt = {});

// ---------------------------------------------------------------------------
// Voronoi (level-1 specialization)
// ---------------------------------------------------------------------------

// Dual side of the Voronoi formula for a level-1 weight-k sequence:
//   (2 pi i^k / c) sum_n conj(lambda(n)) e(-abar n / c)
//                      int h(x) J_{k-1}((4 pi / c) sqrt(n x)) dx
// Requires gcd(a, c) = 1 and h supported in (0, inf).
complexd hankel_side(const modforms::CoefficientSequence& seq, i64 a, i64 c,
                     const SmoothTestFunction& h, i64 n_dual_max);

struct VoronoiReport {
    i64 a = 0, c = 0;
    complexd lhs{}, rhs{};
    double rel_error = 0.0;
    i64 dual_terms = 0;
};

// lhs = sum_n lambda(n) e(an/c) h(n); rhs = hankel_side; pass iff
// rel_error <= 1e-5.
VoronoiReport voronoi_check(const modforms::CoefficientSequence& seq, i64 a, i64 c,
                            const SmoothTestFunction& h, i64 n_dual_max = 200000);

// Relative defect of the Parseval identity for the periodization:
//   sum_m |Ihat(m)|^2 = Q * int_0^Q |G|^2,  G(x) = sum_k w(x + kQ),
// where Ihat(m) = fourier_integral(w, m/Q).
double plancherel_defect(const ProductWindow& w, i64 Q);

} // namespace subconv::oscint
