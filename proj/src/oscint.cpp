#include "subconv/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "subconv/smooth.hpp"

namespace subconv::oscint {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// ---- Bessel J ----

double bessel_series(int nu, double x) {
    // ascending series; safe for x <= ~18 in long double
    long double half = 0.5L * (long double)x;
    long double term = 1.0L;
    for (int m = 1; m <= nu; ++m) term *= half / m;  // (x/2)^nu / nu!
    long double z = half * half;
    long double sum = term;
    for (int m = 1; m <= 400; ++m) {
        term *= -z / ((long double)m * (m + nu));
        sum += term;
        if (std::abs(term) < 1e-22L * (std::abs(sum) + 1e-300L)) break;
    }
    return double(sum);
}

double bessel_miller(int nu, double x) {
    // backward recurrence with normalization J_0 + 2 sum J_{2k} = 1
    int M = nu + int(x) + 30 + int(2.0 * std::sqrt(x));
    if (M % 2 == 1) ++M;
    long double jp = 0.0L;       // J_{k+1}
    long double jc = 1e-300L;    // J_k (arbitrary seed)
    long double target = 0.0L;
    long double norm = 0.0L;
    for (int k = M; k >= 1; --k) {
        long double jm = (2.0L * k / (long double)x) * jc - jp;  // J_{k-1}
        jp = jc;
        jc = jm;
        if (k - 1 == nu) target = jc;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0L * jc;
        if (std::abs(jc) > 1e280L) {
            jc *= 1e-280L;
            jp *= 1e-280L;
            target *= 1e-280L;
            norm *= 1e-280L;
        }
    }
    return double(target / norm);
}

double bessel_hankel(int nu, double x) {
    // J_nu(x) = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - nu pi/2 - pi/4
    long double mu = 4.0L * nu * (long double)nu;
    long double x8 = 8.0L * (long double)x;
    long double P = 1.0L, Q = 0.0L;
    long double t = 1.0L;
    long double prev = 1e300L;
    for (int k = 1; k <= 60; ++k) {
        long double num = mu - (long double)(2 * k - 1) * (2 * k - 1);
        t *= num / ((long double)k * x8);
        long double at = std::abs(t);
        if (at > prev) break;  // asymptotic series started diverging
        prev = at;
        switch (k % 4) {
            case 1: Q += t; break;
            case 2: P -= t; break;
            case 3: Q -= t; break;
            case 0: P += t; break;
        }
        if (at < 1e-19L) break;
    }
    long double w = std::fmod((long double)x, 2.0L * kPiL) -
                    (long double)nu * kPiL / 2.0L - kPiL / 4.0L;
    long double amp = std::sqrt(2.0L / (kPiL * (long double)x));
    return double(amp * (P * std::cos(w) - Q * std::sin(w)));
}

double hankel_threshold(int nu) {
    return std::max(40.0, 0.5 * double(nu) * double(nu));
}

// ---- Gauss-Legendre nodes ----

struct GlRule {
    std::vector<double> node;    // on (-1, 1)
    std::vector<double> weight;
};

GlRule make_gl(int n) {
    GlRule r;
    r.node.resize(size_t(n));
    r.weight.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev initial guess
        long double x = std::cos(kPiL * (i + 0.75L) / (n + 0.5L));
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            long double dp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        long double p0 = 1.0L, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        long double dp = n * (x * p1 - p0) / (x * x - 1.0L);
        r.node[size_t(i)] = double(x);
        r.weight[size_t(i)] = double(2.0L / ((1.0L - x * x) * dp * dp));
    }
    return r;
}

const GlRule& gl4() {
    static const GlRule r = make_gl(4);
    return r;
}
const GlRule& gl16() {
    static const GlRule r = make_gl(16);
    return r;
}
const GlRule& gl32() {
    static const GlRule r = make_gl(32);
    return r;
}

struct PanelResult {
    complexd integral;
    double abs_mass;  // GL32 of |f|
};

PanelResult gl_panel(const std::function<complexd(double)>& f, double a, double b,
                     const GlRule& rule) {
    double h = 0.5 * (b - a), mid = 0.5 * (a + b);
    complexd s{0.0, 0.0};
    double m = 0.0;
    for (size_t i = 0; i < rule.node.size(); ++i) {
        complexd v = f(mid + h * rule.node[i]);
        s += rule.weight[i] * v;
        m += rule.weight[i] * std::abs(v);
    }
    return {h * s, h * m};
}

} // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > 200)
        throw PreconditionViolated("bessel_j: need 0 <= order <= 200");
    if (!(x >= 0.0) || x > 1e6)
        throw PreconditionViolated("bessel_j: need 0 <= x <= 1e6");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= 18.0) return bessel_series(order, x);
    if (x >= hankel_threshold(order)) return bessel_hankel(order, x);
    return bessel_miller(order, x);
}

double bessel_asymptotic_residual(int k, double x) {
    if (!(x >= 1.0))
        throw PreconditionViolated("bessel_asymptotic_residual: x >= 1 required");
    int nu = k - 1;
    double j = bessel_j(nu, kTwoPi * x);
    // leading term sqrt(1/(pi^2 x)) cos(2 pi x - nu pi/2 - pi/4), with the
    // angle reduced exactly through frac(x)
    long double frac = (long double)x - std::floor((long double)x);
    long double ang = 2.0L * kPiL * frac - (long double)nu * kPiL / 2.0L - kPiL / 4.0L;
    double lead = std::sqrt(1.0 / (kPiL * kPiL * x)) * double(std::cos(ang));
    return std::abs(j - lead);
}

double SmoothTestFunction::operator()(double x) const {
    double t = std::abs(x - mu) / (4.0 * sigma);
    if (t >= 1.0) return 0.0;
    double g = std::exp(-((x - mu) / sigma) * ((x - mu) / sigma));
    return t <= 0.75 ? g : g * smooth::step(4.0 * (1.0 - t));
}

double ProductWindow::support_lo() const {
    double lo1 = (f1.support_lo() - shift1) / slope1;
    double lo2 = (f2.support_lo() - shift2) / slope2;
    return std::max(lo1, lo2);
}

double ProductWindow::support_hi() const {
    double hi1 = (f1.support_hi() - shift1) / slope1;
    double hi2 = (f2.support_hi() - shift2) / slope2;
    return std::min(hi1, hi2);
}

complexd integrate(const std::function<complexd(double)>& f, double a, double b,
                   double freq, const QuadratureOptions& opt) {
    if (!(b > a)) return {0.0, 0.0};
    // 1.25 oscillation periods per initial panel: GL16 resolves that to
    // ~4e-17 relative, and the GL16/GL32 comparison still guards it
    double max_width = b - a;
    if (freq > 0.0) max_width = std::min(max_width, 1.25 / freq);
    double initial_d = std::ceil((b - a) / max_width);
    if (initial_d > double(opt.max_panels))
        throw QuadratureNonConvergent("integrate: oscillation budget exceeded");
    int initial = std::max(1, int(initial_d));

    struct Panel {
        double a, b;
        int depth;
    };
    std::vector<Panel> stack;
    // rough L1 mass of the integrand, for the width-proportional error floor
    double gmass = 0.0;
    for (int i = 0; i < initial; ++i) {
        double pa = a + (b - a) * i / initial;
        double pb = a + (b - a) * (i + 1) / initial;
        stack.push_back({pa, pb, 0});
        gmass += gl_panel(f, pa, pb, gl4()).abs_mass;
    }
    const double tol_rel = std::min(opt.rel_tol * 1e-3, 1e-12);
    arith::KahanComplex total;
    long used = 0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        if (++used > opt.max_panels)
            throw QuadratureNonConvergent("integrate: panel budget exceeded");
        PanelResult lo = gl_panel(f, p.a, p.b, gl16());
        PanelResult hi = gl_panel(f, p.a, p.b, gl32());
        double err = std::abs(hi.integral - lo.integral);
        // panel-relative part plus a depth-halving floor; the floor keeps the
        // subdivision finite at the flat C-infinity support edges
        double tol = tol_rel * (std::abs(hi.integral) + 0.05 * hi.abs_mass) +
                     1e-13 * gmass * std::pow(0.5, p.depth) + 1e-300;
        if (err <= tol || p.depth >= 20) {
            total.add(hi.integral);
        } else {
            double mid = 0.5 * (p.a + p.b);
            stack.push_back({p.a, mid, p.depth + 1});
            stack.push_back({mid, p.b, p.depth + 1});
        }
    }
    return total.value();
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double freq, const QuadratureOptions& opt) {
    return integrate([&f](double x) { return complexd{f(x), 0.0}; }, a, b, freq, opt)
        .real();
}

complexd fourier_integral(const ProductWindow& w, double freq,
                          const QuadratureOptions& opt) {
    double lo = w.support_lo(), hi = w.support_hi();
    if (!(lo < hi)) return {0.0, 0.0};
    auto f = [&w, freq](double x) {
        double v = w(x);
        double ang = -kTwoPi * freq * x;
        return complexd{v * std::cos(ang), v * std::sin(ang)};
    };
    return integrate(f, lo, hi, std::abs(freq), opt);
}

complexd hankel_side(const modforms::CoefficientSequence& seq, i64 a, i64 c,
                     const SmoothTestFunction& h, i64 n_dual_max) {
    if (c < 1) throw PreconditionViolated("hankel_side: c >= 1 required");
    if (std::gcd(arith::mod_floor(a, c), c) != 1)
        throw PreconditionViolated("hankel_side: gcd(a,c) = 1 required");
    double xlo = std::max(h.support_lo(), 1e-12);
    double xhi = h.support_hi();
    if (!(xhi > 0.0))
        throw PreconditionViolated("hankel_side: h must be supported in (0, inf)");
    if (!(xlo < xhi)) return {0.0, 0.0};

    int k = seq.weight();
    int nu = k - 1;
    i64 abar = (c == 1) ? 0 : arith::inv_mod(a, c);
    complexd prefactor = arith::phase_unit(k, 4);  // i^k
    prefactor *= 2.0 * double(kPiL) / double(c);

    arith::KahanComplex acc;
    double max_term = 0.0;
    int quiet = 0;
    // absolute scale of the dual integrals; the quadrature cannot resolve
    // values below ~1e-12 of this, so the 1e-14-relative truncation gets an
    // absolute guard here
    double h_mass = integrate_real([&h](double x) { return h(x); }, xlo, xhi, 0.0);
    i64 cap = std::min<i64>(n_dual_max, seq.n_max());
    i64 n = 1;
    for (; n <= cap; ++n) {
        double base = 4.0 * double(kPiL) / double(c);
        auto integrand = [&](double x) {
            double z = base * std::sqrt(double(n) * x);
            return complexd{h(x) * bessel_j(nu, z), 0.0};
        };
        double f_max = (1.0 / double(c)) * std::sqrt(double(n) / xlo);
        complexd integral = integrate(integrand, xlo, xhi, f_max);
        complexd term = std::conj(seq(n)) * arith::phase_unit(arith::mod_floor(-abar * n, c), c) * integral;
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
        double cutoff = std::max(1e-14 * max_term, 2e-13 * h_mass);
        if (std::abs(term) < cutoff + 1e-300) {
            if (++quiet >= 8) break;
        } else {
            quiet = 0;
        }
    }
    if (n > cap && quiet < 8)
        throw QuadratureNonConvergent("hankel_side: dual tail not converged within budget");
    return prefactor * acc.value();
}

VoronoiReport voronoi_check(const modforms::CoefficientSequence& seq, i64 a, i64 c,
                            const SmoothTestFunction& h, i64 n_dual_max) {
    VoronoiReport rep;
    rep.a = a;
    rep.c = c;
    arith::KahanComplex lhs;
    i64 nlo = std::max<i64>(1, i64(std::floor(h.support_lo())));
    i64 nhi = std::min<i64>(seq.n_max(), i64(std::ceil(h.support_hi())));
    for (i64 n = nlo; n <= nhi; ++n) {
        double w = h(double(n));
        if (w == 0.0) continue;
        lhs.add(seq(n) * arith::phase_unit(a * (n % c), c) * w);
    }
    rep.lhs = lhs.value();
    rep.rhs = hankel_side(seq, a, c, h, n_dual_max);
    rep.rel_error = std::abs(rep.lhs - rep.rhs) /
                    std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-30});
    return rep;
}

double plancherel_defect(const ProductWindow& w, i64 Q) {
    if (Q < 1) throw PreconditionViolated("plancherel_defect: Q >= 1 required");
    double lo = w.support_lo(), hi = w.support_hi();
    if (!(lo < hi)) return 0.0;
    // sum side: |Ihat(m)|^2 with a decay-driven cutoff
    double sum = 0.0;
    double peak = 0.0;
    int quiet = 0;
    for (i64 m = 0;; ++m) {
        double v0 = std::norm(fourier_integral(w, double(m) / double(Q)));
        double v1 = m == 0 ? 0.0 : std::norm(fourier_integral(w, -double(m) / double(Q)));
        sum += v0 + v1;
        peak = std::max({peak, v0, v1});
        if (v0 + v1 < 1e-22 * (peak + 1e-300)) {
            if (++quiet >= 16) break;
        } else {
            quiet = 0;
        }
        if (m > 100000)
            throw QuadratureNonConvergent("plancherel_defect: no spectral decay");
    }
    // periodization side
    i64 klo = i64(std::floor(lo / double(Q))) - 1;
    i64 khi = i64(std::ceil(hi / double(Q))) + 1;
    auto G = [&](double x) {
        double s = 0.0;
        for (i64 k2 = klo; k2 <= khi; ++k2) s += w(x + double(k2) * double(Q));
        return s * s;
    };
    double intG = integrate_real(G, 0.0, double(Q), 0.0);
    double rhs = double(Q) * intG;
    return std::abs(sum - rhs) / std::max(std::abs(rhs), 1e-300);
}

} // namespace subconv::oscint
