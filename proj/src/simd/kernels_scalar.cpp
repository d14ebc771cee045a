#include "subconv/simd.hpp"

#include <cmath>

// Scalar reference kernels.  These are the semantic ground truth the SIMD
// variants are tested against, so they use compensated summation and libm
// trig rather than anything clever.

namespace subconv::simd {

namespace {

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

complexd s_complex_dot(const double* are, const double* aim,
                       const double* bre, const double* bim, std::size_t n) {
    Kahan re, im;
    for (std::size_t i = 0; i < n; ++i) {
        re.add(are[i] * bre[i] - aim[i] * bim[i]);
        im.add(are[i] * bim[i] + aim[i] * bre[i]);
    }
    return {re.s, im.s};
}

complexd s_complex_dot_conj(const double* are, const double* aim,
                            const double* bre, const double* bim, std::size_t n) {
    Kahan re, im;
    for (std::size_t i = 0; i < n; ++i) {
        re.add(are[i] * bre[i] + aim[i] * bim[i]);
        im.add(aim[i] * bre[i] - are[i] * bim[i]);
    }
    return {re.s, im.s};
}

complexd s_sign_dot(const double* re, const double* im,
                    const std::int8_t* signs, std::size_t n) {
    Kahan sre, sim;
    for (std::size_t i = 0; i < n; ++i) {
        double s = double(signs[i]);
        sre.add(s * re[i]);
        sim.add(s * im[i]);
    }
    return {sre.s, sim.s};
}

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

complexd s_phase_sum(const double* theta, const double* w, std::size_t n) {
    Kahan re, im;
    for (std::size_t i = 0; i < n; ++i) {
        double t = theta[i];
        t -= std::floor(t);
        double a = kTwoPi * t;
        double wi = w ? w[i] : 1.0;
        re.add(wi * std::cos(a));
        im.add(wi * std::sin(a));
    }
    return {re.s, im.s};
}

double s_sum_abs_sq(const double* re, const double* im, std::size_t n) {
    Kahan s;
    for (std::size_t i = 0; i < n; ++i) s.add(re[i] * re[i] + im[i] * im[i]);
    return s.s;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{s_complex_dot, s_complex_dot_conj, s_sign_dot,
                           s_phase_sum, s_sum_abs_sq};
    return k;
}

} // namespace subconv::simd
