// AVX2 variants of the inner-loop kernels.  This TU is compiled with -mavx2
// on x86-64 only; nothing here runs unless the CPUID check in dispatch.cpp
// passed first.

#include "subconv/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SUBCONV_HAVE_AVX2_TU 1
#include <immintrin.h>

#include <cmath>

namespace subconv::simd {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

complexd v_complex_dot(const double* are, const double* aim,
                       const double* bre, const double* bim, std::size_t n) {
    __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d ar = _mm256_loadu_pd(are + i), ai = _mm256_loadu_pd(aim + i);
        __m256d br = _mm256_loadu_pd(bre + i), bi = _mm256_loadu_pd(bim + i);
        re0 = _mm256_add_pd(re0, _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi)));
        im0 = _mm256_add_pd(im0, _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br)));
        ar = _mm256_loadu_pd(are + i + 4); ai = _mm256_loadu_pd(aim + i + 4);
        br = _mm256_loadu_pd(bre + i + 4); bi = _mm256_loadu_pd(bim + i + 4);
        re1 = _mm256_add_pd(re1, _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi)));
        im1 = _mm256_add_pd(im1, _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br)));
    }
    double re = hsum(_mm256_add_pd(re0, re1));
    double im = hsum(_mm256_add_pd(im0, im1));
    for (; i < n; ++i) {
        re += are[i] * bre[i] - aim[i] * bim[i];
        im += are[i] * bim[i] + aim[i] * bre[i];
    }
    return {re, im};
}

complexd v_complex_dot_conj(const double* are, const double* aim,
                            const double* bre, const double* bim, std::size_t n) {
    __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ar = _mm256_loadu_pd(are + i), ai = _mm256_loadu_pd(aim + i);
        __m256d br = _mm256_loadu_pd(bre + i), bi = _mm256_loadu_pd(bim + i);
        re0 = _mm256_add_pd(re0, _mm256_fmadd_pd(ar, br, _mm256_mul_pd(ai, bi)));
        im0 = _mm256_add_pd(im0, _mm256_fmsub_pd(ai, br, _mm256_mul_pd(ar, bi)));
    }
    double re = hsum(re0), im = hsum(im0);
    for (; i < n; ++i) {
        re += are[i] * bre[i] + aim[i] * bim[i];
        im += aim[i] * bre[i] - are[i] * bim[i];
    }
    return {re, im};
}

complexd v_sign_dot(const double* re, const double* im,
                    const std::int8_t* signs, std::size_t n) {
    __m256d sre = _mm256_setzero_pd(), sim = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i s8 = _mm_cvtsi32_si128(*reinterpret_cast<const int*>(signs + i));
        __m128i s32 = _mm_cvtepi8_epi32(s8);
        __m256d s = _mm256_cvtepi32_pd(s32);
        sre = _mm256_add_pd(sre, _mm256_mul_pd(s, _mm256_loadu_pd(re + i)));
        sim = _mm256_add_pd(sim, _mm256_mul_pd(s, _mm256_loadu_pd(im + i)));
    }
    double r = hsum(sre), m = hsum(sim);
    for (; i < n; ++i) {
        r += double(signs[i]) * re[i];
        m += double(signs[i]) * im[i];
    }
    return {r, m};
}

double v_sum_abs_sq(const double* re, const double* im, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i), m = _mm256_loadu_pd(im + i);
        acc = _mm256_add_pd(acc, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
    return s;
}

// ---- vectorized e(theta) = (cos, sin)(2*pi*frac(theta)) ----
//
// Reduce to u in [-pi/4, pi/4] plus a quadrant index, then evaluate the
// fdlibm kernel polynomials.  theta is a plain fraction (no huge-argument
// reduction needed): x = theta - round(theta) in [-1/2, 1/2],
// t = 4x in [-2, 2], k = round(t), u = (t - k) * pi/2.

constexpr double kPiOver2Hi = 1.57079632679489655800e+00;
constexpr double kPiOver2Lo = 6.12323399573676603587e-17;

inline __m256d poly_sin(__m256d u) {
    const __m256d S1 = _mm256_set1_pd(-1.66666666666666324348e-01);
    const __m256d S2 = _mm256_set1_pd(8.33333333332248946124e-03);
    const __m256d S3 = _mm256_set1_pd(-1.98412698298579493134e-04);
    const __m256d S4 = _mm256_set1_pd(2.75573137070700676789e-06);
    const __m256d S5 = _mm256_set1_pd(-2.50507602534068634195e-08);
    const __m256d S6 = _mm256_set1_pd(1.58969099521155010221e-10);
    __m256d z = _mm256_mul_pd(u, u);
    __m256d r = _mm256_fmadd_pd(z, S6, S5);
    r = _mm256_fmadd_pd(z, r, S4);
    r = _mm256_fmadd_pd(z, r, S3);
    r = _mm256_fmadd_pd(z, r, S2);
    r = _mm256_fmadd_pd(z, r, S1);
    return _mm256_fmadd_pd(_mm256_mul_pd(u, z), r, u);
}

inline __m256d poly_cos(__m256d u) {
    const __m256d C1 = _mm256_set1_pd(4.16666666666666019037e-02);
    const __m256d C2 = _mm256_set1_pd(-1.38888888888741095749e-03);
    const __m256d C3 = _mm256_set1_pd(2.48015872894767294178e-05);
    const __m256d C4 = _mm256_set1_pd(-2.75573143513906633035e-07);
    const __m256d C5 = _mm256_set1_pd(2.08757232129817482790e-09);
    const __m256d C6 = _mm256_set1_pd(-1.13596475577881948265e-11);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d z = _mm256_mul_pd(u, u);
    __m256d r = _mm256_fmadd_pd(z, C6, C5);
    r = _mm256_fmadd_pd(z, r, C4);
    r = _mm256_fmadd_pd(z, r, C3);
    r = _mm256_fmadd_pd(z, r, C2);
    r = _mm256_fmadd_pd(z, r, C1);
    // 1 - z/2 + z^2 * r
    return _mm256_fmadd_pd(_mm256_mul_pd(z, z), r,
                           _mm256_fnmadd_pd(z, half, one));
}

complexd v_phase_sum(const double* theta, const double* w, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d accr = _mm256_setzero_pd(), acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d th = _mm256_loadu_pd(theta + i);
        __m256d x = _mm256_sub_pd(
            th, _mm256_round_pd(th, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
        __m256d t = _mm256_mul_pd(x, four);
        __m256d k = _mm256_round_pd(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d s = _mm256_sub_pd(t, k);  // exact; |s| <= 1/2
        __m256d u = _mm256_fmadd_pd(s, _mm256_set1_pd(kPiOver2Lo),
                                    _mm256_mul_pd(s, _mm256_set1_pd(kPiOver2Hi)));
        __m256d cu = poly_cos(u);
        __m256d su = poly_sin(u);
        // quadrant constants: ck = cos(pi*k/2), sk = sin(pi*k/2), k in {-2..2}
        __m256d absk = _mm256_andnot_pd(_mm256_set1_pd(-0.0), k);
        __m256d m0 = _mm256_cmp_pd(k, _mm256_setzero_pd(), _CMP_EQ_OQ);
        __m256d m2 = _mm256_cmp_pd(absk, two, _CMP_EQ_OQ);
        __m256d mp1 = _mm256_cmp_pd(k, one, _CMP_EQ_OQ);
        __m256d mm1 = _mm256_cmp_pd(k, _mm256_set1_pd(-1.0), _CMP_EQ_OQ);
        __m256d ck = _mm256_sub_pd(_mm256_and_pd(m0, one), _mm256_and_pd(m2, one));
        __m256d sk = _mm256_sub_pd(_mm256_and_pd(mp1, one), _mm256_and_pd(mm1, one));
        __m256d cosv = _mm256_fnmadd_pd(sk, su, _mm256_mul_pd(ck, cu));
        __m256d sinv = _mm256_fmadd_pd(sk, cu, _mm256_mul_pd(ck, su));
        if (w) {
            __m256d wv = _mm256_loadu_pd(w + i);
            accr = _mm256_fmadd_pd(wv, cosv, accr);
            acci = _mm256_fmadd_pd(wv, sinv, acci);
        } else {
            accr = _mm256_add_pd(accr, cosv);
            acci = _mm256_add_pd(acci, sinv);
        }
    }
    double re = hsum(accr), im = hsum(acci);
    for (; i < n; ++i) {
        double t = theta[i];
        t -= std::floor(t);
        double a = 6.28318530717958647692528676655900577 * t;
        double wi = w ? w[i] : 1.0;
        re += wi * std::cos(a);
        im += wi * std::sin(a);
    }
    return {re, im};
}

} // namespace

const Kernels* detail_avx2_kernels() {
    static const Kernels k{v_complex_dot, v_complex_dot_conj, v_sign_dot,
                           v_phase_sum, v_sum_abs_sq};
    return &k;
}

} // namespace subconv::simd

#else

namespace subconv::simd {
const Kernels* detail_avx2_kernels() { return nullptr; }
} // namespace subconv::simd

#endif
