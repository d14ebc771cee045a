#pragma once

// Data-parallel inner-loop kernels with runtime ISA dispatch.
//
// Every kernel has a scalar reference implementation (compensated summation,
// libm trig) and, on x86-64, an AVX2 variant selected at runtime via CPUID.
// The two are equivalence-tested against each other; callers only ever go
// through active().  force_isa() pins the choice for tests and for the
// --no-simd escape hatch.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace subconv::simd {

using complexd = std::complex<double>;

struct Kernels {
    // sum_i a_i * b_i  (complex, split re/im arrays)
    complexd (*complex_dot)(const double* are, const double* aim,
                            const double* bre, const double* bim, std::size_t n);
    // sum_i a_i * conj(b_i)
    complexd (*complex_dot_conj)(const double* are, const double* aim,
                                 const double* bre, const double* bim, std::size_t n);
    // sum_i s_i * z_i with s_i in {-1, 0, +1}
    complexd (*sign_dot)(const double* re, const double* im,
                         const std::int8_t* signs, std::size_t n);
    // sum_i w_i * e(theta_i), e(t) = exp(2*pi*i*t); w == nullptr means w_i = 1
    complexd (*phase_sum)(const double* theta, const double* w, std::size_t n);
    // sum_i |z_i|^2
    double (*sum_abs_sq)(const double* re, const double* im, std::size_t n);
};

enum class Isa { Scalar, Avx2 };

const Kernels& scalar_kernels();
// Best kernels for this machine (or the forced choice).
const Kernels& active();
Isa active_isa();
// Pin the ISA; nullopt restores auto-detection.  Returns false if the
// requested ISA is unavailable on this machine.
bool force_isa(std::optional<Isa> isa);
std::string isa_name(Isa isa);

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const Kernels* avx2_kernels_if_supported();

} // namespace subconv::simd
