#include "subconv/simd.hpp"

#include <atomic>

namespace subconv::simd {

const Kernels* detail_avx2_kernels();  // defined in kernels_avx2.cpp

const Kernels* avx2_kernels_if_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return detail_avx2_kernels();
#endif
    return nullptr;
}

namespace {
std::atomic<int> g_forced{-1};  // -1 auto, otherwise static_cast<int>(Isa)

Isa detect() {
    return avx2_kernels_if_supported() ? Isa::Avx2 : Isa::Scalar;
}
} // namespace

Isa active_isa() {
    int f = g_forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<Isa>(f);
    static const Isa detected = detect();
    return detected;
}

const Kernels& active() {
    return active_isa() == Isa::Avx2 ? *avx2_kernels_if_supported() : scalar_kernels();
}

bool force_isa(std::optional<Isa> isa) {
    if (!isa) {
        g_forced.store(-1, std::memory_order_relaxed);
        return true;
    }
    if (*isa == Isa::Avx2 && !avx2_kernels_if_supported()) return false;
    g_forced.store(static_cast<int>(*isa), std::memory_order_relaxed);
    return true;
}

std::string isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

} // namespace subconv::simd
