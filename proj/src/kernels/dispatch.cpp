#include "ecbound/kernels/geometry.hpp"
#include "ecbound/kernels/square_scan.hpp"

#include <cstdlib>

namespace ecb::kernels {

bool simd_enabled() {
#if defined(__x86_64__)
    static const bool ok = [] {
        if (std::getenv("ECBOUND_NO_SIMD") != nullptr) return false;
        return __builtin_cpu_supports("avx2") > 0;
    }();
    return ok;
#else
    return false;
#endif
}

SquareScanFn square_scan_fn() {
#if defined(__x86_64__)
    static const SquareScanFn fn = simd_enabled() ? &square_scan_avx2 : &square_scan_scalar;
#else
    static const SquareScanFn fn = &square_scan_scalar;
#endif
    return fn;
}

MinDist2Fn min_dist2_fn() {
#if defined(__x86_64__)
    static const MinDist2Fn fn = simd_enabled() ? &min_dist2_avx2 : &min_dist2_scalar;
#else
    static const MinDist2Fn fn = &min_dist2_scalar;
#endif
    return fn;
}

} // namespace ecb::kernels
