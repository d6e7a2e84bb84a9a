#pragma once

#include <cstddef>

namespace ecb::kernels {

/// Smallest squared euclidean distance from `point` to any of `count`
/// centers (row-major, `dim` doubles each). Returns +inf for count = 0.
/// All variants use plain IEEE mul/add in the same per-center order, so
/// their results are bit-identical.
using MinDist2Fn = double (*)(const double* point, const double* centers, std::size_t count,
                              std::size_t dim);

double min_dist2_scalar(const double* point, const double* centers, std::size_t count,
                        std::size_t dim);

#if defined(__x86_64__)
double min_dist2_avx2(const double* point, const double* centers, std::size_t count,
                      std::size_t dim);
#endif

MinDist2Fn min_dist2_fn();

inline double min_dist2(const double* point, const double* centers, std::size_t count,
                        std::size_t dim) {
    return min_dist2_fn()(point, centers, count, dim);
}

/// True when the AVX2 variants are selected at runtime.
bool simd_enabled();

} // namespace ecb::kernels
