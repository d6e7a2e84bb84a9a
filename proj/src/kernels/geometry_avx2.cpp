#if defined(__x86_64__)

#include "ecbound/kernels/geometry.hpp"

#include <immintrin.h>
#include <limits>

namespace ecb::kernels {

// Four centers per iteration, accumulating (p[d]-c[d])^2 in the same
// d-order as the scalar kernel (mul then add, no FMA) so every lane is
// bit-identical to a scalar evaluation of that center.
double min_dist2_avx2(const double* point, const double* centers, std::size_t count,
                      std::size_t dim) {
    __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const double* c0 = centers + (i + 0) * dim;
        const double* c1 = centers + (i + 1) * dim;
        const double* c2 = centers + (i + 2) * dim;
        const double* c3 = centers + (i + 3) * dim;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            __m256d cv = _mm256_set_pd(c3[d], c2[d], c1[d], c0[d]);
            __m256d diff = _mm256_sub_pd(_mm256_set1_pd(point[d]), cv);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        best4 = _mm256_min_pd(best4, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best4);
    double best = lanes[0];
    for (int k = 1; k < 4; ++k) {
        if (lanes[k] < best) best = lanes[k];
    }
    double tail = min_dist2_scalar(point, centers + i * dim, count - i, dim);
    return tail < best ? tail : best;
}

} // namespace ecb::kernels

#endif // __x86_64__
