#include "ecbound/kernels/geometry.hpp"

#include <limits>

namespace ecb::kernels {

double min_dist2_scalar(const double* point, const double* centers, std::size_t count,
                        std::size_t dim) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double* c = centers + i * dim;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = point[d] - c[d];
            acc += diff * diff;
        }
        if (acc < best) best = acc;
    }
    return best;
}

} // namespace ecb::kernels
