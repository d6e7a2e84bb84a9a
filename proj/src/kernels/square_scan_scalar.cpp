#include "ecbound/kernels/square_scan.hpp"

#include <cmath>

namespace ecb::kernels {

std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void square_scan_scalar(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1, std::int64_t c0,
                        std::vector<SquareHit>& out) {
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        std::int64_t w = m * m * m + c1 * m + c0;
        if (w < 0) continue;
        std::int64_t r = isqrt64(w);
        if (r * r == w) out.push_back({m, r});
    }
}

bool scan_fits_int64(const Int& m_abs_max, const Int& c1, const Int& c0) {
    static const Int limit = Int(1) << 62;
    const Int& M = m_abs_max;
    Int w_max = M * M * M + abs(c1) * M + abs(c0);
    // stride-4 finite differences of the cubic:
    //   D1(m) = 12m^2 + 48m + 64 + 4 c1, D2(m) = 96m + 384, D3 = 384
    Int d1_max = 12 * M * M + 48 * M + 64 + 4 * abs(c1);
    Int d2_max = 96 * M + 384 + 384;
    return w_max < limit && d1_max < limit && d2_max < limit;
}

} // namespace ecb::kernels
