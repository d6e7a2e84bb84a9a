#pragma once

#include "ecbound/bigint.hpp"

#include <cstdint>
#include <vector>

namespace ecb::kernels {

/// One perfect-square value of the scanned cubic: W(m) = root^2, root >= 0.
struct SquareHit {
    std::int64_t m;
    std::int64_t root;
    bool operator==(const SquareHit& o) const { return m == o.m && root == o.root; }
};

/// Scan W(m) = m^3 + c1 m + c0 for m in [m_lo, m_hi] and append every m
/// with W(m) a perfect square. Caller must certify the int64 range via
/// scan_fits_int64; results are exact (prefilters only discard).
using SquareScanFn = void (*)(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1,
                              std::int64_t c0, std::vector<SquareHit>& out);

void square_scan_scalar(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1, std::int64_t c0,
                        std::vector<SquareHit>& out);

#if defined(__x86_64__)
void square_scan_avx2(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1, std::int64_t c0,
                      std::vector<SquareHit>& out);
#endif

/// Best available variant for this CPU (scalar when AVX2 is missing or
/// ECBOUND_NO_SIMD is set).
SquareScanFn square_scan_fn();

inline void square_scan(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1, std::int64_t c0,
                        std::vector<SquareHit>& out) {
    square_scan_fn()(m_lo, m_hi, c1, c0, out);
}

/// Exact (bignum) certificate that every intermediate of the scan --
/// W(m), its stride-4 finite differences, and the isqrt verification --
/// stays below 2^62 in absolute value over [-m_abs_max, m_abs_max].
bool scan_fits_int64(const Int& m_abs_max, const Int& c1, const Int& c0);

/// Floor square root for 0 <= n < 2^62.
std::int64_t isqrt64(std::int64_t n);

} // namespace ecb::kernels
