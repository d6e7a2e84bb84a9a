#if defined(__x86_64__)

#include "ecbound/kernels/square_scan.hpp"

#include <array>
#include <immintrin.h>

namespace ecb::kernels {

namespace {

constexpr std::uint64_t squares_mod64_mask() {
    std::uint64_t m = 0;
    for (int i = 0; i < 64; ++i) m |= std::uint64_t{1} << ((i * i) & 63);
    return m;
}

constexpr std::array<std::uint64_t, 4> squares_mod255_table() {
    std::array<std::uint64_t, 4> t{};
    for (int i = 0; i < 255; ++i) {
        int r = (i * i) % 255;
        t[r >> 6] |= std::uint64_t{1} << (r & 63);
    }
    return t;
}

constexpr std::uint64_t kMask64 = squares_mod64_mask();
constexpr std::array<std::uint64_t, 4> kMask255 = squares_mod255_table();

inline bool square_residue_255(std::int64_t w) {
    int r = static_cast<int>(w % 255);
    return (kMask255[r >> 6] >> (r & 63)) & 1;
}

} // namespace

// Stride-4 finite differences keep the cubic evaluation to three 64-bit
// adds per step; a quadratic-residue mask (mod 64 in-register, mod 255 on
// survivors) prefilters before the exact isqrt verification. Emits hits
// in the same ascending-m order as the scalar kernel.
void square_scan_avx2(std::int64_t m_lo, std::int64_t m_hi, std::int64_t c1, std::int64_t c0,
                      std::vector<SquareHit>& out) {
    if (m_hi - m_lo < 16) {
        square_scan_scalar(m_lo, m_hi, c1, c0, out);
        return;
    }

    auto w_at = [&](std::int64_t m) { return m * m * m + c1 * m + c0; };
    auto d1_at = [&](std::int64_t m) { return 12 * m * m + 48 * m + 64 + 4 * c1; };
    auto d2_at = [&](std::int64_t m) { return 96 * m + 384; };

    std::int64_t m = m_lo;
    __m256i w = _mm256_set_epi64x(w_at(m + 3), w_at(m + 2), w_at(m + 1), w_at(m));
    __m256i d1 = _mm256_set_epi64x(d1_at(m + 3), d1_at(m + 2), d1_at(m + 1), d1_at(m));
    __m256i d2 = _mm256_set_epi64x(d2_at(m + 3), d2_at(m + 2), d2_at(m + 1), d2_at(m));
    const __m256i d3 = _mm256_set1_epi64x(384);
    const __m256i minus_one = _mm256_set1_epi64x(-1);
    const __m256i low6 = _mm256_set1_epi64x(63);
    const __m256i qr_mask = _mm256_set1_epi64x(static_cast<std::int64_t>(kMask64));
    const __m256i one = _mm256_set1_epi64x(1);

    for (; m + 3 <= m_hi; m += 4) {
        __m256i nonneg = _mm256_cmpgt_epi64(w, minus_one);
        __m256i idx = _mm256_and_si256(w, low6);
        __m256i bit = _mm256_and_si256(_mm256_srlv_epi64(qr_mask, idx), one);
        __m256i cand = _mm256_and_si256(nonneg, _mm256_cmpeq_epi64(bit, one));
        int lanes = _mm256_movemask_pd(_mm256_castsi256_pd(cand));
        if (lanes) {
            alignas(32) std::int64_t wb[4];
            _mm256_store_si256(reinterpret_cast<__m256i*>(wb), w);
            for (int lane = 0; lane < 4; ++lane) {
                if (!(lanes & (1 << lane))) continue;
                std::int64_t wv = wb[lane];
                if (!square_residue_255(wv)) continue;
                std::int64_t r = isqrt64(wv);
                if (r * r == wv) out.push_back({m + lane, r});
            }
        }
        w = _mm256_add_epi64(w, d1);
        d1 = _mm256_add_epi64(d1, d2);
        d2 = _mm256_add_epi64(d2, d3);
    }
    if (m <= m_hi) square_scan_scalar(m, m_hi, c1, c0, out);
}

} // namespace ecb::kernels

#endif // __x86_64__
