#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

namespace ecb {

using Int = mpz_class;
using Rat = mpq_class;

/// Natural log of |n| as a double, accurate for arbitrarily large n.
/// Returns -inf for n = 0.
inline double log_abs(const Int& n) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t()); // |mant| in [0.5, 1)
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::numbers::ln2_v<double>;
}

/// Floor square root of a nonnegative integer.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact perfect-square test; if true and root != nullptr, stores the
/// nonnegative root.
inline bool perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// p-adic valuation of n (n != 0).
inline unsigned long valuation(Int n, const Int& p) {
    unsigned long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

/// Number of decimal digits of |n| (cheap upper estimate from GMP).
inline std::size_t decimal_digits(const Int& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 10);
}

inline std::string to_string(const Int& n) { return n.get_str(); }

/// Rational as "p/q" ("p" when q = 1), canonical form.
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace ecb
