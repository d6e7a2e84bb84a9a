#pragma once

#include "ecbound/bigint.hpp"
#include "ecbound/curve.hpp"
#include "ecbound/errors.hpp"

#include <cstddef>
#include <vector>

namespace ecb::points {

using curve::ShortCurve;

/// A rational point on a short model: the point at infinity or exact
/// affine coordinates.
struct RationalPoint {
    bool infinity = true;
    Rat x;
    Rat y;

    RationalPoint() = default;
    RationalPoint(Rat x, Rat y) : infinity(false), x(std::move(x)), y(std::move(y)) {
        this->x.canonicalize();
        this->y.canonicalize();
    }
    static RationalPoint at_infinity() { return RationalPoint(); }

    bool operator==(const RationalPoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator<(const RationalPoint& o) const; // lexicographic, infinity first
};

bool on_curve(const RationalPoint& P, const ShortCurve& E);

/// Chord-tangent addition. Exact; throws PointNotOnCurve for bad input.
RationalPoint add(const RationalPoint& P, const RationalPoint& Q, const ShortCurve& E);
RationalPoint negate(const RationalPoint& P);
/// n P via double-and-add (n may be negative).
RationalPoint multiply(long n, const RationalPoint& P, const ShortCurve& E);

/// Affine points (x, 0): the rational roots of x^3 + Ax + B.
std::vector<RationalPoint> two_torsion_points(const ShortCurve& E);

/// Full torsion subgroup (Lutz-Nagell screen + small-multiple
/// confirmation). Includes infinity; size is in Mazur's admissible set.
/// For discriminants whose square part has too many divisors the screen
/// falls back to a reduction-mod-p certificate; when that cannot settle
/// the order it throws EffortExceeded.
std::vector<RationalPoint> torsion_subgroup(const ShortCurve& E);

struct TorsionInfo {
    long order = 1;
    bool exact = true; // false: certified upper bound only
};

/// Torsion order, or a certified upper bound when the exact subgroup is
/// out of reach: the torsion injects into E(F_p) for odd primes of good
/// reduction, so gcd of a few point counts mod p bounds the order.
TorsionInfo torsion_order_info(const ShortCurve& E);

/// #E(F_p) for an odd prime p of good reduction.
long count_points_mod_p(const ShortCurve& E, long p);

/// h(P) = log max(|num x|, |den x|); 0 at infinity.
double naive_height(const RationalPoint& P);

/// A certified approximation: |value - true| <= error_bound.
struct HeightValue {
    double value = 0.0;
    double error_bound = 0.0;
};

struct HeightParams {
    // Weil-vs-canonical comparison constant: |hhat - h| <= c1 h(E) + c1.
    double c1 = 3.0;
    // Cap on the decimal digits of any doubled coordinate.
    std::size_t digit_budget = 1'000'000;
};

/// Canonical height via 4^{-n} h(2^n P), with n chosen so the certified
/// error is <= tol. Torsion points return exactly 0. Throws
/// EffortExceeded when the doubled coordinates outgrow the digit budget.
HeightValue canonical_height(const RationalPoint& P, const ShortCurve& E, double tol,
                             const HeightParams& params = {});

/// <P,Q> = (hhat(P+Q) - hhat(P) - hhat(Q))/2, error <= 2 tol.
double height_pairing(const RationalPoint& P, const RationalPoint& Q, const ShortCurve& E,
                      double tol, const HeightParams& params = {});

/// Symmetric Gram matrix of the height pairing, per-entry error <= 2 tol.
std::vector<std::vector<double>> gram_matrix(const std::vector<RationalPoint>& pts,
                                             const ShortCurve& E, double tol,
                                             const HeightParams& params = {});

/// True iff multiply(n, P) = infinity for some 1 <= n <= 12 (the largest
/// possible order of a rational torsion point).
bool is_torsion(const RationalPoint& P, const ShortCurve& E);

} // namespace ecb::points
