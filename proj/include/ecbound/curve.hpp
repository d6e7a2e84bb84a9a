#pragma once

#include "ecbound/arith.hpp"
#include "ecbound/bigint.hpp"
#include "ecbound/errors.hpp"

#include <utility>
#include <vector>

namespace ecb::curve {

/// y^2 = x^3 + A x + B with integer coefficients. Discriminant and
/// height are computed eagerly; construction throws SingularCurve when
/// the discriminant vanishes.
struct ShortCurve {
    Int A;
    Int B;
    Int delta;   // -16 (4A^3 + 27B^2)
    Int height;  // H(E) = max |entry| of the coprime vector (1, 0, A, B)
    bool quasi_minimal = false;

    ShortCurve(Int A, Int B, bool quasi_minimal = false);

    double log_height() const { return log_abs(height); }
    bool operator==(const ShortCurve& o) const { return A == o.A && B == o.B; }
};

/// y^2 = x^3 + a x^2 + b x + c with rational coefficients.
struct GeneralCurve {
    Rat a;
    Rat b;
    Rat c;
    Rat delta;   // 16 * disc(x^3 + a x^2 + b x + c)
    Int height;  // H(E) of the coprime integer vector for (1, a, b, c)

    GeneralCurve(Rat a, Rat b, Rat c);

    double log_height() const { return log_abs(height); }
};

/// The translation-dilation isomorphism from a general model onto a short
/// integral model: x |-> u^2 (x - shift), y |-> u^3 y. Preserves the
/// canonical height; point maps are exact.
struct ModelMap {
    GeneralCurve source;
    ShortCurve target;
    Rat shift;  // x -> x + shift depresses the cubic (shift = -a/3)
    Int scale;  // least positive integer u making the coefficients integral

    /// (x, y) on source -> (u^2 (x - shift), u^3 y) on target.
    std::pair<Rat, Rat> forward(const Rat& x, const Rat& y) const;
    /// Inverse of forward.
    std::pair<Rat, Rat> backward(const Rat& x, const Rat& y) const;
};

/// Rigorous two-sided data for the Szpiro ratio of a quasi-minimal model:
/// d_min <= |minimal discriminant| <= d_max, conductor >= n_lower, and
/// sigma_upper = log(d_max)/log(n_lower) >= sigma.
struct SzpiroData {
    Int d_min;
    Int d_max;
    Int n_lower;
    double sigma_upper;
};

/// (delta, H) of a short model. delta = -16(4A^3+27B^2), H the projective
/// height of (1, 0, A, B).
std::pair<Int, Int> curve_invariants(const ShortCurve& E);

/// (delta, H) of a general model; delta is 16 x the cubic discriminant
/// (a rational), H the projective height of (1, a, b, c).
std::pair<Rat, Int> curve_invariants(const GeneralCurve& E);

/// Depress the x^2 term and clear denominators with the least scale u.
ModelMap to_short_model(const GeneralCurve& E);

/// Strip every prime p >= 5 with p^4 | A and p^6 | B. Returns the reduced
/// curve and the total scale u (supported on primes >= 5 only);
/// delta(E) = u^12 * delta(E').
std::pair<ShortCurve, Int> quasi_minimize(const ShortCurve& E);

/// Szpiro-ratio surrogates of a quasi-minimal model. d_max = |delta|,
/// d_min strips 12-fold valuation blocks at 2 and 3, n_lower =
/// max(2, radical of delta away from {2,3}).
SzpiroData szpiro_data(const ShortCurve& E);

/// Projective Weil height of a rational vector: clear denominators to a
/// coprime integer vector and take the max absolute value.
Int projective_height(const std::vector<Rat>& v);

} // namespace ecb::curve
