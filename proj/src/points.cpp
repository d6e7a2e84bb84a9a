#include "ecbound/points.hpp"

#include <algorithm>
#include <set>

namespace ecb::points {

namespace {

// Addition without membership checks, for internal iteration where the
// inputs are already known to lie on E.
RationalPoint add_unchecked(const RationalPoint& P, const RationalPoint& Q, const ShortCurve& E) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rat lambda;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return RationalPoint::at_infinity(); // includes y = 0 doubling
        // tangent slope
        lambda = (3 * P.x * P.x + Rat(E.A)) / (2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    lambda.canonicalize();
    Rat x3 = lambda * lambda - P.x - Q.x;
    Rat y3 = lambda * (P.x - x3) - P.y;
    return RationalPoint(std::move(x3), std::move(y3));
}

RationalPoint double_unchecked(const RationalPoint& P, const ShortCurve& E) {
    return add_unchecked(P, P, E);
}

// Integer roots of the monic cubic x^3 + a1 x + a0, found by exact
// sign-change bisection on integer ranges where the cubic is monotone.
// Complete: a monic integral cubic has only integer rational roots.
std::vector<Int> integer_cubic_roots(const Int& a1, const Int& a0) {
    auto eval = [&](const Int& x) { return x * x * x + a1 * x + a0; };
    // All real roots lie in [-M, M], M = 1 + max(|a1|, |a0|).
    Int M = 1 + std::max(abs(a1), abs(a0));

    // Critical points at +/- sqrt(-a1/3) when a1 < 0. With s = the
    // integer sqrt of (-a1)/3, the integer ranges [-M, -s-1], [-s, s],
    // [s+1, M] each sit inside one monotone piece.
    std::vector<std::pair<Int, Int>> ranges;
    if (a1 < 0) {
        Int s = isqrt(Int((-a1) / 3));
        ranges.push_back({-M, -s - 1});
        ranges.push_back({-s, s});
        ranges.push_back({s + 1, M});
    } else {
        ranges.push_back({-M, M});
    }

    std::vector<Int> roots;
    auto try_root = [&](const Int& x) {
        if (eval(x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    };
    for (auto& [lo, hi] : ranges) {
        if (lo > hi) continue;
        try_root(lo);
        try_root(hi);
        Int flo = eval(lo), fhi = eval(hi);
        // A strictly monotone piece with a zero endpoint has no further root.
        if (flo == 0 || fhi == 0) continue;
        if ((flo < 0) == (fhi < 0)) continue;
        while (hi - lo > 1) {
            Int mid = (lo + hi) / 2;
            Int fm = eval(mid);
            if (fm == 0) {
                try_root(mid);
                break;
            }
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Divisors of prod p^e from its factor list (used for the y | sqrt-part
// screen; counts stay small at desk scale).
void divisors_rec(const std::vector<std::pair<Int, unsigned long>>& fs, std::size_t i, Int cur,
                  std::vector<Int>& out) {
    if (i == fs.size()) {
        out.push_back(cur);
        return;
    }
    Int pk = 1;
    for (unsigned long e = 0; e <= fs[i].second; ++e) {
        divisors_rec(fs, i + 1, cur * pk, out);
        pk *= fs[i].first;
    }
}

} // namespace

bool RationalPoint::operator<(const RationalPoint& o) const {
    if (infinity != o.infinity) return infinity;
    if (infinity) return false;
    if (x != o.x) return x < o.x;
    return y < o.y;
}

bool on_curve(const RationalPoint& P, const ShortCurve& E) {
    if (P.infinity) return true;
    return P.y * P.y == P.x * P.x * P.x + Rat(E.A) * P.x + Rat(E.B);
}

RationalPoint add(const RationalPoint& P, const RationalPoint& Q, const ShortCurve& E) {
    if (!on_curve(P, E) || !on_curve(Q, E)) throw PointNotOnCurve();
    return add_unchecked(P, Q, E);
}

RationalPoint negate(const RationalPoint& P) {
    if (P.infinity) return P;
    return RationalPoint(P.x, -P.y);
}

RationalPoint multiply(long n, const RationalPoint& P, const ShortCurve& E) {
    if (!on_curve(P, E)) throw PointNotOnCurve();
    RationalPoint base = n < 0 ? negate(P) : P;
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    RationalPoint acc = RationalPoint::at_infinity();
    while (k) {
        if (k & 1) acc = add_unchecked(acc, base, E);
        k >>= 1;
        if (k) base = double_unchecked(base, E);
    }
    return acc;
}

std::vector<RationalPoint> two_torsion_points(const ShortCurve& E) {
    std::vector<RationalPoint> out;
    for (const Int& r : integer_cubic_roots(E.A, E.B)) {
        out.emplace_back(Rat(r), Rat(0));
    }
    return out;
}

bool is_torsion(const RationalPoint& P, const ShortCurve& E) {
    if (P.infinity) return true;
    // Non-integral points are never torsion on an integral model
    // (Lutz-Nagell), and neither are points with a non-integral multiple.
    if (P.x.get_den() != 1 || P.y.get_den() != 1) return false;
    RationalPoint acc = P;
    for (int n = 2; n <= 12; ++n) {
        acc = add_unchecked(acc, P, E); // acc = nP
        if (acc.infinity) return true;
        if (acc.x.get_den() != 1) return false;
    }
    return false;
}

long count_points_mod_p(const ShortCurve& E, long p) {
    // #E(F_p) = p + 1 + sum_x chi(x^3 + Ax + B) with chi the quadratic
    // character; chi via Euler's criterion.
    long a = mpz_fdiv_ui(E.A.get_mpz_t(), p);
    long b = mpz_fdiv_ui(E.B.get_mpz_t(), p);
    auto pow_mod = [p](long base, long e) {
        long r = 1 % p;
        base %= p;
        while (e) {
            if (e & 1) r = static_cast<long>((__int128)r * base % p);
            base = static_cast<long>((__int128)base * base % p);
            e >>= 1;
        }
        return r;
    };
    long total = p + 1;
    for (long x = 0; x < p; ++x) {
        long t = static_cast<long>(((__int128)x * x % p * x + (__int128)a * x + b) % p);
        if (t == 0) continue;
        total += pow_mod(t, (p - 1) / 2) == 1 ? 1 : -1;
    }
    return total;
}

TorsionInfo torsion_order_info(const ShortCurve& E) {
    // Divisibility certificate: |T| divides #E(F_p) for odd good p.
    Int g = 0;
    int used = 0;
    for (long p = 3; p < 5000 && used < 8; p += 2) {
        if (!arith::is_certified_prime(Int(p))) continue;
        if (mpz_divisible_ui_p(E.delta.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        g = gcd(g, Int(count_points_mod_p(E, p)));
        ++used;
        if (g <= 2) break;
    }
    static const long mazur[] = {16, 12, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
    for (long m : mazur) {
        if (mpz_divisible_ui_p(g.get_mpz_t(), static_cast<unsigned long>(m))) {
            // largest admissible divisor of g
            return {m, false};
        }
    }
    return {16, false};
}

std::vector<RationalPoint> torsion_subgroup(const ShortCurve& E) {
    std::set<RationalPoint> out;
    out.insert(RationalPoint::at_infinity());

    for (const auto& T : two_torsion_points(E)) out.insert(T);

    // Lutz-Nagell: an affine torsion point has integer coordinates with
    // y = 0 or y^2 | delta. Candidate |y| values divide the square part.
    auto fd = arith::factor(E.delta);
    std::vector<std::pair<Int, unsigned long>> half;
    double log_candidates = 0.0;
    for (const auto& [p, e] : fd.factors) {
        if (e >= 2) {
            half.emplace_back(p, e / 2);
            log_candidates += std::log1p(static_cast<double>(e / 2));
        }
    }
    if (log_candidates > std::log(1e5)) {
        // The divisor screen is out of reach; settle the order by the
        // mod-p certificate if the 2-torsion already attains it.
        auto info = torsion_order_info(E);
        if (static_cast<long>(out.size()) == info.order) {
            return {out.begin(), out.end()};
        }
        throw EffortExceeded("torsion screen: square part of delta has too many divisors and "
                             "the reduction certificate does not settle the order");
    }
    std::vector<Int> ys;
    divisors_rec(half, 0, 1, ys);

    for (const Int& y : ys) {
        for (const Int& x : integer_cubic_roots(E.A, E.B - y * y)) {
            RationalPoint P{Rat(x), Rat(y)};
            if (!on_curve(P, E)) continue;
            if (is_torsion(P, E)) {
                out.insert(P);
                out.insert(negate(P));
            }
        }
    }

    static const std::set<std::size_t> mazur_orders = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16};
    if (!mazur_orders.count(out.size())) {
        throw Error("torsion subgroup of size " + std::to_string(out.size()) +
                    " violates Mazur's classification; internal screen is broken");
    }
    return {out.begin(), out.end()};
}

double naive_height(const RationalPoint& P) {
    if (P.infinity) return 0.0;
    const Int& num = P.x.get_num();
    const Int& den = P.x.get_den();
    Int h = std::max(abs(num), den);
    return log_abs(h);
}

HeightValue canonical_height(const RationalPoint& P, const ShortCurve& E, double tol,
                             const HeightParams& params) {
    if (!on_curve(P, E)) throw PointNotOnCurve();
    if (tol <= 0) throw EmptyDomain("canonical_height requires tol > 0");
    if (is_torsion(P, E)) return {0.0, 0.0};

    const double gap = params.c1 * E.log_height() + params.c1;
    unsigned n = 0;
    double err = gap;
    while (err > tol) {
        err /= 4.0;
        ++n;
    }

    RationalPoint Q = P;
    for (unsigned i = 0; i < n; ++i) {
        Q = double_unchecked(Q, E);
        if (Q.infinity) return {0.0, 0.0}; // torsion slipped the screen
        if (decimal_digits(Q.x.get_num()) > params.digit_budget ||
            decimal_digits(Q.x.get_den()) > params.digit_budget ||
            decimal_digits(Q.y.get_num()) > params.digit_budget) {
            throw EffortExceeded("canonical height: coordinates of the doubled point exceed " +
                                 std::to_string(params.digit_budget) + " digits at n=" +
                                 std::to_string(i + 1));
        }
    }
    double value = std::ldexp(naive_height(Q), -2 * static_cast<int>(n)); // 4^{-n} h(2^n P)
    return {value, err};
}

double height_pairing(const RationalPoint& P, const RationalPoint& Q, const ShortCurve& E,
                      double tol, const HeightParams& params) {
    if (P == Q) return canonical_height(P, E, tol, params).value;
    RationalPoint S = add(P, Q, E);
    double hs = canonical_height(S, E, tol, params).value;
    double hp = canonical_height(P, E, tol, params).value;
    double hq = canonical_height(Q, E, tol, params).value;
    return (hs - hp - hq) / 2.0;
}

std::vector<std::vector<double>> gram_matrix(const std::vector<RationalPoint>& pts,
                                             const ShortCurve& E, double tol,
                                             const HeightParams& params) {
    std::size_t k = pts.size();
    std::vector<std::vector<double>> G(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double v = height_pairing(pts[i], pts[j], E, tol, params);
            G[i][j] = v;
            G[j][i] = v;
        }
    }
    return G;
}

} // namespace ecb::points
