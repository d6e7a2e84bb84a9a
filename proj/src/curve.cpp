#include "ecbound/curve.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace ecb::curve {

namespace {

Int short_discriminant(const Int& A, const Int& B) {
    return -16 * (4 * A * A * A + 27 * B * B);
}

// 16 * disc(x^3 + a x^2 + b x + c)
Rat general_discriminant(const Rat& a, const Rat& b, const Rat& c) {
    Rat d = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    return 16 * d;
}

} // namespace

Int projective_height(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& q : v) {
        Int den = q.get_den();
        l = l / gcd(l, den) * den; // lcm
    }
    std::vector<Int> w;
    w.reserve(v.size());
    Int g = 0;
    for (const Rat& q : v) {
        Int entry = q.get_num() * (l / q.get_den());
        g = gcd(g, entry);
        w.push_back(entry);
    }
    Int h = 0;
    for (const Int& entry : w) {
        Int e = abs(entry) / g;
        if (e > h) h = e;
    }
    return h;
}

ShortCurve::ShortCurve(Int A_, Int B_, bool qm) : A(std::move(A_)), B(std::move(B_)), quasi_minimal(qm) {
    delta = short_discriminant(A, B);
    if (delta == 0) throw SingularCurve("4A^3 + 27B^2 = 0 for A=" + to_string(A) + ", B=" + to_string(B));
    height = projective_height({Rat(1), Rat(0), Rat(A), Rat(B)});
}

GeneralCurve::GeneralCurve(Rat a_, Rat b_, Rat c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    delta = general_discriminant(a, b, c);
    if (delta == 0) throw SingularCurve("cubic discriminant vanishes");
    height = projective_height({Rat(1), a, b, c});
}

std::pair<Int, Int> curve_invariants(const ShortCurve& E) {
    return {E.delta, E.height};
}

std::pair<Rat, Int> curve_invariants(const GeneralCurve& E) {
    return {E.delta, E.height};
}

std::pair<Rat, Rat> ModelMap::forward(const Rat& x, const Rat& y) const {
    Rat u2(scale * scale);
    Rat X = u2 * (x - shift);
    Rat Y = u2 * Rat(scale) * y;
    X.canonicalize();
    Y.canonicalize();
    return {X, Y};
}

std::pair<Rat, Rat> ModelMap::backward(const Rat& x, const Rat& y) const {
    Rat u2(scale * scale);
    Rat X = x / u2 + shift;
    Rat Y = y / (u2 * Rat(scale));
    X.canonicalize();
    Y.canonicalize();
    return {X, Y};
}

ModelMap to_short_model(const GeneralCurve& E) {
    // Depress: x -> x - a/3 gives y^2 = x^3 + p x + q.
    Rat p = E.b - E.a * E.a / 3;
    Rat q = E.c - E.a * E.b / 3 + 2 * E.a * E.a * E.a / 27;
    p.canonicalize();
    q.canonicalize();

    // Least u >= 1 with u^4 p and u^6 q integral: per prime l,
    // v_l(u) = max(ceil(-v_l(p)/4), ceil(-v_l(q)/6)).
    Int u = 1;
    Int den = p.get_den() * q.get_den();
    if (den > 1) {
        auto fd = arith::factor(den);
        for (const auto& [l, e] : fd.factors) {
            (void)e;
            unsigned long vp = valuation(p.get_den(), l);
            unsigned long vq = valuation(q.get_den(), l);
            unsigned long vu = std::max((vp + 3) / 4, (vq + 5) / 6);
            u *= pow_int(l, vu);
        }
    }

    Rat A = Rat(pow_int(u, 4)) * p;
    Rat B = Rat(pow_int(u, 6)) * q;
    A.canonicalize();
    B.canonicalize();

    ModelMap map{E, ShortCurve(A.get_num(), B.get_num()), -E.a / 3, u};
    map.shift.canonicalize();
    return map;
}

std::pair<ShortCurve, Int> quasi_minimize(const ShortCurve& E) {
    Int A = E.A, B = E.B, u = 1;

    // Candidate primes: those dividing both A and B (or all primes of the
    // nonzero one when the other vanishes; both zero is singular).
    Int base = B == 0 ? A : (A == 0 ? B : gcd(A, B));
    auto fd = arith::factor(base);
    for (const auto& [p, e] : fd.factors) {
        (void)e;
        if (p < 5) continue;
        unsigned long va = A == 0 ? ~0ul : valuation(A, p);
        unsigned long vb = B == 0 ? ~0ul : valuation(B, p);
        unsigned long steps = std::min(va / 4, vb / 6);
        if (steps == 0) continue;
        A /= pow_int(p, 4 * steps);
        B /= pow_int(p, 6 * steps);
        u *= pow_int(p, steps);
    }
    return {ShortCurve(A, B, true), u};
}

SzpiroData szpiro_data(const ShortCurve& E) {
    auto fd = arith::factor(E.delta);
    Int d_max = abs(E.delta);

    unsigned long v2 = fd.valuation(2);
    unsigned long v3 = fd.valuation(3);
    Int d_min = d_max / pow_int(Int(2), 12 * (v2 / 12)) / pow_int(Int(3), 12 * (v3 / 12));

    Int rad = fd.radical({Int(2), Int(3)});
    Int n_lower = rad < 2 ? Int(2) : rad;

    double sigma_upper = log_abs(d_max) / log_abs(n_lower);
    return {d_min, d_max, n_lower, sigma_upper};
}

} // namespace ecb::curve
