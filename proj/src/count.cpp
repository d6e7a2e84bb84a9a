#include "ecbound/count.hpp"

#include "ecbound/kernels/geometry.hpp"
#include "ecbound/kernels/square_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace ecb::count {

namespace {

// Points contributed by one denominator value e: x = m/e^2, y = n/e^3
// with gcd(m, e) = 1 and m^3 + A m e^4 + B e^6 = n^2.
void scan_denominator(const ShortCurve& E, long e, const Int& m_max,
                      std::vector<RationalPoint>& out) {
    Int e2 = Int(e) * e;
    Int e3 = e2 * e;
    Int c1 = E.A * e2 * e2;
    Int c0 = E.B * e3 * e3;

    auto emit = [&](const Int& m, const Int& root) {
        if (gcd(m, Int(e)) != 1) return;
        Rat x(m, e2);
        x.canonicalize();
        if (root == 0) {
            out.emplace_back(x, Rat(0));
            return;
        }
        Rat y(root, e3);
        y.canonicalize();
        out.emplace_back(x, y);
        out.emplace_back(x, -y);
    };

    if (kernels::scan_fits_int64(m_max, c1, c0)) {
        std::vector<kernels::SquareHit> hits;
        long lim = m_max.get_si();
        kernels::square_scan(-lim, lim, c1.get_si(), c0.get_si(), hits);
        for (const auto& h : hits) emit(Int(h.m), Int(h.root));
    } else {
        Int root;
        for (Int m = -m_max; m <= m_max; ++m) {
            Int w = m * m * m + c1 * m + c0;
            if (w >= 0 && perfect_square(w, &root)) emit(m, root);
        }
    }
}

} // namespace

PointInventory enumerate_points(const ShortCurve& E, double B, const EnumerateOptions& opts) {
    if (B < 1.0) throw EmptyDomain("enumerate_points requires B >= 1");

    PointInventory inv;
    inv.log_bound = std::log(B);
    inv.complete = B <= opts.budget;
    double eff = std::min(B, opts.budget);

    Int m_max(std::floor(eff));
    long e_max = static_cast<long>(std::floor(std::sqrt(eff)));
    while (Int(e_max) * e_max > m_max) --e_max; // guard against fp rounding

    unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(e_max)));

    std::vector<std::vector<RationalPoint>> parts(threads);
    auto worker = [&](unsigned t) {
        for (long e = 1 + static_cast<long>(t); e <= e_max; e += threads) {
            scan_denominator(E, e, m_max, parts[t]);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    inv.points.push_back(RationalPoint::at_infinity());
    for (auto& part : parts) {
        inv.points.insert(inv.points.end(), part.begin(), part.end());
    }
    std::sort(inv.points.begin(), inv.points.end());
    return inv;
}

PointInventory enumerate_points_bruteforce(const ShortCurve& E, double B) {
    if (B < 1.0) throw EmptyDomain("enumerate_points_bruteforce requires B >= 1");
    PointInventory inv;
    inv.log_bound = std::log(B);
    inv.points.push_back(RationalPoint::at_infinity());

    long bound = static_cast<long>(std::floor(B));
    for (long q = 1; q <= bound; ++q) {
        for (long p = -bound; p <= bound; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Rat x(p, q);
            x.canonicalize();
            Rat rhs = x * x * x + Rat(E.A) * x + Rat(E.B);
            rhs.canonicalize();
            if (rhs < 0) continue;
            Int rn, rd;
            if (!perfect_square(rhs.get_num(), &rn)) continue;
            if (!perfect_square(rhs.get_den(), &rd)) continue;
            Rat y(rn, rd);
            y.canonicalize();
            inv.points.emplace_back(x, y);
            if (y != 0) inv.points.emplace_back(x, -y);
        }
    }
    std::sort(inv.points.begin(), inv.points.end());
    return inv;
}

namespace {

// Smallest eigenvalue of a small symmetric matrix (cyclic Jacobi).
double min_eigenvalue(std::vector<std::vector<double>> M) {
    std::size_t n = M.size();
    if (n == 1) return M[0][0];
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += M[i][j] * M[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(M[p][q]) < 1e-300) continue;
                double theta = (M[q][q] - M[p][p]) / (2.0 * M[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = M[k][p], mkq = M[k][q];
                    M[k][p] = c * mkp - s * mkq;
                    M[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = M[p][k], mqk = M[q][k];
                    M[p][k] = c * mpk - s * mqk;
                    M[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    double mn = M[0][0];
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, M[i][i]);
    return mn;
}

// Upper-triangular R with G = R^T R.
std::vector<std::vector<double>> cholesky_upper(const std::vector<std::vector<double>>& G) {
    std::size_t n = G.size();
    std::vector<std::vector<double>> R(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double d = G[i][i];
        for (std::size_t k = 0; k < i; ++k) d -= R[k][i] * R[k][i];
        if (d <= 0) throw GramNotPositiveDefinite("Cholesky pivot " + std::to_string(i) + " <= 0");
        R[i][i] = std::sqrt(d);
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = G[i][j];
            for (std::size_t k = 0; k < i; ++k) v -= R[k][i] * R[k][j];
            R[i][j] = v / R[i][i];
        }
    }
    return R;
}

// Fincke-Pohst: visit every integer vector with sum_i (R v)_i^2 <= t2.
template <typename Visit>
void enumerate_ball(const std::vector<std::vector<double>>& R, double t2, Visit&& visit) {
    std::size_t n = R.size();
    std::vector<long> v(n, 0);
    std::vector<double> partial(n, 0.0); // sum_{j>i} R[i][j] v[j]

    // Depth-first from the last coordinate down.
    struct Frame {
        long lo, hi, cur;
        double remaining; // budget left for levels <= i
    };
    std::vector<Frame> stack(n);

    auto bounds_at = [&](std::size_t i, double remaining) {
        double p = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) p += R[i][j] * v[j];
        partial[i] = p;
        double rad = std::sqrt(std::max(0.0, remaining));
        double lo = (-rad - p) / R[i][i];
        double hi = (rad - p) / R[i][i];
        return std::pair<long, long>(static_cast<long>(std::ceil(lo - 1e-12)),
                                     static_cast<long>(std::floor(hi + 1e-12)));
    };

    std::size_t i = n - 1;
    stack[i].remaining = t2;
    auto [lo0, hi0] = bounds_at(i, t2);
    stack[i].lo = lo0;
    stack[i].hi = hi0;
    stack[i].cur = lo0;

    while (true) {
        if (stack[i].cur > stack[i].hi) {
            if (i == n - 1) break;
            ++i;
            ++stack[i].cur;
            continue;
        }
        v[i] = stack[i].cur;
        double term = R[i][i] * v[i] + partial[i];
        double rem = stack[i].remaining - term * term;
        if (rem < -1e-9) {
            ++stack[i].cur;
            continue;
        }
        if (i == 0) {
            visit(v);
            ++stack[i].cur;
            continue;
        }
        --i;
        stack[i].remaining = std::max(rem, 0.0);
        auto [lo, hi] = bounds_at(i, stack[i].remaining);
        stack[i].lo = lo;
        stack[i].hi = hi;
        stack[i].cur = lo;
    }
}

} // namespace

long count_canonical(const ShortCurve& E, const std::vector<RationalPoint>& generators, double B,
                     double tol, const points::HeightParams& params) {
    long torsion = static_cast<long>(points::torsion_subgroup(E).size());
    double log_b = std::log(B);
    if (generators.empty()) return log_b >= 0 ? torsion : 0;

    std::size_t r = generators.size();
    auto G = points::gram_matrix(generators, E, tol, params);
    const double eps = 2.0 * tol; // per-entry Gram error

    double lam = min_eigenvalue(G) - static_cast<double>(r) * eps;
    if (lam <= 0) {
        throw GramNotPositiveDefinite("Gram matrix not positive definite within tolerance "
                                      "(certified smallest eigenvalue <= 0)");
    }
    if (log_b < 0) return 0;

    // Any v with true norm <= log B has ||v||^2 <= log B / lam; inflate the
    // search so interval classification sees every such vector.
    double slack = eps * static_cast<double>(r) * (log_b / lam);
    auto R = cholesky_upper(G);

    long inside = 0, straddle = 0;
    enumerate_ball(R, log_b + slack, [&](const std::vector<long>& v) {
        double q = 0.0, l1 = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) q += G[i][j] * v[i] * v[j];
            l1 += std::fabs(static_cast<double>(v[i]));
        }
        double width = eps * l1 * l1;
        if (q + width <= log_b) {
            ++inside;
        } else if (q - width <= log_b) {
            ++straddle;
        }
    });

    if (straddle > 0) {
        throw ToleranceTooCoarse("height error interval straddles the ball boundary for " +
                                     std::to_string(straddle) + " lattice vector(s)",
                                 inside * torsion, (inside + straddle) * torsion);
    }
    return inside * torsion;
}

CoverResult greedy_cover(const std::vector<std::vector<double>>& S, double R, double rho) {
    if (rho <= 0) throw EmptyDomain("greedy_cover requires rho > 0");
    std::size_t dim = S.empty() ? 0 : S[0].size();
    if (!S.empty() && dim == 0) throw EmptyDomain("greedy_cover: zero-dimensional points");
    for (const auto& p : S) {
        if (p.size() != dim) throw EmptyDomain("greedy_cover: mixed dimensions");
        double n2 = 0.0;
        for (double c : p) n2 += c * c;
        if (n2 > R * R * (1.0 + 1e-12)) throw EmptyDomain("greedy_cover: S not inside ball(0, R)");
    }

    CoverResult res;
    res.dim = dim;
    res.radius = rho;
    res.covered = S.size();
    res.bound = std::pow(1.0 + 2.0 * R / rho, static_cast<double>(dim));

    // Maximal packing: keep a point whenever every kept center is at
    // distance >= rho (so the rho/2 balls have disjoint interiors).
    std::vector<double> flat;
    for (const auto& p : S) {
        double d2 = flat.empty()
                        ? std::numeric_limits<double>::infinity()
                        : kernels::min_dist2(p.data(), flat.data(), flat.size() / dim, dim);
        if (d2 >= rho * rho) {
            res.centers.push_back(p);
            flat.insert(flat.end(), p.begin(), p.end());
        }
    }

    // Doubling the packing radius covers S; record the realized worst gap.
    double worst = 0.0;
    for (const auto& p : S) {
        double d2 = kernels::min_dist2(p.data(), flat.data(), flat.size() / dim, dim);
        worst = std::max(worst, d2);
    }
    res.worst_gap = std::sqrt(worst);
    return res;
}

} // namespace ecb::count
