#pragma once

#include "ecbound/curve.hpp"
#include "ecbound/points.hpp"

#include <cstddef>
#include <vector>

namespace ecb::count {

using curve::ShortCurve;
using points::RationalPoint;

/// Exhaustive list of the rational points of naive height <= the bound.
/// `complete` is false when the effort budget truncated the search.
struct PointInventory {
    double log_bound = 0.0;
    std::vector<RationalPoint> points; // sorted; includes infinity
    bool complete = true;

    std::size_t size() const { return points.size(); }
};

struct EnumerateOptions {
    double budget = 1e4; // largest B fully enumerated
    unsigned threads = 0; // 0 = hardware concurrency
};

/// All rational points with H(x) <= B on an integral short model, via the
/// x = m/e^2, y = n/e^3 denominator structure. Exact: candidates are
/// perfect-square tested in integer arithmetic (int64 kernel fast path,
/// bignum fallback). B beyond the budget yields complete = false.
PointInventory enumerate_points(const ShortCurve& E, double B, const EnumerateOptions& opts = {});

/// Independent oracle for tests: scan every reduced fraction x = p/q with
/// max(|p|, q) <= B. O(B^2) candidates; keep B small.
PointInventory enumerate_points_bruteforce(const ShortCurve& E, double B);

/// |torsion| x #{v in Z^r : v^T G v <= log B} for the Gram matrix G of
/// `generators` (positive definite within tolerance). Interval arithmetic
/// absorbs the Gram error; a vector straddling the ball boundary throws
/// ToleranceTooCoarse carrying the count bracket.
long count_canonical(const ShortCurve& E, const std::vector<RationalPoint>& generators, double B,
                     double tol, const points::HeightParams& params = {});

/// A covering of a finite point set by balls centered at its own points.
struct CoverResult {
    std::size_t dim = 0;
    std::vector<std::vector<double>> centers;
    double radius = 0.0;
    std::size_t covered = 0;
    double bound = 0.0; // (1 + 2R/rho)^dim

    /// Largest distance from an input point to its nearest center
    /// (recorded for verification; <= radius by construction).
    double worst_gap = 0.0;
};

/// Greedy maximal packing at radius rho/2, doubled to a covering by
/// rho-balls; |centers| <= (1 + 2R/rho)^dim.
CoverResult greedy_cover(const std::vector<std::vector<double>>& S, double R, double rho);

} // namespace ecb::count
