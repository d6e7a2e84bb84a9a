#pragma once

#include "ecbound/arith.hpp"
#include "ecbound/count.hpp"
#include "ecbound/curve.hpp"
#include "ecbound/points.hpp"
#include "ecbound/registry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ecb::bounds {

using curve::GeneralCurve;
using curve::ShortCurve;
using curve::SzpiroData;

/// One recorded inequality lhs <= rhs of a bound evaluation. Entries with
/// checked = false are informational (recorded, never gating).
struct ChainEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool checked = true;
    std::string note;
};

enum class FloorMode { Full, Simplified, RationalImproved, LangConjecture };
enum class Branch { SmallRank, LargeRank, Degenerate };

std::string to_string(FloorMode m);
std::string to_string(Branch b);
FloorMode floor_mode_from_string(const std::string& s);

/// Rank bound from descent: r <= 2 omega(delta) + 2. The 2-torsion gate
/// is the caller's onus; theorem_bound checks it.
long rank_bound(const arith::FactoredInteger& delta);

/// Same bound with the gate: throws NoTwoTorsion when x^3 + Ax + B has no
/// rational root.
long rank_bound(const ShortCurve& E);

/// r <= c3 log B / loglog B, with c3 recomputed from c2 and the chain.
/// Requires B >= e^e.
double rank_bound_from_b(double B, const ConstantsRegistry& reg);

struct FloorValue {
    double value = 0.0;
    bool degenerate = false; // d_min = 1: no positive floor derivable
};

/// Lower bound for the smallest canonical height of a non-torsion point,
/// evaluated from the rigorous surrogates (log d_min, sigma_upper).
FloorValue petsche_floor(const SzpiroData& s, const ConstantsRegistry& reg, FloorMode mode);

/// log of |T| (1 + 2 sqrt(log B / lambda))^r; +inf when lambda <= 0.
double covering_bound_log(double B, double lambda, long r, long torsion_order);
/// exp of the above (may overflow to +inf).
double covering_bound(double B, double lambda, long r, long torsion_order);

struct SmallRankResult {
    double log_displayed = 0.0; // log of c7 (c10 log B)^{4 c9}
    double log_polylog = 0.0;   // log of (log B)^{c11}
    double log_final = 0.0;     // log of B^{c11 / loglog B}
    double log_value = 0.0;     // min of the three
};

/// The generic bound for curves of rank <= c9. Requires B >= e^e; throws
/// RankTooLarge past the threshold.
SmallRankResult small_rank_bound(double B, long r, const ConstantsRegistry& reg);

struct ConductorChainResult {
    Int primorial_lb;          // p_{ceil(r/3)}#
    double log_n_floor = 0.0;  // r log r / 7
    double sigma_cap_coeff = 0.0; // sigma <= coeff * log B
    double sigma_cap(double B) const { return sigma_cap_coeff * std::log(B); }
};

/// Conductor consequences of a large rank (r >= 39): 6N >= p_{r/3}#,
/// log N >= r log r/7, sigma <= 7 c2 log B/(r log r).
ConductorChainResult conductor_chain(long r, const Int& n_lower, const ConstantsRegistry& reg);

struct FMaxResult {
    double x_star = 0.0;     // zero of f'(x) (unconstrained critical point)
    double x_argmax = 0.0;   // argmax over [39, c3 A/log A]
    double log_f_star = 0.0; // log f at the argmax
    double x_cap = 0.0;      // 2 A / log A
    double log_f_cap = 0.0;  // 2 (1 + 1/log 39) A / log A
    bool cap_ok = false;     // x_star <= x_cap and log_f_star <= log_f_cap
};

/// Maximize f(x) = (A / (x log x))^x over [39, c3 A/log A] (constants
/// normalized to 1). The sign function of f' is decreasing, so the
/// critical point is found by monotone bisection.
FMaxResult f_max(double A, const ConstantsRegistry& reg);

/// log f(x) = x (log A - log(x log x)) for the plotting grid.
double f_log(double x, double A);

/// Full evaluation trace of the bound chain for one (curve, B) pair.
struct BoundReport {
    std::string curve_label;
    bool from_general = false;
    double B = 0.0;
    double log_b_shifted = 0.0; // log B + c1 h(E) + c1
    Int delta_qm;
    std::size_t omega = 0;
    long rank_cap = 0; // 2 omega + 2
    SzpiroData szpiro;
    long torsion_order = 0;
    FloorValue floor;
    FloorMode mode = FloorMode::Full;
    Branch branch = Branch::SmallRank;
    double log_theoretical = 0.0; // log of theoreticalCount
    double theoretical = 0.0;     // exp of the above; may be +inf
    double exponent_c = 0.0;      // log(theoretical) loglog B / log B
    std::optional<long> empirical;
    std::vector<ChainEntry> chain;

    bool all_checked_hold() const;
};

/// The assembled pipeline on a short integral model. Requires a rational
/// 2-torsion point and B >= max(e^e, H(E)).
BoundReport theorem_bound(const ShortCurve& E, double B, const ConstantsRegistry& reg,
                          FloorMode mode = FloorMode::Full);

/// General models are mapped through the short model; the B precondition
/// tightens to B >= max(e^e, (e H(E))^{c0}).
BoundReport theorem_bound(const GeneralCurve& E, double B, const ConstantsRegistry& reg,
                          FloorMode mode = FloorMode::Full);

/// Record an exhaustive point count in the report and append the
/// empirical <= theoretical chain entry.
void attach_empirical(BoundReport& report, long n_points, const ConstantsRegistry& reg);

/// Serialized form (stable schema, documented in the README).
std::string report_to_json(const BoundReport& report);

} // namespace ecb::bounds
