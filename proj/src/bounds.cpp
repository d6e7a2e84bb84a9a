#include "ecbound/bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ecb::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double loglog(double x) { return std::log(std::log(x)); }

// log f(x) portions live in log space throughout: the raw values overflow
// double well inside the tested range.
double small_rank_log_displayed(double log_b, const ConstantsRegistry& reg) {
    return std::log(reg.get("c7")) + 4.0 * reg.get("c9") * std::log(reg.get("c10") * log_b);
}

} // namespace

std::string to_string(FloorMode m) {
    switch (m) {
        case FloorMode::Full: return "full";
        case FloorMode::Simplified: return "simplified";
        case FloorMode::RationalImproved: return "rationalImproved";
        case FloorMode::LangConjecture: return "langConjecture";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::SmallRank: return "small-rank";
        case Branch::LargeRank: return "large-rank";
        case Branch::Degenerate: return "degenerate";
    }
    return "?";
}

FloorMode floor_mode_from_string(const std::string& s) {
    if (s == "full") return FloorMode::Full;
    if (s == "simplified") return FloorMode::Simplified;
    if (s == "rationalImproved") return FloorMode::RationalImproved;
    if (s == "langConjecture") return FloorMode::LangConjecture;
    throw ParseError("unknown floor mode: " + s);
}

long rank_bound(const arith::FactoredInteger& delta) {
    return 2 * static_cast<long>(delta.omega()) + 2;
}

long rank_bound(const ShortCurve& E) {
    if (points::two_torsion_points(E).empty()) {
        throw NoTwoTorsion("x^3 + Ax + B has no rational root for A=" + to_string(E.A) +
                           ", B=" + to_string(E.B));
    }
    return rank_bound(arith::factor(E.delta));
}

double rank_bound_from_b(double B, const ConstantsRegistry& reg) {
    if (B < reg.get("min_B")) {
        throw BTooSmall("rank_bound_from_b requires B >= e^e");
    }
    return reg.get("c3") * std::log(B) / loglog(B);
}

FloorValue petsche_floor(const SzpiroData& s, const ConstantsRegistry& reg, FloorMode mode) {
    if (s.d_min == 1) return {0.0, true};
    double logd = log_abs(s.d_min);
    double sigma = s.sigma_upper;
    double denom = 0.0;
    switch (mode) {
        case FloorMode::Full: {
            double l = std::log(reg.get("c5") * sigma);
            denom = reg.get("c4") * std::pow(sigma, 6.0) * l * l;
            break;
        }
        case FloorMode::Simplified:
            denom = reg.get("c6") * std::pow(sigma, 8.0);
            break;
        case FloorMode::RationalImproved:
            denom = reg.get("c16") * std::pow(sigma, 6.0);
            break;
        case FloorMode::LangConjecture:
            denom = reg.get("c_lang");
            break;
    }
    return {logd / denom, false};
}

double covering_bound_log(double B, double lambda, long r, long torsion_order) {
    if (r < 0) throw EmptyDomain("covering bound requires r >= 0");
    if (torsion_order < 1) throw EmptyDomain("covering bound requires torsion order >= 1");
    double ee = std::exp(std::exp(1.0));
    if (B < ee) throw BTooSmall("covering bound requires B >= e^e");
    if (lambda <= 0) return kInf;
    double log_b = std::log(B);
    return std::log(static_cast<double>(torsion_order)) +
           static_cast<double>(r) * std::log1p(2.0 * std::sqrt(log_b / lambda));
}

double covering_bound(double B, double lambda, long r, long torsion_order) {
    return std::exp(covering_bound_log(B, lambda, r, torsion_order));
}

SmallRankResult small_rank_bound(double B, long r, const ConstantsRegistry& reg) {
    if (B < reg.get("min_B")) throw BTooSmall("small_rank_bound requires B >= e^e");
    if (r < 0) throw EmptyDomain("small_rank_bound requires r >= 0");
    if (static_cast<double>(r) > reg.get("c9")) {
        throw RankTooLarge("rank " + std::to_string(r) + " exceeds the small-rank threshold c9");
    }
    double log_b = std::log(B);
    SmallRankResult res;
    res.log_displayed = small_rank_log_displayed(log_b, reg);
    res.log_polylog = reg.get("c11") * std::log(log_b);
    res.log_final = reg.get("c11") * log_b / std::log(log_b);
    res.log_value = std::min({res.log_displayed, res.log_polylog, res.log_final});
    return res;
}

ConductorChainResult conductor_chain(long r, const Int& n_lower, const ConstantsRegistry& reg) {
    (void)n_lower; // recorded by the caller; the floor is generic in r
    double cutoff = reg.get("rank_cutoff");
    if (static_cast<double>(r) < cutoff) {
        throw RankTooSmall("conductor chain requires r >= 39, got " + std::to_string(r));
    }
    ConductorChainResult res;
    unsigned long n = static_cast<unsigned long>((r + 2) / 3); // ceil(r/3)
    res.primorial_lb = arith::primorial(n);
    double div = reg.get("conductor_log_divisor");
    double rl = static_cast<double>(r) * std::log(static_cast<double>(r));
    res.log_n_floor = rl / div;
    res.sigma_cap_coeff = div * reg.get("c2") / rl;
    return res;
}

double f_log(double x, double A) {
    return x * (std::log(A) - std::log(x * std::log(x)));
}

FMaxResult f_max(double A, const ConstantsRegistry& reg) {
    if (!(A > 1.0)) throw EmptyDomain("f_max requires A > 1");
    const double lo_edge = reg.get("rank_cutoff"); // 39
    double upper = reg.get("c3") * A / std::log(A);
    if (upper < lo_edge) {
        throw EmptyDomain("f_max domain [39, c3 A/log A] is empty for A = " + std::to_string(A));
    }

    // g(x) = log A - log(x log x) - 1 - 1/log x, decreasing for x >= 2.
    auto g = [&](double x) { return std::log(A) - std::log(x * std::log(x)) - 1.0 - 1.0 / std::log(x); };

    FMaxResult res;
    double root = std::numeric_limits<double>::quiet_NaN();
    if (g(2.0) > 0.0) {
        double lo = 2.0, hi = 4.0;
        int guard = 0;
        while (g(hi) > 0.0 && guard++ < 1200) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        root = 0.5 * (lo + hi);
    }

    res.x_star = std::isnan(root) ? lo_edge : root;
    res.x_argmax = std::clamp(res.x_star, lo_edge, upper);
    res.log_f_star = f_log(res.x_argmax, A);
    res.x_cap = 2.0 * A / std::log(A);
    res.log_f_cap = 2.0 * (1.0 + 1.0 / std::log(lo_edge)) * A / std::log(A);
    res.cap_ok = res.x_star <= res.x_cap && res.log_f_star <= res.log_f_cap + 1e-12;
    return res;
}

bool BoundReport::all_checked_hold() const {
    for (const auto& e : chain) {
        if (e.checked && !e.holds) return false;
    }
    return true;
}

namespace {

void push_entry(BoundReport& rep, const std::string& name, double lhs, double rhs, bool checked,
                double slack, const std::string& note = "") {
    bool holds = lhs <= rhs + slack * (1.0 + std::fabs(rhs));
    rep.chain.push_back({name, lhs, rhs, holds, checked, note});
}

BoundReport theorem_bound_impl(const ShortCurve& E_in, double B, double shift_h,
                               const ConstantsRegistry& reg, FloorMode mode, std::string label,
                               bool from_general, std::vector<ChainEntry> pre_chain) {
    BoundReport rep;
    rep.curve_label = std::move(label);
    rep.from_general = from_general;
    rep.B = B;
    rep.mode = mode;
    rep.chain = std::move(pre_chain);

    const double slack = reg.get("chain_slack");

    if (points::two_torsion_points(E_in).empty()) {
        throw NoTwoTorsion("x^3 + Ax + B has no rational root; the descent rank bound needs a "
                           "rational 2-torsion point");
    }

    const double log_b = std::log(B);
    const double c1 = reg.get("c1");
    rep.log_b_shifted = log_b + c1 * shift_h + c1;
    const double log_b1 = rep.log_b_shifted;

    push_entry(rep, "B >= e^e", reg.get("min_B"), B, true, slack);
    push_entry(rep, "log B' >= log B", log_b, log_b1, true, slack,
               "B' = B exp(c1 h(E) + c1) dominates naive counts by canonical counts");

    auto [Eqm, u] = curve::quasi_minimize(E_in);
    rep.delta_qm = Eqm.delta;
    push_entry(rep, "log|delta_qm| <= log|delta|", log_abs(Eqm.delta), log_abs(E_in.delta), true,
               slack, "u = " + to_string(u));

    // |delta| <= 496 H^3, checked exactly in integers.
    {
        Int lhs = abs(E_in.delta);
        Int rhs = 496 * E_in.height * E_in.height * E_in.height;
        rep.chain.push_back({"|delta| <= 496 H(E)^3", log_abs(lhs), log_abs(rhs), lhs <= rhs, true,
                             "exact integer comparison"});
    }

    push_entry(rep, "log|delta_qm| <= 6 log B'", log_abs(Eqm.delta), 6.0 * log_b1, true, slack);

    auto fd = arith::factor(Eqm.delta);
    rep.omega = fd.omega();
    rep.rank_cap = rank_bound(fd);

    {
        double ld = log_abs(Eqm.delta);
        push_entry(rep, "omega(delta_qm) <= c2 log|delta_qm|/loglog|delta_qm|",
                   static_cast<double>(rep.omega), reg.get("c2") * ld / std::log(ld), true, slack);
    }
    push_entry(rep, "rank cap <= c3 log B'/loglog B'", static_cast<double>(rep.rank_cap),
               reg.get("c3") * log_b1 / std::log(log_b1), true, slack,
               "rank cap = 2 omega + 2 = " + std::to_string(rep.rank_cap));

    rep.szpiro = curve::szpiro_data(Eqm);
    push_entry(rep, "sigma_upper >= 1", 1.0, rep.szpiro.sigma_upper, true, slack);
    push_entry(rep, "d_min <= d_max", log_abs(rep.szpiro.d_min), log_abs(rep.szpiro.d_max), true,
               slack);

    try {
        rep.torsion_order = static_cast<long>(points::torsion_subgroup(Eqm).size());
    } catch (const EffortExceeded&) {
        // An upper bound keeps every downstream bound valid.
        auto info = points::torsion_order_info(Eqm);
        rep.torsion_order = info.order;
        rep.chain.push_back({"torsion order (upper bound via reduction)", 0.0,
                             static_cast<double>(info.order), true, false,
                             "exact subgroup out of reach; mod-p certificate"});
    }
    rep.floor = petsche_floor(rep.szpiro, reg, mode);

    const double c9 = reg.get("c9");
    if (static_cast<double>(rep.rank_cap) <= c9) {
        rep.branch = Branch::SmallRank;
        push_entry(rep, "rank cap <= c9", static_cast<double>(rep.rank_cap), c9, true, slack);

        SmallRankResult sr;
        sr.log_displayed = small_rank_log_displayed(log_b1, reg);
        sr.log_polylog = reg.get("c11") * std::log(log_b1);
        sr.log_final = reg.get("c11") * log_b1 / std::log(log_b1);
        sr.log_value = std::min({sr.log_displayed, sr.log_polylog, sr.log_final});

        push_entry(rep, "log[c7 (c10 log B')^{4 c9}] <= log[(log B')^{c11}]", sr.log_displayed,
                   sr.log_polylog, true, slack);
        push_entry(rep, "log[(log B')^{c11}] <= log[B'^{c11/loglog B'}]", sr.log_polylog,
                   sr.log_final, true, slack);
        rep.log_theoretical = sr.log_value;
    } else {
        auto cc = conductor_chain(rep.rank_cap, rep.szpiro.n_lower, reg);

        // The primorial floor applies to the true conductor; n_lower is
        // itself only a lower bound, so this is informational.
        push_entry(rep, "primorial(ceil(r/3)) <= 6 n_lower", log_abs(cc.primorial_lb),
                   std::log(6.0) + log_abs(rep.szpiro.n_lower), false, slack,
                   "informational: the floor constrains the true conductor");
        {
            double r = static_cast<double>(rep.rank_cap);
            push_entry(rep, "(r/3) log(r/3) <= log primorial(ceil(r/3))",
                       (r / 3.0) * std::log(r / 3.0), log_abs(cc.primorial_lb), true, slack);
            push_entry(rep, "r log r/7 + log 6 <= (r/3) log(r/3)",
                       cc.log_n_floor + std::log(6.0), (r / 3.0) * std::log(r / 3.0), true, slack);
        }
        push_entry(rep, "sigma_upper <= sigma cap 7 c2 log B'/(r log r)", rep.szpiro.sigma_upper,
                   cc.sigma_cap_coeff * log_b1, false, slack,
                   "informational: the cap's constant is not certified for the measured surrogate");

        if (rep.floor.degenerate) {
            rep.branch = Branch::Degenerate;
            rep.log_theoretical = kInf;
            rep.chain.push_back({"height floor positive", 0.0, 0.0, false, false,
                                 "d_min = 1: no positive floor; bound inconclusive at supplied "
                                 "constants"});
        } else {
            rep.branch = Branch::LargeRank;
            push_entry(rep, "height floor positive", 0.0, rep.floor.value, true, slack);
            rep.log_theoretical =
                std::log(static_cast<double>(rep.torsion_order)) +
                static_cast<double>(rep.rank_cap) *
                    std::log1p(2.0 * std::sqrt(log_b1 / rep.floor.value));

            auto fm = f_max(log_b1, reg);
            push_entry(rep, "f' zero <= 2 A/log A (A = log B')", fm.x_star, fm.x_cap, true, slack);
            push_entry(rep, "max log f <= 2 (1 + 1/log 39) A/log A", fm.log_f_star, fm.log_f_cap,
                       true, slack);
            push_entry(rep, "log covering <= log c7 + f cap", rep.log_theoretical,
                       std::log(reg.get("c7")) + fm.log_f_cap, false, slack,
                       "informational: placeholder floor constants inflate the covering value");
        }
    }

    rep.theoretical = std::exp(rep.log_theoretical);
    rep.exponent_c = rep.log_theoretical * loglog(B) / log_b;
    return rep;
}

} // namespace

BoundReport theorem_bound(const ShortCurve& E, double B, const ConstantsRegistry& reg,
                          FloorMode mode) {
    if (B < reg.get("min_B") || std::log(B) < E.log_height()) {
        throw BTooSmall("theorem_bound on a short model requires B >= max(e^e, H(E))");
    }
    std::string label = to_string(E.A) + "," + to_string(E.B);
    return theorem_bound_impl(E, B, E.log_height(), reg, mode, std::move(label), false, {});
}

BoundReport theorem_bound(const GeneralCurve& E, double B, const ConstantsRegistry& reg,
                          FloorMode mode) {
    const double c0 = reg.get("c0");
    double h = E.log_height();
    if (B < reg.get("min_B") || std::log(B) < c0 * (1.0 + h)) {
        throw BTooSmall("theorem_bound on a general model requires B >= max(e^e, (e H(E))^c0)");
    }
    auto map = curve::to_short_model(E);

    std::vector<ChainEntry> pre;
    double hp = map.target.log_height();
    const double slack = reg.get("chain_slack");
    pre.push_back({"h(E') <= c0 h(E) + c0", hp, c0 * h + c0,
                   hp <= c0 * h + c0 + slack * (1.0 + std::fabs(c0 * h + c0)), true,
                   "translation-dilation model change"});

    // The Weil/canonical gap is taken at the larger of the two model
    // heights so the shifted count dominates naive counts on both models.
    double shift_h = std::max(h, hp);
    std::string label = to_string(E.a) + "," + to_string(E.b) + "," + to_string(E.c);
    return theorem_bound_impl(map.target, B, shift_h, reg, mode, std::move(label), true,
                              std::move(pre));
}

void attach_empirical(BoundReport& report, long n_points, const ConstantsRegistry& reg) {
    report.empirical = n_points;
    double lhs = n_points > 0 ? std::log(static_cast<double>(n_points)) : 0.0;
    push_entry(report, "log N(B) <= log theoretical", lhs, report.log_theoretical, true,
               reg.get("chain_slack"));
}

std::string report_to_json(const BoundReport& rep) {
    using nlohmann::json;
    auto num = [](double v) -> json {
        if (std::isfinite(v)) return v;
        return v > 0 ? "inf" : "-inf";
    };
    json j;
    j["curve"] = rep.curve_label;
    j["from_general"] = rep.from_general;
    j["B"] = rep.B;
    j["log_b_shifted"] = rep.log_b_shifted;
    j["delta_qm"] = to_string(rep.delta_qm);
    j["omega"] = rep.omega;
    j["rank_cap"] = rep.rank_cap;
    j["szpiro"] = {{"d_min", to_string(rep.szpiro.d_min)},
                   {"d_max", to_string(rep.szpiro.d_max)},
                   {"n_lower", to_string(rep.szpiro.n_lower)},
                   {"sigma_upper", rep.szpiro.sigma_upper}};
    j["torsion_order"] = rep.torsion_order;
    j["floor"] = {{"value", rep.floor.value},
                  {"degenerate", rep.floor.degenerate},
                  {"mode", to_string(rep.mode)}};
    j["branch"] = to_string(rep.branch);
    j["log_theoretical"] = num(rep.log_theoretical);
    j["theoretical"] = num(rep.theoretical);
    j["exponent_c"] = num(rep.exponent_c);
    if (rep.empirical) {
        j["empirical"] = *rep.empirical;
    } else {
        j["empirical"] = nullptr;
    }
    json chain = json::array();
    for (const auto& e : rep.chain) {
        chain.push_back({{"name", e.name},
                         {"lhs", num(e.lhs)},
                         {"rhs", num(e.rhs)},
                         {"holds", e.holds},
                         {"checked", e.checked},
                         {"note", e.note}});
    }
    j["chain"] = chain;
    j["all_checked_hold"] = rep.all_checked_hold();
    return j.dump(2);
}

} // namespace ecb::bounds
