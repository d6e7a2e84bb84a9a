// ecbound: rational-point counting on elliptic curves over Q, with the
// full descent/covering bound chain and exhaustive desk-scale checks.

#include "ecbound/bounds.hpp"
#include "ecbound/cli_parse.hpp"
#include "ecbound/count.hpp"
#include "ecbound/kernels/geometry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace {

using namespace ecb;
using nlohmann::json;

// Exit codes (also listed in README and --help):
//   0 ok            1 chain/verify failure   2 parse error
//   3 singular      4 no 2-torsion           5 B too small
//   6 effort/factorization exhausted         7 tolerance/Gram failure
//   8 domain error  9 internal error
int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const SingularCurve*>(&e)) return 3;
    if (dynamic_cast<const NoTwoTorsion*>(&e)) return 4;
    if (dynamic_cast<const BTooSmall*>(&e)) return 5;
    if (dynamic_cast<const FactorizationIncomplete*>(&e)) return 6;
    if (dynamic_cast<const EffortExceeded*>(&e)) return 6;
    if (dynamic_cast<const GramNotPositiveDefinite*>(&e)) return 7;
    if (dynamic_cast<const ToleranceTooCoarse*>(&e)) return 7;
    if (dynamic_cast<const Error*>(&e)) return 8;
    return 9;
}

std::string fmt15(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output file: " + out_path);
    out << text;
}

bounds::ConstantsRegistry load_registry(const std::string& path_flag) {
    std::string path = path_flag;
    if (path.empty()) {
        if (const char* env = std::getenv("ECBOUND_REGISTRY")) path = env;
    }
    if (path.empty()) return bounds::ConstantsRegistry();
    return bounds::ConstantsRegistry::load(path);
}

struct InventoryRow {
    Rat x, y;
    double h = 0.0;
    double hhat = 0.0;
    bool infinity = false;
};

// Exhaustive inventory in the coordinates of the input model. General
// models enumerate through the short model with an exactly inflated bound
// and filter by the general-model height.
struct InventoryResult {
    std::vector<InventoryRow> rows;
    bool complete = true;
    long count = 0;
};

InventoryResult make_inventory(const cli::CurveSpec& spec, double B, double tol,
                               const bounds::ConstantsRegistry& reg) {
    count::EnumerateOptions opts;
    opts.budget = reg.get("enum_budget");
    auto params = reg.height_params();

    InventoryResult res;
    auto push_row = [&](const points::RationalPoint& P, const curve::ShortCurve& E_short,
                        const points::RationalPoint& P_short, const Rat& x_disp, const Rat& y_disp,
                        double h_disp) {
        InventoryRow row;
        row.infinity = P.infinity;
        if (!P.infinity) {
            row.x = x_disp;
            row.y = y_disp;
        }
        row.h = h_disp;
        row.hhat = points::canonical_height(P_short, E_short, tol, params).value;
        res.rows.push_back(std::move(row));
    };

    if (std::holds_alternative<curve::ShortCurve>(spec)) {
        const auto& E = std::get<curve::ShortCurve>(spec);
        auto inv = count::enumerate_points(E, B, opts);
        res.complete = inv.complete;
        for (const auto& P : inv.points) {
            push_row(P, E, P, P.x, P.y, points::naive_height(P));
        }
    } else {
        const auto& E = std::get<curve::GeneralCurve>(spec);
        auto map = curve::to_short_model(E);
        // x = X/u^2 + shift, so H(x) <= 2 u^2 H(shift) H(X); inverting,
        // scanning X up to B_short = 2 u^2 H(shift) B covers every x with
        // H(x) <= B.
        Int h_shift = curve::projective_height({map.shift});
        double inflate = 2.0 * mpz_get_d(Int(map.scale * map.scale).get_mpz_t()) *
                         mpz_get_d(h_shift.get_mpz_t());
        auto inv = count::enumerate_points(map.target, B * inflate, opts);
        res.complete = inv.complete;
        Int bound(std::floor(B));
        for (const auto& P : inv.points) {
            if (P.infinity) {
                push_row(P, map.target, P, Rat(0), Rat(0), 0.0);
                continue;
            }
            auto [x, y] = map.backward(P.x, P.y);
            Int hx = std::max(abs(x.get_num()), Int(x.get_den()));
            if (hx > bound) continue;
            push_row(P, map.target, P, x, y, log_abs(hx));
        }
    }
    res.count = static_cast<long>(res.rows.size());
    return res;
}

json inventory_to_json(const InventoryResult& inv) {
    json rows = json::array();
    for (const auto& r : inv.rows) {
        json row;
        if (r.infinity) {
            row["x"] = nullptr;
            row["y"] = nullptr;
        } else {
            row["x"] = to_string(r.x);
            row["y"] = to_string(r.y);
        }
        row["h"] = r.h;
        row["hhat"] = r.hhat;
        rows.push_back(row);
    }
    return rows;
}

std::string report_to_text(const bounds::BoundReport& rep) {
    std::ostringstream os;
    os << "curve:            " << rep.curve_label << (rep.from_general ? "  (general model)" : "")
       << "\n"
       << "B:                " << fmt15(rep.B) << "\n"
       << "log B':           " << fmt15(rep.log_b_shifted) << "\n"
       << "delta_qm:         " << to_string(rep.delta_qm) << "\n"
       << "omega(delta_qm):  " << rep.omega << "\n"
       << "rank cap:         " << rep.rank_cap << "\n"
       << "torsion order:    " << rep.torsion_order << "\n"
       << "sigma_upper:      " << fmt15(rep.szpiro.sigma_upper) << "\n"
       << "d_min:            " << to_string(rep.szpiro.d_min) << "\n"
       << "d_max:            " << to_string(rep.szpiro.d_max) << "\n"
       << "n_lower:          " << to_string(rep.szpiro.n_lower) << "\n"
       << "floor (" << bounds::to_string(rep.mode) << "): "
       << (rep.floor.degenerate ? "degenerate" : fmt15(rep.floor.value)) << "\n"
       << "branch:           " << bounds::to_string(rep.branch) << "\n"
       << "log theoretical:  " << fmt15(rep.log_theoretical) << "\n"
       << "theoretical:      " << fmt15(rep.theoretical) << "\n"
       << "exponent C:       " << fmt15(rep.exponent_c) << "\n";
    if (rep.empirical) os << "empirical N(B):   " << *rep.empirical << "\n";
    os << "chain:\n";
    for (const auto& e : rep.chain) {
        const char* tag = !e.checked ? "info" : (e.holds ? " ok " : "FAIL");
        os << "  [" << tag << "] " << e.name << ": " << fmt15(e.lhs) << " <= " << fmt15(e.rhs);
        if (!e.note.empty()) os << "  (" << e.note << ")";
        os << "\n";
    }
    os << (rep.all_checked_hold() ? "all checked chain entries hold\n"
                                  : "CHAIN FAILURE: some checked entry does not hold\n");
    return os.str();
}

int cmd_analyze(const std::string& curve_spec, double B, double tol, const std::string& reg_path,
                const std::string& out, const std::string& format, bool empirical,
                const std::string& mode_str, long threshold_rank) {
    auto reg = load_registry(reg_path);
    if (threshold_rank > 0) reg.set("c9", static_cast<double>(threshold_rank));
    auto mode = bounds::floor_mode_from_string(mode_str);
    auto spec = cli::parse_curve(curve_spec);

    bounds::BoundReport rep;
    if (std::holds_alternative<curve::ShortCurve>(spec)) {
        rep = bounds::theorem_bound(std::get<curve::ShortCurve>(spec), B, reg, mode);
    } else {
        rep = bounds::theorem_bound(std::get<curve::GeneralCurve>(spec), B, reg, mode);
    }

    std::optional<InventoryResult> inv;
    if (empirical) {
        inv = make_inventory(spec, B, tol, reg);
        if (inv->complete) {
            bounds::attach_empirical(rep, inv->count, reg);
        }
    }

    if (format == "json") {
        json j = json::parse(bounds::report_to_json(rep));
        if (inv) {
            j["inventory"] = {{"complete", inv->complete}, {"count", inv->count}};
        }
        write_output(j.dump(2), out);
    } else if (format == "text") {
        std::string text = report_to_text(rep);
        if (inv) {
            text += "inventory: count=" + std::to_string(inv->count) +
                    (inv->complete ? " (complete)\n" : " (PARTIAL: budget exceeded)\n");
        }
        write_output(text, out);
    } else {
        throw ParseError("analyze supports --format json|text");
    }
    return rep.all_checked_hold() ? 0 : 1;
}

int cmd_enumerate(const std::string& curve_spec, double B, double tol,
                  const std::string& reg_path, const std::string& out,
                  const std::string& format) {
    auto reg = load_registry(reg_path);
    auto spec = cli::parse_curve(curve_spec);
    auto inv = make_inventory(spec, B, tol, reg);

    if (format == "json") {
        json j;
        j["curve"] = cli::format_curve(spec);
        j["B"] = B;
        j["complete"] = inv.complete;
        j["count"] = inv.count;
        j["points"] = inventory_to_json(inv);
        write_output(j.dump(2), out);
    } else if (format == "csv") {
        std::ostringstream os;
        os << "x,y,h,hhat\n";
        for (const auto& r : inv.rows) {
            if (r.infinity) {
                os << "inf,inf,0,0\n";
            } else {
                os << to_string(r.x) << "," << to_string(r.y) << "," << fmt15(r.h) << ","
                   << fmt15(r.hhat) << "\n";
            }
        }
        write_output(os.str(), out);
    } else {
        throw ParseError("enumerate supports --format json|csv");
    }
    return 0;
}

int cmd_bound_curve(double A, int samples, const std::string& reg_path, const std::string& out) {
    auto reg = load_registry(reg_path);
    auto fm = bounds::f_max(A, reg);
    double upper = reg.get("c3") * A / std::log(A);

    std::ostringstream os;
    os << "# A=" << fmt15(A) << " x_star=" << fmt15(fm.x_star) << " x_cap=" << fmt15(fm.x_cap)
       << " logf_star=" << fmt15(fm.log_f_star) << " logf_cap=" << fmt15(fm.log_f_cap)
       << " cap_ok=" << (fm.cap_ok ? 1 : 0) << "\n";
    os << "x,logf\n";
    double lo = reg.get("rank_cutoff");
    for (int i = 0; i < samples; ++i) {
        double x = samples == 1 ? lo : lo + (upper - lo) * static_cast<double>(i) / (samples - 1);
        os << fmt15(x) << "," << fmt15(bounds::f_log(x, A)) << "\n";
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_constants(const std::string& reg_path, const std::string& out, const std::string& format) {
    auto reg = load_registry(reg_path);
    if (format == "text") {
        write_output(reg.to_text(), out);
    } else if (format == "json") {
        json j;
        for (const auto& [key, e] : reg.entries()) {
            j[key] = {{"value", e.value},
                      {"provenance", bounds::to_string(e.provenance)},
                      {"frozen", e.frozen},
                      {"derived", e.derived},
                      {"note", e.note}};
        }
        write_output(j.dump(2), out);
    } else {
        throw ParseError("constants supports --format text|json");
    }
    return 0;
}

int cmd_verify(const std::string& reg_path) {
    auto reg = load_registry(reg_path);
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    {
        Int p13 = arith::primorial(13);
        Int p12 = arith::primorial(12);
        check("primorial boundary: p_13# >= 13^13 and p_12# < 12^12",
              p13 == Int("304250263527210") && p13 >= pow_int(Int(13), 13) &&
                  p12 < pow_int(Int(12), 12));
    }
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> coef(-10000, 10000);
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            Int A(coef(rng)), Bc(coef(rng));
            if (-16 * (4 * A * A * A + 27 * Bc * Bc) == 0) continue;
            curve::ShortCurve E(A, Bc);
            Int H3 = E.height * E.height * E.height;
            if (!(abs(E.delta) <= 496 * H3)) ok = false;
        }
        check("discriminant vs height: |delta| <= 496 H^3 on 200 random curves", ok);
    }
    {
        curve::ShortCurve E(Int(-2), Int(0));
        points::RationalPoint g(Rat(-1), Rat(1));
        bool ok = true;
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> mult(-4, 4);
        for (int i = 0; i < 30 && ok; ++i) {
            auto P = points::multiply(mult(rng), g, E);
            auto Q = points::multiply(mult(rng), g, E);
            auto R = points::multiply(mult(rng), g, E);
            auto lhs = points::add(points::add(P, Q, E), R, E);
            auto rhs = points::add(P, points::add(Q, R, E), E);
            ok = lhs == rhs && points::add(P, Q, E) == points::add(Q, P, E) &&
                 points::add(P, points::negate(P), E).infinity;
        }
        check("group law: associative/commutative/inverse on 30 sampled triples", ok);
    }
    {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        bool ok = true;
        for (int inst = 0; inst < 20 && ok; ++inst) {
            std::size_t dim = 1 + inst % 4;
            double R = 2.0;
            std::vector<std::vector<double>> S;
            for (int i = 0; i < 100; ++i) {
                std::vector<double> p(dim);
                double n2 = 0;
                for (auto& c : p) {
                    c = unit(rng) * R / std::sqrt(static_cast<double>(dim));
                    n2 += c * c;
                }
                if (n2 <= R * R) S.push_back(p);
            }
            double rho = 0.3 + 0.1 * (inst % 5);
            auto cover = count::greedy_cover(S, R, rho);
            ok = cover.worst_gap <= rho + 1e-9 &&
                 static_cast<double>(cover.centers.size()) <= cover.bound;
        }
        check("covering: greedy cover covers S within (1+2R/rho)^n balls", ok);
    }
    {
        bool ok = true;
        for (const char* spec : {"-1,0", "-2,0", "1,0"}) {
            auto E = std::get<curve::ShortCurve>(cli::parse_curve(spec));
            auto rep = bounds::theorem_bound(E, 200.0, reg);
            auto inv = count::enumerate_points(E, 200.0);
            bounds::attach_empirical(rep, static_cast<long>(inv.size()), reg);
            ok = ok && rep.all_checked_hold();
        }
        check("bound chain + exhaustive count on 3 desk curves (B = 200)", ok);
    }
    std::cout << (failures == 0 ? "verify: all checks passed\n"
                                : "verify: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ecbound: point counts and count bounds for elliptic curves over Q"};
    app.require_subcommand(1);

    std::string curve_spec, reg_path, out_path, format, mode_str = "full";
    double B = 1e6, tol = 1e-6, A = 100.0;
    int samples = 200;
    long threshold_rank = 0;
    bool empirical = false;

    auto* analyze = app.add_subcommand("analyze", "evaluate the full bound chain for one curve");
    analyze->add_option("--curve", curve_spec, "curve spec 'A,B' or 'a,b,c'")->required();
    analyze->add_option("--B", B, "height bound B (default 1e6)");
    analyze->add_option("--tol", tol, "canonical height tolerance");
    analyze->add_option("--registry", reg_path, "constants registry file (or $ECBOUND_REGISTRY)");
    analyze->add_option("--out", out_path, "output file (default stdout)");
    analyze->add_option("--format", format, "json|text (default json)")->default_val("json");
    analyze->add_flag("--empirical", empirical, "also run the exhaustive point count");
    analyze->add_option("--mode", mode_str, "full|simplified|rationalImproved|langConjecture");
    analyze->add_option("--threshold-rank", threshold_rank, "override the c9 branch threshold");

    auto* enumerate = app.add_subcommand("enumerate", "list all points of naive height <= B");
    enumerate->add_option("--curve", curve_spec, "curve spec")->required();
    enumerate->add_option("--B", B, "height bound")->required();
    enumerate->add_option("--tol", tol, "canonical height tolerance for hhat");
    enumerate->add_option("--registry", reg_path, "constants registry file");
    enumerate->add_option("--out", out_path, "output file");
    enumerate->add_option("--format", format, "json|csv (default json)")->default_val("json");

    auto* bound_curve = app.add_subcommand("bound-curve", "sample log f(x) and its caps as CSV");
    bound_curve->add_option("--A", A, "A = log B for the f maximization")->required();
    bound_curve->add_option("--samples", samples, "number of grid rows (default 200)");
    bound_curve->add_option("--registry", reg_path, "constants registry file");
    bound_curve->add_option("--out", out_path, "output file");

    auto* verify = app.add_subcommand("verify", "run the built-in smoke verification suite");
    verify->add_option("--registry", reg_path, "constants registry file");

    auto* constants = app.add_subcommand("constants", "print the effective constants registry");
    constants->add_option("--registry", reg_path, "constants registry file");
    constants->add_option("--out", out_path, "output file");
    constants->add_option("--format", format, "text|json (default text)")->default_val("text");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) {
            return cmd_analyze(curve_spec, B, tol, reg_path, out_path, format, empirical, mode_str,
                               threshold_rank);
        }
        if (enumerate->parsed()) {
            return cmd_enumerate(curve_spec, B, tol, reg_path, out_path, format);
        }
        if (bound_curve->parsed()) {
            return cmd_bound_curve(A, samples, reg_path, out_path);
        }
        if (verify->parsed()) {
            return cmd_verify(reg_path);
        }
        if (constants->parsed()) {
            return cmd_constants(reg_path, out_path, format);
        }
        std::cerr << app.help();
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
