#include "ecbound/registry.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ecb::bounds {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::PaperStructural: return "paper-structural";
        case Provenance::ImplementerChosen: return "implementer-chosen";
        case Provenance::UserSupplied: return "user-supplied";
    }
    return "?";
}

namespace {

ConstantEntry fixed(double v, Provenance p, const std::string& note) {
    return {v, p, /*frozen=*/false, /*derived=*/false, note};
}

ConstantEntry structural(double v, const std::string& note) {
    return {v, Provenance::PaperStructural, /*frozen=*/true, /*derived=*/false, note};
}

ConstantEntry derived(const std::string& note) {
    return {0.0, Provenance::ImplementerChosen, /*frozen=*/false, /*derived=*/true, note};
}

} // namespace

ConstantsRegistry::ConstantsRegistry() {
    auto& e = entries_;
    e["c0"] = fixed(12.0, Provenance::ImplementerChosen,
                    "general->short model height inflation: h(E') <= c0 h(E) + c0");
    e["c1"] = fixed(3.0, Provenance::ImplementerChosen,
                    "Weil vs canonical height gap: |hhat(P) - h(P)| <= c1 h(E) + c1");
    e["c2"] = fixed(1.3841, Provenance::ImplementerChosen,
                    "omega(m) <= c2 log m / loglog m for m >= 3 (Robin's explicit constant)");
    e["c3"] = derived("rank cap coefficient r <= c3 log B/loglog B; = 12 c2 + 2/e");
    e["c4"] = fixed(1e8, Provenance::UserSupplied,
                    "height floor: hhat >= log dmin/(c4 sigma^6 log^2(c5 sigma)); "
                    "placeholder - replace with the constant from Petsche's paper");
    e["c5"] = fixed(1e5, Provenance::UserSupplied,
                    "height floor log-argument scale; placeholder, see c4");
    e["c6"] = derived("simplified floor denominator hhat >= log dmin/(c6 sigma^8); = c4 c5^2");
    e["c7"] = fixed(16.0, Provenance::ImplementerChosen,
                    "torsion cardinality cap (largest admissible torsion order)");
    e["c8"] = derived("covering base coefficient; = 1 + 2 sqrt(c6)");
    e["c9"] = fixed(39.0, Provenance::ImplementerChosen,
                    "small/large rank branch threshold (must stay >= 39)");
    e["c10"] = derived("small-rank base: N(B) <= c7 (c10 log B)^{4 c9}");
    e["c11"] = derived("small-rank polylog exponent: N(B) <= (log B)^{c11}; "
                       "= log c7 + 4 c9 (log c10 + 1)");
    e["c12"] = fixed(1.0, Provenance::ImplementerChosen,
                     "f(x) inner coefficient (dropped in the maximization)");
    e["c13"] = fixed(1.0, Provenance::ImplementerChosen,
                     "f(x) exponent coefficient (dropped in the maximization)");
    e["c14"] = fixed(1.0, Provenance::ImplementerChosen,
                     "documentation only: log B = c14 log dmin coupling in the no-improvement remark");
    e["c15"] = fixed(1.0, Provenance::ImplementerChosen,
                     "documentation only: exponent constant in the no-improvement remark");
    e["c16"] = fixed(1e8, Provenance::UserSupplied,
                     "rational-improved floor: hhat >= log dmin/(c16 sigma^6); placeholder");
    e["c_lang"] = fixed(1e18, Provenance::ImplementerChosen,
                        "conjectural sigma-free floor: hhat >= log dmin/c_lang; default = default c6");
    e["C"] = derived("naive-count exponent scale: N(B) <= B^{C/loglog B}; = (2 c1 + 1) D");
    e["D"] = derived("canonical-count exponent scale: = 2 (1 + 1/log 39), the f-cap exponent");
    e["a1"] = structural(134861.0, "documentation: point-count coefficient quoted with the floor result");
    e["a2"] = structural(104613.0, "documentation: log-argument coefficient quoted with the floor result");

    e["eq3_factor"] = structural(496.0, "|delta| <= 496 H(E)^3 for short integral models");
    e["eq7_factor"] = structural(1.0 / 6.0, "log B >= (1/6) log|delta| under the B precondition");
    e["rank_cutoff"] = structural(39.0, "left edge of the f-maximization domain");
    e["primorial_boundary"] = structural(13.0, "p_n# >= n^n holds from n = 13 on");
    e["conductor_log_divisor"] = structural(7.0, "log N >= r log r / 7 for r >= 39");
    e["min_B"] = structural(std::exp(std::exp(1.0)), "smallest admissible B (e^e)");

    e["tol_height"] = fixed(1e-6, Provenance::ImplementerChosen, "default canonical height tolerance");
    e["chain_slack"] = fixed(1e-9, Provenance::ImplementerChosen,
                             "relative slack when checking chain inequalities");
    e["digit_budget"] = fixed(1e6, Provenance::ImplementerChosen,
                              "decimal digit cap per coordinate in the height doubling loop");
    e["enum_budget"] = fixed(1e4, Provenance::ImplementerChosen,
                             "largest B fully enumerated by enumerate_points");

    recompute_derived();
    validate();
}

void ConstantsRegistry::recompute_derived() {
    auto& e = entries_;
    const double c1 = e["c1"].value;
    const double c2 = e["c2"].value;
    const double c4 = e["c4"].value;
    const double c5 = e["c5"].value;
    const double c7 = e["c7"].value;
    const double c9 = e["c9"].value;

    // r <= 2 omega(delta) + 2 <= 2 c2 log|delta|/loglog|delta| + 2;
    // log|delta| <= 6 log B and t/loglog t increasing give the 12 c2 term,
    // and log B/loglog B >= e (B >= e^e) absorbs the +2 as 2/e.
    e["c3"].value = 12.0 * c2 + 2.0 / std::exp(1.0);

    // log^2(c5 sigma) < c5^2 sigma^2 turns the full floor into the
    // sigma^8 form with c6 = c4 c5^2.
    e["c6"].value = c4 * c5 * c5;

    e["c8"].value = 1.0 + 2.0 * std::sqrt(e["c6"].value);

    // From the covering base 1 + 2 sqrt(c6) sqrt(log B/log d) sigma^4 with
    // sigma <= log d/log 2 and log d <= 6 log B:
    //   sqrt(log B/log d) sigma^4 <= 6^{3.5}/log^4(2) (log B)^4,
    // so the base is <= (c10 log B)^4 once log B >= 1.
    double coeff = 1.0 + 2.0 * std::sqrt(e["c6"].value) * std::pow(6.0, 3.5) /
                             std::pow(std::numbers::ln2_v<double>, 4.0);
    e["c10"].value = std::max(1.0, std::pow(coeff, 0.25));

    // c7 (c10 log B)^{4 c9} <= (log B)^{c11} once loglog B >= 1.
    e["c11"].value = std::log(c7) + 4.0 * c9 * (std::log(e["c10"].value) + 1.0);

    e["D"].value = 2.0 * (1.0 + 1.0 / std::log(e["rank_cutoff"].value));
    e["C"].value = (2.0 * c1 + 1.0) * e["D"].value;
}

void ConstantsRegistry::validate() const {
    for (const auto& [key, entry] : entries_) {
        if (!(entry.value >= 0.0)) {
            throw ParseError("registry constant " + key + " must be >= 0");
        }
    }
    if (entries_.at("c4").value <= 1.0 || entries_.at("c5").value <= 1.0) {
        throw ParseError("registry requires c4 > 1 and c5 > 1");
    }
    if (entries_.at("c9").value < 39.0) {
        throw ParseError("registry requires c9 >= 39 (the primorial chain needs r >= 39)");
    }
    if (entries_.at("tol_height").value <= 0.0 || entries_.at("chain_slack").value < 0.0) {
        throw ParseError("registry tolerances must be positive");
    }
}

void ConstantsRegistry::set(const std::string& key, double value) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError("unknown registry key: " + key);
    if (it->second.frozen) throw ParseError("registry key " + key + " is structural and frozen");
    if (it->second.derived) {
        throw ParseError("registry key " + key + " is derived; set its inputs instead");
    }
    it->second.value = value;
    it->second.provenance = Provenance::UserSupplied;
    recompute_derived();
    validate();
}

ConstantsRegistry ConstantsRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open registry file: " + path);
    ConstantsRegistry reg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        auto trim = [&](std::string s) {
            while (!s.empty() && is_space(s.front())) s.erase(s.begin());
            while (!s.empty() && is_space(s.back())) s.pop_back();
            return s;
        };
        std::string body = trim(line);
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError("registry line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(body.substr(0, eq));
        std::string val = trim(body.substr(eq + 1));
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            throw ParseError("registry line " + std::to_string(lineno) + ": bad value '" + val + "'");
        }
        if (used != val.size()) {
            throw ParseError("registry line " + std::to_string(lineno) + ": bad value '" + val + "'");
        }
        reg.set(key, v);
    }
    return reg;
}

double ConstantsRegistry::get(const std::string& key) const {
    return entry(key).value;
}

const ConstantEntry& ConstantsRegistry::entry(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError("unknown registry key: " + key);
    return it->second;
}

points::HeightParams ConstantsRegistry::height_params() const {
    points::HeightParams p;
    p.c1 = get("c1");
    p.digit_budget = static_cast<std::size_t>(get("digit_budget"));
    return p;
}

std::string ConstantsRegistry::to_text() const {
    std::ostringstream os;
    os << std::setprecision(15);
    for (const auto& [key, e] : entries_) {
        os << key << " = " << e.value << "  # " << to_string(e.provenance);
        if (e.frozen) os << ", frozen";
        if (e.derived) os << ", derived";
        if (!e.note.empty()) os << ": " << e.note;
        os << "\n";
    }
    return os.str();
}

} // namespace ecb::bounds
