#include "ecbound/cli_parse.hpp"

#include "ecbound/errors.hpp"

#include <algorithm>
#include <vector>

namespace ecb::cli {

namespace {

std::string trimmed(const std::string& s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    auto b = std::find_if_not(s.begin(), s.end(), is_space);
    auto e = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
    return b < e ? std::string(b, e) : std::string();
}

Int parse_integer(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw ParseError("not an integer: '" + text + "'");
    }
}

} // namespace

Rat parse_rational(const std::string& text) {
    std::string t = trimmed(text);
    if (t.empty()) throw ParseError("empty rational");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Int num = parse_integer(t.substr(0, slash));
        Int den = parse_integer(t.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + t + "'");
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string head = t.substr(0, dot);
        std::string frac = t.substr(dot + 1);
        if (frac.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("bad decimal: '" + t + "'");
        }
        bool neg = !head.empty() && head[0] == '-';
        if (head == "-" || head == "+" || head.empty()) head += "0";
        Int whole = parse_integer(head);
        Int den = pow_int(Int(10), frac.size());
        Int num = abs(whole) * den + (frac.empty() ? Int(0) : parse_integer(frac));
        if (neg) num = -num;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    return Rat(parse_integer(t));
}

CurveSpec parse_curve(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);

    if (parts.size() == 2) {
        std::string a = trimmed(parts[0]), b = trimmed(parts[1]);
        if (a.find_first_of("./") != std::string::npos ||
            b.find_first_of("./") != std::string::npos) {
            throw ParseError("short model coefficients must be integers: '" + spec + "'");
        }
        return curve::ShortCurve(parse_integer(a), parse_integer(b));
    }
    if (parts.size() == 3) {
        return curve::GeneralCurve(parse_rational(parts[0]), parse_rational(parts[1]),
                                   parse_rational(parts[2]));
    }
    throw ParseError("curve spec must be 'A,B' or 'a,b,c', got '" + spec + "'");
}

std::string format_curve(const CurveSpec& spec) {
    if (std::holds_alternative<curve::ShortCurve>(spec)) {
        const auto& E = std::get<curve::ShortCurve>(spec);
        return to_string(E.A) + "," + to_string(E.B);
    }
    const auto& E = std::get<curve::GeneralCurve>(spec);
    return to_string(E.a) + "," + to_string(E.b) + "," + to_string(E.c);
}

} // namespace ecb::cli
