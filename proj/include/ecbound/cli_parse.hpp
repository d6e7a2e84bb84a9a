#pragma once

#include "ecbound/curve.hpp"

#include <string>
#include <variant>

namespace ecb::cli {

using CurveSpec = std::variant<curve::ShortCurve, curve::GeneralCurve>;

/// "A,B" (two integers, short model) or "a,b,c" (three rationals, general
/// model). Rationals accept "p/q" and decimal forms, all exact.
CurveSpec parse_curve(const std::string& spec);

/// Exact rational from "p/q", decimal, or integer text.
Rat parse_rational(const std::string& text);

std::string format_curve(const CurveSpec& spec);

} // namespace ecb::cli
