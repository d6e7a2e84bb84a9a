#pragma once

#include <stdexcept>
#include <string>

namespace ecb {

/// Base class for all library errors. Each condition named in a module
/// contract gets its own type so callers (and the CLI exit-code table)
/// can distinguish them.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ZeroInput : public Error {
public:
    explicit ZeroInput(const std::string& msg = "input must be nonzero") : Error(msg) {}
};

class FactorizationIncomplete : public Error {
public:
    explicit FactorizationIncomplete(const std::string& msg) : Error(msg) {}
};

class EffortExceeded : public Error {
public:
    explicit EffortExceeded(const std::string& msg) : Error(msg) {}
};

class SingularCurve : public Error {
public:
    explicit SingularCurve(const std::string& msg = "curve is singular (discriminant 0)") : Error(msg) {}
};

class PointNotOnCurve : public Error {
public:
    explicit PointNotOnCurve(const std::string& msg = "point does not satisfy the curve equation") : Error(msg) {}
};

class NoTwoTorsion : public Error {
public:
    explicit NoTwoTorsion(const std::string& msg = "curve has no rational 2-torsion point") : Error(msg) {}
};

class BTooSmall : public Error {
public:
    explicit BTooSmall(const std::string& msg) : Error(msg) {}
};

class RankTooLarge : public Error {
public:
    explicit RankTooLarge(const std::string& msg) : Error(msg) {}
};

class RankTooSmall : public Error {
public:
    explicit RankTooSmall(const std::string& msg) : Error(msg) {}
};

class EmptyDomain : public Error {
public:
    explicit EmptyDomain(const std::string& msg) : Error(msg) {}
};

class GramNotPositiveDefinite : public Error {
public:
    explicit GramNotPositiveDefinite(const std::string& msg) : Error(msg) {}
};

/// Thrown when a height-error interval straddles a decision boundary.
/// Carries the count interval so callers can still report a bracket.
class ToleranceTooCoarse : public Error {
public:
    ToleranceTooCoarse(const std::string& msg, long count_lo, long count_hi)
        : Error(msg), count_lo(count_lo), count_hi(count_hi) {}
    long count_lo;
    long count_hi;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace ecb
