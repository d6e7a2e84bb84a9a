#pragma once

#include "ecbound/bigint.hpp"
#include "ecbound/errors.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace ecb::arith {

/// A nonzero integer together with its complete prime factorization.
/// Invariant: sign * prod(p_i^e_i) == value, primes strictly increasing,
/// every prime certified by a deterministic test.
struct FactoredInteger {
    Int value;
    int sign = 1; // +1 or -1
    std::vector<std::pair<Int, unsigned long>> factors;

    /// Number of distinct prime factors.
    std::size_t omega() const { return factors.size(); }

    /// Product of the prime divisors not in `excluded`. 1 if none survive.
    Int radical(const std::set<Int>& excluded = {}) const;

    /// Exponent of p in |value| (0 if p does not divide it).
    unsigned long valuation(const Int& p) const;

    /// Recompute sign * prod(p^e); used by round-trip checks.
    Int recompose() const;
};

struct FactorEffort {
    // Trial division by every prime below this bound.
    std::uint64_t trial_division_bound = 1'000'000;
    // Total Pollard-rho iterations across all composite cofactors.
    std::uint64_t rho_iteration_budget = 10'000'000;
};

/// Complete factorization of n (n != 0). Deterministic: trial division,
/// then Brent-cycle rho splitting with certified-prime leaves.
/// Throws ZeroInput for n = 0 and FactorizationIncomplete when a
/// composite cofactor survives the effort budget (a partial omega is
/// never returned: a missed split can only under-count omega).
FactoredInteger factor(const Int& n, const FactorEffort& effort = {});

/// Product of the prime divisors of n not in excluded; 1 when no prime
/// survives.
Int radical(const FactoredInteger& n, const std::set<Int>& excluded);

/// p_n# = product of the first n primes, exact.
Int primorial(unsigned long n);

/// The n-th prime (1-indexed), via sieve. Throws EffortExceeded beyond
/// the sieve budget.
Int nth_prime(unsigned long n);

/// First n primes as machine words (n within sieve budget).
std::vector<std::uint64_t> first_primes(unsigned long n);

/// Deterministic primality for |n| < 3.317e24 via the 13 strong-
/// pseudoprime bases 2..41. Larger inputs throw EffortExceeded.
bool is_certified_prime(const Int& n);

} // namespace ecb::arith
