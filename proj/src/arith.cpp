#include "ecbound/arith.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace ecb::arith {

namespace {

using PrimeVec = std::vector<std::uint64_t>;

// Lazily grown shared sieve. Readers take an immutable snapshot so a
// concurrent grow can never invalidate their view.
class PrimeSieve {
public:
    std::shared_ptr<const PrimeVec> with_limit(std::uint64_t limit) {
        std::lock_guard<std::mutex> lock(mu_);
        if (limit > sieved_to_) grow(limit);
        return primes_;
    }

    std::shared_ptr<const PrimeVec> with_count(std::size_t count) {
        std::lock_guard<std::mutex> lock(mu_);
        while (primes_->size() < count) {
            // p_n < n (ln n + ln ln n) for n >= 6; pad below that.
            double n = static_cast<double>(std::max<std::size_t>(count, 6));
            double est = n * (std::log(n) + std::log(std::log(n)));
            auto target = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(est * 1.2));
            grow(std::max(target, sieved_to_ * 2));
        }
        return primes_;
    }

private:
    void grow(std::uint64_t limit) {
        std::vector<bool> comp(limit + 1, false);
        auto next = std::make_shared<PrimeVec>();
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (comp[i]) continue;
            next->push_back(i);
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
        primes_ = std::move(next);
        sieved_to_ = limit;
    }

    std::mutex mu_;
    std::shared_ptr<const PrimeVec> primes_ = std::make_shared<PrimeVec>();
    std::uint64_t sieved_to_ = 0;
};

PrimeSieve& sieve() {
    static PrimeSieve s;
    return s;
}

// Beyond this the sieve would silently degrade to minutes of work.
constexpr unsigned long kSieveCountBudget = 200'000;

// Largest n for which the 13 bases 2..41 certify primality (Sorenson-Webster).
const Int& spsp_certified_limit() {
    static const Int limit("3317044064679887385961981");
    return limit;
}

bool strong_probable_prime(const Int& n, const Int& base) {
    // n odd, n > 2, base coprime to n.
    Int d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Brent-cycle Pollard rho. Returns a nontrivial factor of the odd
// composite n, or 0 if the iteration budget ran out. Deterministic:
// the polynomial-offset schedule is fixed.
Int pollard_rho_brent(const Int& n, std::uint64_t& budget) {
    for (unsigned long c = 1; c < 64 && budget > 0; ++c) {
        Int y = 2 + static_cast<long>(c);
        Int g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                std::uint64_t m = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < m && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                    --budget;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // The whole batch collapsed; replay it one step at a time.
            do {
                ys = (ys * ys + c) % n;
                g = gcd(Int(abs(x - ys)), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        // cycle degenerated for this offset, try the next one
    }
    return 0;
}

void factor_recursive(const Int& n, std::uint64_t& rho_budget, std::vector<Int>& primes_out) {
    if (n == 1) return;
    bool prime = false;
    try {
        prime = is_certified_prime(n);
    } catch (const EffortExceeded&) {
        throw FactorizationIncomplete("cofactor " + to_string(n) +
                                      " exceeds the deterministic primality range");
    }
    if (prime) {
        primes_out.push_back(n);
        return;
    }
    Int d = pollard_rho_brent(n, rho_budget);
    if (d == 0) {
        throw FactorizationIncomplete("composite cofactor " + to_string(n) +
                                      " survived the rho iteration budget");
    }
    factor_recursive(d, rho_budget, primes_out);
    factor_recursive(n / d, rho_budget, primes_out);
}

} // namespace

bool is_certified_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    if (n >= spsp_certified_limit()) {
        throw EffortExceeded("primality certification limited to n < 3.317e24, got " + to_string(n));
    }
    static const long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (long b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
        if (!strong_probable_prime(n, Int(b))) return false;
    }
    return true;
}

FactoredInteger factor(const Int& n, const FactorEffort& effort) {
    if (n == 0) throw ZeroInput("factor(0) is undefined");
    FactoredInteger out;
    out.value = n;
    out.sign = n < 0 ? -1 : 1;

    Int m = abs(n);
    std::vector<Int> primes;

    auto small = sieve().with_limit(effort.trial_division_bound);
    for (std::uint64_t p : *small) {
        if (p > effort.trial_division_bound) break;
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            primes.push_back(Int(p));
        }
        if (m == 1) break;
    }
    if (m > 1) {
        std::uint64_t rho_budget = effort.rho_iteration_budget;
        factor_recursive(m, rho_budget, primes);
    }

    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], static_cast<unsigned long>(j - i));
        i = j;
    }
    return out;
}

Int FactoredInteger::radical(const std::set<Int>& excluded) const {
    Int r = 1;
    for (const auto& [p, e] : factors) {
        if (!excluded.count(p)) r *= p;
    }
    return r;
}

unsigned long FactoredInteger::valuation(const Int& p) const {
    for (const auto& [q, e] : factors) {
        if (q == p) return e;
    }
    return 0;
}

Int FactoredInteger::recompose() const {
    Int r = sign;
    for (const auto& [p, e] : factors) r *= pow_int(p, e);
    return r;
}

Int radical(const FactoredInteger& n, const std::set<Int>& excluded) {
    return n.radical(excluded);
}

Int primorial(unsigned long n) {
    if (n == 0) throw EmptyDomain("primorial requires n >= 1");
    if (n > kSieveCountBudget) throw EffortExceeded("primorial sieve budget is n <= 200000");
    auto ps = sieve().with_count(n);
    Int r = 1;
    for (unsigned long i = 0; i < n; ++i) r *= (*ps)[i];
    return r;
}

Int nth_prime(unsigned long n) {
    if (n == 0) throw EmptyDomain("nth_prime requires n >= 1");
    if (n > kSieveCountBudget) throw EffortExceeded("prime sieve budget is n <= 200000");
    auto ps = sieve().with_count(n);
    return Int((*ps)[n - 1]);
}

std::vector<std::uint64_t> first_primes(unsigned long n) {
    if (n > kSieveCountBudget) throw EffortExceeded("prime sieve budget is n <= 200000");
    auto ps = sieve().with_count(n);
    return {ps->begin(), ps->begin() + n};
}

} // namespace ecb::arith
