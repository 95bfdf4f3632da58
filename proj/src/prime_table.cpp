#include "primorial/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primorial/errors.hpp"
#include "primorial/numeric.hpp"

namespace primlab {

namespace {

bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t i)
{
    return (bits[i >> 6] >> (i & 63)) & 1u;
}

void clear_bit(std::vector<std::uint64_t>& bits, std::uint64_t i)
{
    bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

}  // namespace

PrimeTable PrimeTable::sieve_up_to(std::uint64_t limit, std::uint64_t ceiling)
{
    if (limit < 2)
        throw DomainError("sieve limit must be at least 2, got " + std::to_string(limit));
    if (limit > ceiling)
        throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds the configured ceiling "
                            + std::to_string(ceiling));

    PrimeTable t;
    t.limit_ = limit;

    // Index i represents the odd number 2i+1, for 2i+1 <= limit.
    const std::uint64_t count = (limit - 1) / 2 + 1;
    t.odd_bits_.assign((count + 63) / 64, ~std::uint64_t{0});
    clear_bit(t.odd_bits_, 0);  // 1 is not prime
    for (std::uint64_t i = count; i < t.odd_bits_.size() * 64; ++i)
        clear_bit(t.odd_bits_, i);

    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
        if (!test_bit(t.odd_bits_, p / 2))
            continue;
        for (std::uint64_t m = p * p; m <= limit; m += 2 * p)
            clear_bit(t.odd_bits_, m / 2);
    }

    if (limit > 10)
        t.primes_.reserve(static_cast<std::size_t>(1.26 * limit / std::log(static_cast<double>(limit))));
    t.primes_.push_back(2);
    for (std::uint64_t i = 1; i < count; ++i)
        if (test_bit(t.odd_bits_, i))
            t.primes_.push_back(static_cast<std::uint32_t>(2 * i + 1));

    t.theta_prefix_.reserve(t.primes_.size());
    CompensatedSum acc;
    for (const auto p : t.primes_) {
        acc += std::log(static_cast<double>(p));
        t.theta_prefix_.push_back(acc.value());
    }
    return t;
}

std::uint64_t PrimeTable::nth_prime_upper_estimate(std::size_t n) noexcept
{
    if (n < 6)
        return 13;
    const double dn = static_cast<double>(n);
    return static_cast<std::uint64_t>(dn * (std::log(dn) + std::log(std::log(dn)))) + 1;
}

std::uint64_t PrimeTable::nth_prime(std::size_t n) const
{
    if (n == 0)
        throw DomainError("prime index is 1-based; n = 0 is invalid");
    if (n > primes_.size())
        throw RangeError("p_" + std::to_string(n) + " is beyond the " + std::to_string(primes_.size())
                         + " sieved primes; sieve limit must be at least "
                         + std::to_string(nth_prime_upper_estimate(n)));
    return primes_[n - 1];
}

std::size_t PrimeTable::pi(std::uint64_t x) const
{
    if (x > limit_)
        throw RangeError("x = " + std::to_string(x) + " exceeds sieve limit " + std::to_string(limit_));
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

double PrimeTable::theta_of_index(std::size_t n) const
{
    if (n == 0)
        return 0.0;
    if (n > theta_prefix_.size())
        throw RangeError("theta(p_" + std::to_string(n) + ") needs sieve limit at least "
                         + std::to_string(nth_prime_upper_estimate(n)));
    return theta_prefix_[n - 1];
}

double PrimeTable::theta(std::uint64_t x) const
{
    return theta_of_index(pi(x));
}

PrimeStats PrimeTable::stats_at(std::uint64_t x) const
{
    const auto n = pi(x);
    return {x, n, theta_of_index(n)};
}

std::vector<std::uint32_t> PrimeTable::primes_below_sqrt(std::uint64_t x) const
{
    const std::uint64_t r = isqrt(x);
    if (r > limit_)
        throw RangeError("primes up to sqrt(" + std::to_string(x) + ") = " + std::to_string(r)
                         + " need sieve limit at least " + std::to_string(r));
    const auto end = std::upper_bound(primes_.begin(), primes_.end(), r);
    return {primes_.begin(), end};
}

bool PrimeTable::is_prime(std::uint64_t v) const
{
    if (v > limit_)
        throw RangeError("membership test for " + std::to_string(v) + " exceeds sieve limit "
                         + std::to_string(limit_));
    if (v < 2)
        return false;
    if (v % 2 == 0)
        return v == 2;
    return test_bit(odd_bits_, v / 2);
}

std::uint64_t PrimeTable::twin_count(std::uint64_t x) const
{
    if (x > limit_ || limit_ - x < 2)
        throw RangeError("twin count up to " + std::to_string(x) + " needs sieve limit at least "
                         + std::to_string(x + 2));
    std::uint64_t count = 0;
    for (const auto p : primes_) {
        if (p > x)
            break;
        if (p >= 3 && is_prime(std::uint64_t{p} + 2))
            ++count;
    }
    return count;
}

}  // namespace primlab
