#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace primlab {

/// pi(x) and theta(x) at a single point.
struct PrimeStats {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    double theta = 0.0;  // sum of ln p over p <= x
};

/// Primes up to a fixed limit together with cumulative theta sums.
///
/// Immutable after sieve_up_to(). Prime indices are 1-based (nth_prime(1) == 2).
class PrimeTable {
public:
    static constexpr std::uint64_t kDefaultCeiling = 200'000'000;

    /// Odd-only Eratosthenes sieve over [2, limit].
    /// Throws DomainError for limit < 2 and ResourceError above `ceiling`.
    static PrimeTable sieve_up_to(std::uint64_t limit, std::uint64_t ceiling = kDefaultCeiling);

    [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
    [[nodiscard]] std::size_t size() const noexcept { return primes_.size(); }
    [[nodiscard]] std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// p_n, 1-indexed. RangeError names the sieve limit needed.
    [[nodiscard]] std::uint64_t nth_prime(std::size_t n) const;

    /// Exact pi(x) and theta(x); x must not exceed limit().
    [[nodiscard]] PrimeStats stats_at(std::uint64_t x) const;
    [[nodiscard]] std::size_t pi(std::uint64_t x) const;
    [[nodiscard]] double theta(std::uint64_t x) const;

    /// theta(p_n) = ln(p_n#), the sum of the first n logarithms (theta_of_index(0) == 0).
    [[nodiscard]] double theta_of_index(std::size_t n) const;

    /// {p : p*p <= x}, decided with integer arithmetic only.
    [[nodiscard]] std::vector<std::uint32_t> primes_below_sqrt(std::uint64_t x) const;

    /// Number of p <= x with p + 2 also prime. Requires x + 2 <= limit().
    [[nodiscard]] std::uint64_t twin_count(std::uint64_t x) const;

    /// Membership test for v <= limit().
    [[nodiscard]] bool is_prime(std::uint64_t v) const;

    /// Rough upper estimate of p_n, used in error messages and to size sieves.
    [[nodiscard]] static std::uint64_t nth_prime_upper_estimate(std::size_t n) noexcept;

private:
    PrimeTable() = default;

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> odd_bits_;  // bit i set <=> 2i+1 is prime
    std::vector<std::uint32_t> primes_;
    std::vector<double> theta_prefix_;  // theta_prefix_[i] = ln(p_1 ... p_{i+1})
};

}  // namespace primlab
