#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "primorial/prime_table.hpp"

namespace primlab {

/// Arbitrary-precision natural number.
using BigNat = mpz_class;

inline constexpr std::size_t kDefaultPrimorialMax = 20'000;

/// p_n# together with its index and ln(p_n#) = theta(p_n).
struct Primorial {
    std::size_t n = 0;
    BigNat value{1};
    double log_value = 0.0;
};

/// K*p_n# + g with K = N/2. The parity rule ties g to N:
/// even N uses g = +-1, odd N uses g in {2, 4}. Either way the value is odd.
struct UniversalPrimorial {
    std::uint64_t N = 2;
    std::size_t n = 1;
    int g = 1;

    /// Throws DomainError("g incompatible with N parity") or for N == 0 / n == 0.
    void validate() const;

    /// p_n# - 1 or p_n# + 1 (N = 2).
    static UniversalPrimorial plain(std::size_t n, int sign);

    friend bool operator==(const UniversalPrimorial&, const UniversalPrimorial&) = default;
};

/// Balanced product tree over `factors`; empty input yields 1.
BigNat product_tree(std::span<const std::uint32_t> factors);

/// p_n# via product tree. primorial(0) is the empty product 1.
/// ResourceError when n exceeds `max_n`; RangeError when the table is too short.
Primorial primorial(const PrimeTable& table, std::size_t n, std::size_t max_n = kDefaultPrimorialMax);

/// Exact value of a universal primorial; odd N is formed as N * (p_n#/2).
BigNat realize(const PrimeTable& table, const UniversalPrimorial& u);

/// ln(K*p_n# + g) computed without big-integer work:
/// theta(p_n) + ln K + log1p(g / (K p_n#)).
double log_realized(const PrimeTable& table, const UniversalPrimorial& u);

/// theta(p_n) straight from the sieve prefix sums.
double log_primorial(const PrimeTable& table, std::size_t n);

/// Natural log of a positive big integer, accurate for any size.
double log_big(const BigNat& x);

/// Converts a (possibly huge) ratio num/den to double without overflow.
double ratio_to_double(const BigNat& num, const BigNat& den);

/// Decimal digits.
std::string to_decimal(const BigNat& x);

}  // namespace primlab
