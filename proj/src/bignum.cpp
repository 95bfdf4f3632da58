#include "primorial/bignum.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "primorial/errors.hpp"

namespace primlab {

void UniversalPrimorial::validate() const
{
    if (N == 0)
        throw DomainError("universal primorial needs N >= 1");
    if (n == 0)
        throw DomainError("universal primorial needs n >= 1");
    const bool even = N % 2 == 0;
    const bool ok = even ? (g == 1 || g == -1) : (g == 2 || g == 4);
    if (!ok)
        throw DomainError("g incompatible with N parity (N=" + std::to_string(N) + ", g=" + std::to_string(g)
                          + ")");
}

UniversalPrimorial UniversalPrimorial::plain(std::size_t n, int sign)
{
    return {2, n, sign < 0 ? -1 : 1};
}

namespace {

BigNat product_range(std::span<const std::uint32_t> f)
{
    if (f.size() <= 16) {
        BigNat acc = 1;
        for (const auto v : f)
            acc *= static_cast<unsigned long>(v);
        return acc;
    }
    const auto mid = f.size() / 2;
    return product_range(f.first(mid)) * product_range(f.subspan(mid));
}

}  // namespace

BigNat product_tree(std::span<const std::uint32_t> factors)
{
    return product_range(factors);
}

Primorial primorial(const PrimeTable& table, std::size_t n, std::size_t max_n)
{
    if (n > max_n)
        throw ResourceError("primorial index " + std::to_string(n) + " exceeds the configured maximum "
                            + std::to_string(max_n));
    if (n > table.size())
        throw RangeError("p_" + std::to_string(n) + "# needs sieve limit at least "
                         + std::to_string(PrimeTable::nth_prime_upper_estimate(n)));
    Primorial out;
    out.n = n;
    out.value = product_tree(table.primes().first(n));
    out.log_value = table.theta_of_index(n);
    return out;
}

BigNat realize(const PrimeTable& table, const UniversalPrimorial& u)
{
    u.validate();
    const BigNat p = primorial(table, u.n).value;
    BigNat base;
    if (u.N % 2 == 0)
        base = p * static_cast<unsigned long>(u.N / 2);
    else
        base = (p / 2) * static_cast<unsigned long>(u.N);
    if (u.g >= 0)
        return base + static_cast<unsigned long>(u.g);
    return base - static_cast<unsigned long>(-u.g);
}

double log_primorial(const PrimeTable& table, std::size_t n)
{
    return table.theta_of_index(n);
}

double log_realized(const PrimeTable& table, const UniversalPrimorial& u)
{
    u.validate();
    const double log_p = table.theta_of_index(u.n);
    const double log_k = std::log(static_cast<double>(u.N)) - std::numbers::ln2;
    const double log_base = log_p + log_k;
    // g/(K p_n#) underflows harmlessly to 0 for large n.
    const double rel = static_cast<double>(u.g) * std::exp(-log_base);
    return log_base + std::log1p(rel);
}

double log_big(const BigNat& x)
{
    if (sgn(x) <= 0)
        throw DomainError("logarithm of a non-positive integer");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

double ratio_to_double(const BigNat& num, const BigNat& den)
{
    long e_num = 0;
    long e_den = 0;
    const double m_num = mpz_get_d_2exp(&e_num, num.get_mpz_t());
    const double m_den = mpz_get_d_2exp(&e_den, den.get_mpz_t());
    return std::ldexp(m_num / m_den, static_cast<int>(e_num - e_den));
}

std::string to_decimal(const BigNat& x)
{
    return x.get_str(10);
}

}  // namespace primlab
