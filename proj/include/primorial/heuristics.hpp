#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "primorial/bignum.hpp"
#include "primorial/prime_table.hpp"

namespace primlab {

enum class EvalDomain { exact_rational, log_domain };

/// k = 1 asks for "one of the pair is prime", k = 2 for "both are prime".
/// The cutoff exponent c ranges over [1/2, 1]; 1/2 is the customary choice.
struct HeuristicParams {
    int k = 1;
    double c = 0.5;
    EvalDomain domain = EvalDomain::log_domain;

    /// DomainError unless k in {1,2} and 1/2 <= c <= 1.
    void validate() const;
};

/// Primes dividing x - g but not g.
struct ExclusionSet {
    std::vector<std::uint64_t> primes;  // sorted, distinct

    [[nodiscard]] bool contains(std::uint64_t p) const;
};

struct ThetaK {
    int k = 1;
    double c = 0.5;
    std::uint64_t x_cutoff = 0;
    std::size_t n = 0;
    double value = 0.0;
};

struct OmegaValue {
    std::size_t N = 0;
    double value = 0.0;
};

struct OmegaBounds {
    double partial = 0.0;  // sum over the first 17 primes (p <= 59)
    double tail = 0.0;     // sum_{n > 17} 1/n^2
    double lower = 0.0;
    double upper = 0.0;
};

/// Unreduced fraction.
struct ExactRatio {
    BigNat num{1};
    BigNat den{1};

    [[nodiscard]] double to_double() const { return ratio_to_double(num, den); }
    [[nodiscard]] mpq_class canonical() const;
};

/// sum_{p <= cutoff, p > k} ln((p - k)/p), compensated.
double log_mertens_product(const PrimeTable& table, std::uint64_t cutoff, int k);

/// prod_{p <= cutoff, p > k} (p - k)/p in floating point.
double mertens_product(const PrimeTable& table, std::uint64_t cutoff, int k);

/// Same product as an exact rational; only for cutoff <= 10^4.
mpq_class mertens_product_exact(const PrimeTable& table, std::uint64_t cutoff, int k);

/// Large-cutoff form of ln prod_{p <= y, p > k} (p-k)/p given ln y:
/// k = 1: -gamma - ln ln y;  k = 2: ln(4 Pi_2) - 2 gamma - 2 ln ln y.
double log_mertens_asymptotic(double log_y, int k);

/// Exclusion set of an arbitrary x with offset g, found by factoring |x - g|
/// over the sieve. CapabilityError if a cofactor cannot be resolved.
ExclusionSet exclusion_set(const PrimeTable& table, const BigNat& x, long g);

/// Exclusion set of a universal primorial, derived from its structure:
/// {p <= p_n} together with the primes of K, minus the divisors of g.
ExclusionSet exclusion_set(const PrimeTable& table, const UniversalPrimorial& u);

/// floor(x^c). Exact for c = 1/2 and c = 1; otherwise the floating estimate is
/// corrected at the integer boundary. nullopt when the result exceeds 2^62.
std::optional<std::uint64_t> power_cutoff(const BigNat& x, double c);

/// Heuristic primality probability of a universal primorial:
///   L_k = prod_{p <= x^c, p > k} (p-k)/p  /  prod_{p in S, p > k} (p-k)/p.
/// The k-guard applies to both products. In the log domain a cutoff beyond the sieve falls back to
/// log_mertens_asymptotic(); the exact domain needs the cutoff inside the sieve.
double lk(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params);

/// lk for p_n# + 1.
double lk(const PrimeTable& table, std::size_t n, const HeuristicParams& params);

ExactRatio lk_exact(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params);

/// lk for an arbitrary odd x with offset g; the exclusion set comes from factoring.
double lk_general(const PrimeTable& table, const BigNat& x, long g, const HeuristicParams& params);
ExactRatio lk_general_exact(const PrimeTable& table, const BigNat& x, long g, const HeuristicParams& params);

/// Closed form theta_k * (ln p_n / ln x)^k that L_k approaches for large p_n.
double lk_asymptotic(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params);

/// theta_1 = 1/c; theta_2 = c^-2 * Pi_2(x_cutoff) / Pi_2(p_n).
ThetaK theta_k(const PrimeTable& table, const HeuristicParams& params, std::uint64_t x_cutoff, std::size_t n);

/// prod_{2 < p <= cutoff} p(p-2)/(p-1)^2.
double twin_prime_constant(const PrimeTable& table, std::uint64_t cutoff);

/// (theta(p_n) / ln x)^k.
double alpha(const PrimeTable& table, double x_log, int k, std::size_t n);

/// sum_{i <= N} (ln p_i / p_i)^2.
OmegaValue omega_sum(const PrimeTable& table, std::size_t N);

/// Elementary bracket on the limit of omega_sum using
/// 0.796775 ln x / x < 1/pi(x) < ln x / x for x >= 17.
OmegaBounds omega_elementary_bounds(const PrimeTable& table);

}  // namespace primlab
