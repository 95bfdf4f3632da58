#pragma once

#include <array>
#include <cmath>
#include <span>
#include <cstdint>
#include <numbers>

#include "primorial/bignum.hpp"
#include "primorial/prime_table.hpp"
#include "primorial/report.hpp"

namespace primlab {

/// Evaluation point carried as ln x, so points like 8*10^989079 are in range.
class LogPoint {
public:
    static LogPoint from_natural(std::uint64_t x);
    static LogPoint from_big(const BigNat& x);
    /// mantissa * 10^exp10, e.g. (8, 989079).
    static LogPoint from_scientific(double mantissa, std::int64_t exp10);
    static LogPoint from_log(double log_x);

    [[nodiscard]] double log_x() const noexcept { return log_x_; }

private:
    explicit LogPoint(double log_x) : log_x_(log_x) {}
    double log_x_;
};

/// Constants of the Trudgian theta bound and the Dusart pi(x) envelope.
struct BoundConstants {
    double trudgian_coeff = std::sqrt(8.0 / (17.0 * std::numbers::pi));
    double trudgian_scale = 6.455;
    std::array<double, 4> dusart_terms{1.0, 1.0, 2.0, 7.59};
};

inline const BoundConstants kBounds{};

/// (1 + max eps0)^-1, the value the lambda bounds use.
inline constexpr double kEpsilonMaxFactor = 0.8576;

/// Trudgian: |theta(x) - x| < x eps0(x) for x >= 149, with
/// eps0 = sqrt(8/(17 pi)) X^(1/2) e^-X and X = sqrt(ln x / 6.455).
/// DomainError below x = 149.
double epsilon0(LogPoint pt);
/// ln eps0, finite even where eps0 underflows a double.
double log_epsilon0(LogPoint pt);
/// eps0 without the validity floor; used to locate its maximum.
double epsilon0_unchecked(double log_x);

/// 1 + 1/L + 2/L^2 + 7.59/L^3 with L = ln x.
double rho(LogPoint pt);

/// |(1 - eps0)/rho - 1|, valid for x >= 599.
double phi(LogPoint pt);

struct LambdaPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// lambda_1 = (1 - 1/ln^2 x) / (1 + 1/(2 ln^2 z)),
/// lambda_2 = (1 + 1/(2 ln^2 x)) / (1 - 1/ln^2 z),
/// with z = 0.8576 * alpha(x,1;p_n) * ln x = 0.8576 * theta(p_n).
/// DomainError unless z > e.
LambdaPair lambda_bounds(LogPoint pt, double log_primorial);

/// Multipliers of theta_k alpha (ln p_n/theta(p_n))^k that bracket L_k:
/// lower (1 - 1/ln^2 x)/(1 + 1/(2 ln^2 p_n)), upper (1 + 1/(2 ln^2 x))/(1 - 1/ln^2 p_n).
double sandwich_lower_factor(double log_x, double log_pn);
double sandwich_upper_factor(double log_x, double log_pn);

/// |theta(x)/(pi(x) ln x) - 1| < 0.30543 at every integer x in [x_lo, x_hi].
CheckReport check_lemma_t2(const PrimeTable& table, std::uint64_t x_lo, std::uint64_t x_hi);

/// x/ln x (1 + 1/ln x) < pi(x) < x/ln x * rho(x) at a single x >= 599.
CheckReport check_dusart_pi(const PrimeTable& table, std::uint64_t x);

/// Dusart envelopes at `samples` points drawn uniformly from [599, limit] (fixed seed).
CheckReport check_dusart_pi_sampled(const PrimeTable& table, std::size_t samples, std::uint64_t seed = 20240101);

/// |theta(x) - x| < x eps0(x) at every integer x in [x_lo, x_hi], x_lo >= 149.
CheckReport check_trudgian(const PrimeTable& table, std::uint64_t x_lo, std::uint64_t x_hi);

/// 1/((1+phi(p_n)) n) < ln p_n / theta(p_n) < 1/((1-phi(p_n)) n) for every sieved p_n >= 599.
CheckReport check_int1(const PrimeTable& table);

/// Mertens product bands: Dusart's 1 +- 1/(5 ln^3 x) for x >= 2278382 and
/// Axler's sharper pair for x > 46909038, at every listed point inside the sieve.
CheckReport check_mertens_bands(const PrimeTable& table, std::span<const std::uint64_t> points);

/// Recomputes the named constants derived from eps0, rho and phi (see README)
/// and reports n-scaling constants next to a recomputation.
CheckReport reproduce_section_constants(const PrimeTable& table);

/// Dusart and Axler relative half-widths of the Mertens band at ln x.
double dusart_mertens_halfwidth(double log_x);
double axler_mertens_lower_halfwidth(double log_x);
double axler_mertens_upper_halfwidth(double log_x);

}  // namespace primlab
