#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "primorial/bignum.hpp"

namespace primlab {

enum class Classification { prime, composite, probable_prime };
enum class Method { trial_division, deterministic_mr, bpsw };

/// What the witness field of a verdict holds.
enum class WitnessKind {
    none,             // prime / probable prime
    below_two,        // 0 and 1: composite by convention, no witness exists
    factor,           // a nontrivial divisor
    base,             // a strong-pseudoprime base that fails
    lucas_parameter,  // |D| of the Selfridge parameters for a failed strong Lucas test
};

struct PrimalityVerdict {
    Classification classification = Classification::composite;
    Method method = Method::trial_division;
    WitnessKind witness_kind = WitnessKind::none;
    std::optional<std::uint64_t> witness;
    std::uint64_t elapsed_ms = 0;

    /// prime or probable_prime.
    [[nodiscard]] bool passes() const noexcept { return classification != Classification::composite; }
};

/// Inputs below this are settled by trial division.
inline constexpr std::uint64_t kTrialDivisionCeiling = 10'000'000;

/// Miller-Rabin with the first 13 prime bases (2..41) is deterministic below
/// psi_13 = 3317044064679887385961981 (Sorenson-Webster).
inline constexpr std::string_view kDeterministicMrCeiling = "3317044064679887385961981";

/// Tiered test: trial division below 10^7, deterministic Miller-Rabin below
/// psi_13, Baillie-PSW (strong base 2 + strong Lucas, Selfridge parameters)
/// above. Deterministic for a given input.
PrimalityVerdict is_prime(const BigNat& x);

/// Strong Fermat test to `base`. n must be odd and > 2.
bool strong_probable_prime(const BigNat& n, unsigned long base);

/// Strong Lucas test with Selfridge's method A parameters (P = 1, Q = (1-D)/4).
/// n must be odd, > 2 and not a perfect square. On failure `d_out` receives |D|.
bool strong_lucas_probable_prime(const BigNat& n, std::uint64_t* d_out = nullptr);

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(Method m) noexcept;
std::optional<Classification> parse_classification(std::string_view s) noexcept;

}  // namespace primlab
