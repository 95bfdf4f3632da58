#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace primlab {

// Euler-Mascheroni constant, 40 significant digits.
inline constexpr long double kEulerGamma = 0.5772156649015328606065120900824024310422L;

// Hardy-Littlewood twin prime constant prod_{p>2} p(p-2)/(p-1)^2 (Wrench's digits).
inline constexpr long double kTwinPrimeConstant = 0.6601618158468695739278121100145557784326L;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double v) noexcept
    {
        add(v);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// floor(sqrt(x)) by Newton iteration on integers; no floating point involved.
constexpr std::uint64_t isqrt(std::uint64_t x) noexcept
{
    if (x < 2)
        return x;
    // Initial guess 2^ceil(bits/2) is >= sqrt(x); the iteration then decreases monotonically.
    std::uint64_t r = std::uint64_t{1} << ((std::bit_width(x) + 1) / 2);
    while (true) {
        const std::uint64_t next = (r + x / r) / 2;
        if (next >= r)
            return r;
        r = next;
    }
}

/// Formats a real with `digits` significant digits ("%.*g").
std::string format_real(double v, int digits = 9);

}  // namespace primlab
