#include "primorial/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "primorial/errors.hpp"
#include "primorial/numeric.hpp"

namespace primlab {

namespace {

BigNat product64(std::span<const std::uint64_t> f)
{
    if (f.size() <= 16) {
        BigNat acc = 1;
        for (const auto v : f)
            acc *= static_cast<unsigned long>(v);
        return acc;
    }
    const auto mid = f.size() / 2;
    return product64(f.first(mid)) * product64(f.subspan(mid));
}

void check_k(int k)
{
    if (k != 1 && k != 2)
        throw DomainError("k must be 1 or 2, got " + std::to_string(k));
}

void require_cutoff(const PrimeTable& table, std::uint64_t cutoff)
{
    if (cutoff > table.limit())
        throw RangeError("product cutoff " + std::to_string(cutoff) + " exceeds sieve limit "
                         + std::to_string(table.limit()));
}

// Appends the distinct prime factors of v (by trial division over the sieve).
// Returns false if a cofactor larger than limit^2 remains.
bool factor_into(const PrimeTable& table, std::uint64_t v, std::vector<std::uint64_t>& out)
{
    for (const auto p : table.primes()) {
        if (std::uint64_t{p} * p > v)
            break;
        if (v % p == 0) {
            out.push_back(p);
            do
                v /= p;
            while (v % p == 0);
        }
    }
    if (v == 1)
        return true;
    const auto lim = table.limit();
    if (lim < (std::uint64_t{1} << 32) && v > lim * lim)
        return false;
    out.push_back(v);
    return true;
}

void drop_divisors_of(std::vector<std::uint64_t>& primes, long g)
{
    const auto ag = static_cast<std::uint64_t>(g < 0 ? -g : g);
    std::erase_if(primes, [ag](std::uint64_t p) { return ag % p == 0; });
}

void sort_unique(std::vector<std::uint64_t>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

double log_exclusion_product(const ExclusionSet& s, int k)
{
    CompensatedSum acc;
    for (const auto p : s.primes)
        if (p > static_cast<std::uint64_t>(k))
            acc += std::log1p(-static_cast<double>(k) / static_cast<double>(p));
    return acc.value();
}

// L_k from a known cutoff y (inside the sieve) and exclusion set.
ExactRatio exact_from_parts(const PrimeTable& table, std::uint64_t y, const ExclusionSet& s, int k)
{
    require_cutoff(table, y);
    const auto uk = static_cast<std::uint64_t>(k);
    std::vector<std::uint64_t> num;
    std::vector<std::uint64_t> den;
    for (const auto p : table.primes()) {
        if (p > y)
            break;
        if (p > uk && !s.contains(p)) {
            num.push_back(p - uk);
            den.push_back(p);
        }
    }
    for (const auto p : s.primes) {
        if (p > uk && p > y) {
            num.push_back(p);
            den.push_back(p - uk);
        }
    }
    return {product64(num), product64(den)};
}

double log_from_parts(const PrimeTable& table, std::uint64_t y, const ExclusionSet& s, int k)
{
    return log_mertens_product(table, y, k) - log_exclusion_product(s, k);
}

std::uint64_t checked_cutoff(const BigNat& x, double c)
{
    const auto y = power_cutoff(x, c);
    if (!y)
        throw RangeError("cutoff x^c is too large for an exact evaluation");
    if (*y < 2)
        throw DomainError("degenerate input: cutoff x^c = " + std::to_string(*y) + " is below 2");
    return *y;
}

// ln x below which realizing x exactly is cheap and the cutoff may lie in the sieve.
bool cutoff_may_fit(const PrimeTable& table, double log_y)
{
    return log_y < std::log(static_cast<double>(table.limit())) + 1.0;
}

}  // namespace

void HeuristicParams::validate() const
{
    check_k(k);
    if (!(c >= 0.5 && c <= 1.0))
        throw DomainError("c must lie in [1/2, 1], got " + format_real(c));
}

bool ExclusionSet::contains(std::uint64_t p) const
{
    return std::binary_search(primes.begin(), primes.end(), p);
}

mpq_class ExactRatio::canonical() const
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double log_mertens_product(const PrimeTable& table, std::uint64_t cutoff, int k)
{
    check_k(k);
    require_cutoff(table, cutoff);
    CompensatedSum acc;
    const double dk = k;
    for (const auto p : table.primes()) {
        if (p > cutoff)
            break;
        if (p > static_cast<std::uint32_t>(k))
            acc += std::log1p(-dk / p);
    }
    return acc.value();
}

double mertens_product(const PrimeTable& table, std::uint64_t cutoff, int k)
{
    return std::exp(log_mertens_product(table, cutoff, k));
}

mpq_class mertens_product_exact(const PrimeTable& table, std::uint64_t cutoff, int k)
{
    check_k(k);
    if (cutoff > 10'000)
        throw ResourceError("exact Mertens products are limited to cutoff <= 10^4");
    require_cutoff(table, cutoff);
    std::vector<std::uint64_t> num;
    std::vector<std::uint64_t> den;
    for (const auto p : table.primes()) {
        if (p > cutoff)
            break;
        if (p > static_cast<std::uint32_t>(k)) {
            num.push_back(p - k);
            den.push_back(p);
        }
    }
    mpq_class q(product64(num), product64(den));
    q.canonicalize();
    return q;
}

double log_mertens_asymptotic(double log_y, int k)
{
    check_k(k);
    const double g = static_cast<double>(kEulerGamma);
    if (k == 1)
        return -g - std::log(log_y);
    return std::log(4.0 * static_cast<double>(kTwinPrimeConstant)) - 2.0 * g - 2.0 * std::log(log_y);
}

ExclusionSet exclusion_set(const PrimeTable& table, const BigNat& x, long g)
{
    const BigNat ag = g < 0 ? -g : g;
    if (x <= ag)
        throw DomainError("exclusion set needs x > |g|");
    BigNat v = x - g;
    if (v < 0)
        v = -v;
    ExclusionSet out;
    bool resolved = false;
    for (const auto p : table.primes()) {
        if (v == 1) {
            resolved = true;
            break;
        }
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            out.primes.push_back(p);
            do
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            while (mpz_divisible_ui_p(v.get_mpz_t(), p));
        }
        // Nothing left below p^2: the cofactor is prime.
        if (v < BigNat(p) * p) {
            if (v > 1) {
                out.primes.push_back(v.get_ui());
                v = 1;
            }
            resolved = true;
            break;
        }
    }
    if (!resolved && v > 1) {
        const BigNat lim = table.limit();
        if (v > lim * lim)
            throw CapabilityError("cannot factor x - g: cofactor with " + std::to_string(mpz_sizeinbase(v.get_mpz_t(), 10))
                                  + " digits has no factor below the sieve limit");
        out.primes.push_back(v.get_ui());
    }
    sort_unique(out.primes);
    drop_divisors_of(out.primes, g);
    return out;
}

ExclusionSet exclusion_set(const PrimeTable& table, const UniversalPrimorial& u)
{
    u.validate();
    if (u.n > table.size())
        throw RangeError("exclusion set of p_" + std::to_string(u.n) + "# needs sieve limit at least "
                         + std::to_string(PrimeTable::nth_prime_upper_estimate(u.n)));
    ExclusionSet out;
    const auto first = table.primes().first(u.n);
    out.primes.assign(first.begin(), first.end());
    const std::uint64_t multiplier = u.N % 2 == 0 ? u.N / 2 : u.N;
    if (!factor_into(table, multiplier, out.primes))
        throw CapabilityError("cannot factor K = " + std::to_string(multiplier) + " over the sieve");
    sort_unique(out.primes);
    drop_divisors_of(out.primes, u.g);
    return out;
}

namespace {

// c as a/b with b <= 64 when it is one to double precision.
std::optional<std::pair<unsigned long, unsigned long>> small_fraction(double c)
{
    for (unsigned long b = 1; b <= 64; ++b) {
        const double a = std::round(c * static_cast<double>(b));
        if (std::fabs(a / static_cast<double>(b) - c) < 1e-15)
            return std::pair{static_cast<unsigned long>(a), b};
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> power_cutoff(const BigNat& x, double c)
{
    if (sgn(x) <= 0)
        throw DomainError("power cutoff needs x >= 1");
    constexpr unsigned kMaxBits = 62;
    if (c == 0.5) {
        BigNat r;
        mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
        if (mpz_sizeinbase(r.get_mpz_t(), 2) > kMaxBits)
            return std::nullopt;
        return r.get_ui();
    }
    if (c == 1.0) {
        if (mpz_sizeinbase(x.get_mpz_t(), 2) > kMaxBits)
            return std::nullopt;
        return x.get_ui();
    }
    const long double ly = static_cast<long double>(c) * log_big(x);
    if (ly > kMaxBits * std::numbers::ln2_v<long double>)
        return std::nullopt;
    auto y = static_cast<std::uint64_t>(std::floor(std::exp(ly)));
    if (const auto frac = small_fraction(c)) {
        // c = a/b: y <= x^c  <=>  y^b <= x^a, decided exactly.
        const auto [a, b] = *frac;
        BigNat xa;
        mpz_pow_ui(xa.get_mpz_t(), x.get_mpz_t(), a);
        auto fits = [&xa, b](std::uint64_t v) {
            BigNat vb;
            mpz_ui_pow_ui(vb.get_mpz_t(), v, b);
            return vb <= xa;
        };
        while (fits(y + 1))
            ++y;
        while (y > 1 && !fits(y))
            --y;
        return y;
    }
    while (std::log(static_cast<long double>(y + 1)) <= ly)
        ++y;
    while (y > 1 && std::log(static_cast<long double>(y)) > ly)
        --y;
    return y;
}

double lk(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params)
{
    params.validate();
    if (params.domain == EvalDomain::exact_rational)
        return lk_exact(table, u, params).to_double();

    const double log_x = log_realized(table, u);
    const double log_y = params.c * log_x;
    const ExclusionSet s = exclusion_set(table, u);
    if (cutoff_may_fit(table, log_y)) {
        const std::uint64_t y = checked_cutoff(realize(table, u), params.c);
        if (y <= table.limit())
            return std::exp(log_from_parts(table, y, s, params.k));
    }
    return std::exp(log_mertens_asymptotic(log_y, params.k) - log_exclusion_product(s, params.k));
}

double lk(const PrimeTable& table, std::size_t n, const HeuristicParams& params)
{
    return lk(table, UniversalPrimorial::plain(n, +1), params);
}

ExactRatio lk_exact(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params)
{
    params.validate();
    const double log_y = params.c * log_realized(table, u);
    if (!cutoff_may_fit(table, log_y))
        throw RangeError("exact evaluation needs x^c inside the sieve (ln x^c = " + format_real(log_y) + ")");
    const std::uint64_t y = checked_cutoff(realize(table, u), params.c);
    return exact_from_parts(table, y, exclusion_set(table, u), params.k);
}

double lk_general(const PrimeTable& table, const BigNat& x, long g, const HeuristicParams& params)
{
    params.validate();
    if (params.domain == EvalDomain::exact_rational)
        return lk_general_exact(table, x, g, params).to_double();
    const std::uint64_t y = checked_cutoff(x, params.c);
    require_cutoff(table, y);
    return std::exp(log_from_parts(table, y, exclusion_set(table, x, g), params.k));
}

ExactRatio lk_general_exact(const PrimeTable& table, const BigNat& x, long g, const HeuristicParams& params)
{
    params.validate();
    const std::uint64_t y = checked_cutoff(x, params.c);
    return exact_from_parts(table, y, exclusion_set(table, x, g), params.k);
}

double lk_asymptotic(const PrimeTable& table, const UniversalPrimorial& u, const HeuristicParams& params)
{
    params.validate();
    if (u.n < 2)
        throw DomainError("the asymptotic form needs n > 1");
    const double log_x = log_realized(table, u);
    const double log_pn = std::log(static_cast<double>(table.nth_prime(u.n)));
    double theta = 1.0 / params.c;
    if (params.k == 2) {
        const double log_y = params.c * log_x;
        std::optional<std::uint64_t> y;
        if (cutoff_may_fit(table, log_y))
            y = power_cutoff(realize(table, u), params.c);
        if (y && *y <= table.limit()) {
            theta = theta_k(table, params, *y, u.n).value;
        } else {
            const double pi2_pn = twin_prime_constant(table, table.nth_prime(u.n));
            theta = static_cast<double>(kTwinPrimeConstant) / pi2_pn / (params.c * params.c);
        }
    }
    return theta * std::pow(log_pn / log_x, params.k);
}

ThetaK theta_k(const PrimeTable& table, const HeuristicParams& params, std::uint64_t x_cutoff, std::size_t n)
{
    params.validate();
    if (n < 2)
        throw DomainError("theta_k needs n > 1");
    ThetaK out{params.k, params.c, x_cutoff, n, 1.0 / params.c};
    if (params.k == 2) {
        const double ratio = twin_prime_constant(table, x_cutoff) / twin_prime_constant(table, table.nth_prime(n));
        out.value = ratio / (params.c * params.c);
    }
    return out;
}

double twin_prime_constant(const PrimeTable& table, std::uint64_t cutoff)
{
    require_cutoff(table, cutoff);
    CompensatedSum acc;
    for (const auto p : table.primes()) {
        if (p > cutoff)
            break;
        if (p > 2) {
            const double q = static_cast<double>(p) - 1.0;
            acc += std::log1p(-1.0 / (q * q));
        }
    }
    return std::exp(acc.value());
}

double alpha(const PrimeTable& table, double x_log, int k, std::size_t n)
{
    check_k(k);
    if (!(x_log > 0.0))
        throw DomainError("alpha needs ln x > 0");
    return std::pow(table.theta_of_index(n) / x_log, k);
}

OmegaValue omega_sum(const PrimeTable& table, std::size_t N)
{
    if (N == 0)
        throw DomainError("omega_sum needs N >= 1");
    if (N > table.size())
        throw RangeError("omega_sum(" + std::to_string(N) + ") needs sieve limit at least "
                         + std::to_string(PrimeTable::nth_prime_upper_estimate(N)));
    CompensatedSum acc;
    for (const auto p : table.primes().first(N)) {
        const double t = std::log(static_cast<double>(p)) / p;
        acc += t * t;
    }
    return {N, acc.value()};
}

OmegaBounds omega_elementary_bounds(const PrimeTable& table)
{
    constexpr int kHead = 17;
    constexpr double kPiLowerCoeff = 0.796775;
    OmegaBounds b;
    b.partial = omega_sum(table, kHead).value;
    // zeta(2) minus its first 17 terms, summed smallest-first in long double.
    long double head = 0.0L;
    for (int n = kHead; n >= 1; --n)
        head += 1.0L / (static_cast<long double>(n) * n);
    const long double zeta2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
    b.tail = static_cast<double>(zeta2 - head);
    b.lower = b.partial + b.tail;
    b.upper = b.partial + b.tail / (kPiLowerCoeff * kPiLowerCoeff);
    return b;
}

}  // namespace primlab
