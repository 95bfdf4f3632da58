#include "primorial/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "primorial/errors.hpp"
#include "primorial/heuristics.hpp"
#include "primorial/numeric.hpp"

namespace primlab {

namespace {

constexpr double kLemmaT2Bound = 0.30543;
constexpr std::size_t kMaxListedViolations = 20;

const double kLog149 = std::log(149.0);
const double kLog599 = std::log(599.0);

std::string u64(std::uint64_t v)
{
    return std::to_string(v);
}

void require_in_sieve(const PrimeTable& table, std::uint64_t hi)
{
    if (hi > table.limit())
        throw RangeError("check range end " + u64(hi) + " exceeds sieve limit " + u64(table.limit()));
}

// Records a violation (capped) and keeps the running maximum residual.
struct SweepTracker {
    CheckReport& report;
    std::uint64_t worst_point = 0;
    double worst_value = -std::numeric_limits<double>::infinity();
    double worst_bound = 0.0;
    std::uint64_t evaluated = 0;
    std::uint64_t violations = 0;

    void observe(std::uint64_t x, double value, double residual, double bound, bool ok)
    {
        ++evaluated;
        if (residual > report.max_residual || evaluated == 1)
            report.max_residual = std::max(report.max_residual, residual);
        if (residual >= worst_value) {
            worst_value = residual;
            worst_point = x;
            worst_bound = bound;
        }
        if (!ok) {
            ++violations;
            if (violations <= kMaxListedViolations)
                report.add({"x=" + u64(x), value, bound, false, true, "violation"});
        }
    }

    void close(const std::string& what)
    {
        report.add({"x=" + u64(worst_point), worst_value, worst_bound, violations == 0, true, "worst case"});
        report.note(what + ": " + u64(evaluated) + " points evaluated, " + u64(violations) + " violations");
        report.finalize();
    }
};

double ln_inv_sq(double l)
{
    return 1.0 / (l * l);
}

}  // namespace

LogPoint LogPoint::from_natural(std::uint64_t x)
{
    if (x < 2)
        throw DomainError("evaluation point must be at least 2");
    return LogPoint(std::log(static_cast<double>(x)));
}

LogPoint LogPoint::from_big(const BigNat& x)
{
    if (x < 2)
        throw DomainError("evaluation point must be at least 2");
    return LogPoint(log_big(x));
}

LogPoint LogPoint::from_scientific(double mantissa, std::int64_t exp10)
{
    if (!(mantissa > 0.0))
        throw DomainError("mantissa must be positive");
    const double l = std::log(mantissa) + static_cast<double>(exp10) * std::numbers::ln10;
    return from_log(l);
}

LogPoint LogPoint::from_log(double log_x)
{
    if (!(log_x > 0.0) || !std::isfinite(log_x))
        throw DomainError("ln x must be positive and finite");
    return LogPoint(log_x);
}

double epsilon0_unchecked(double log_x)
{
    const double X = std::sqrt(log_x / kBounds.trudgian_scale);
    return std::exp(std::log(kBounds.trudgian_coeff) + 0.5 * std::log(X) - X);
}

double log_epsilon0(LogPoint pt)
{
    if (pt.log_x() < kLog149)
        throw DomainError("eps0 is only valid for x >= 149");
    const double X = std::sqrt(pt.log_x() / kBounds.trudgian_scale);
    return std::log(kBounds.trudgian_coeff) + 0.5 * std::log(X) - X;
}

double epsilon0(LogPoint pt)
{
    return std::exp(log_epsilon0(pt));
}

double rho(LogPoint pt)
{
    const double inv = 1.0 / pt.log_x();
    const auto& t = kBounds.dusart_terms;
    return t[0] + inv * (t[1] + inv * (t[2] + inv * t[3]));
}

double phi(LogPoint pt)
{
    if (pt.log_x() < kLog599)
        throw DomainError("phi is only valid for x >= 599");
    const double e = epsilon0(pt);
    const double r = rho(pt);
    // |(1-e)/r - 1| = (r - 1 + e)/r
    return (r - 1.0 + e) / r;
}

LambdaPair lambda_bounds(LogPoint pt, double log_primorial)
{
    const double z = kEpsilonMaxFactor * log_primorial;
    if (!(z > std::numbers::e))
        throw DomainError("lambda bounds need 0.8576 * theta(p_n) > e, got " + format_real(z));
    const double lz = std::log(z);
    const double lx = pt.log_x();
    LambdaPair out;
    out.lambda1 = (1.0 - ln_inv_sq(lx)) / (1.0 + 0.5 * ln_inv_sq(lz));
    out.lambda2 = (1.0 + 0.5 * ln_inv_sq(lx)) / (1.0 - ln_inv_sq(lz));
    return out;
}

double sandwich_lower_factor(double log_x, double log_pn)
{
    return (1.0 - ln_inv_sq(log_x)) / (1.0 + 0.5 * ln_inv_sq(log_pn));
}

double sandwich_upper_factor(double log_x, double log_pn)
{
    return (1.0 + 0.5 * ln_inv_sq(log_x)) / (1.0 - ln_inv_sq(log_pn));
}

double dusart_mertens_halfwidth(double log_x)
{
    return 1.0 / (5.0 * log_x * log_x * log_x);
}

double axler_mertens_lower_halfwidth(double log_x)
{
    const double l3 = log_x * log_x * log_x;
    return 1.0 / (20.0 * l3) + 3.0 / (16.0 * l3 * log_x);
}

double axler_mertens_upper_halfwidth(double log_x)
{
    const double tail = log_x < 700.0 ? 1.02 / (std::expm1(log_x) * log_x) : 0.0;
    return axler_mertens_lower_halfwidth(log_x) + tail;
}

CheckReport check_lemma_t2(const PrimeTable& table, std::uint64_t x_lo, std::uint64_t x_hi)
{
    if (x_lo < 599)
        throw DomainError("the pi/theta deviation bound is stated for x >= 599");
    if (x_lo > x_hi)
        throw DomainError("empty range");
    require_in_sieve(table, x_hi);

    CheckReport r;
    r.check_name = "pi-theta deviation |H(x)-1| < 0.30543";
    SweepTracker track{r};
    std::size_t pi = table.pi(x_lo);
    const auto primes = table.primes();
    for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
        if (x > x_lo && pi < primes.size() && primes[pi] == x)
            ++pi;
        const double h = table.theta_of_index(pi) / (static_cast<double>(pi) * std::log(static_cast<double>(x)));
        const double dev = std::fabs(h - 1.0);
        track.observe(x, dev, dev, kLemmaT2Bound, dev < kLemmaT2Bound);
    }
    track.close("integers in [" + u64(x_lo) + ", " + u64(x_hi) + "]");
    return r;
}

CheckReport check_dusart_pi(const PrimeTable& table, std::uint64_t x)
{
    if (x < 599)
        throw DomainError("the lower pi(x) envelope is stated for x >= 599");
    require_in_sieve(table, x);
    CheckReport r;
    r.check_name = "pi(x) envelopes";
    const double l = std::log(static_cast<double>(x));
    const double base = static_cast<double>(x) / l;
    const double lower = base * (1.0 + 1.0 / l);
    const double upper = base * rho(LogPoint::from_log(l));
    const auto pi = static_cast<double>(table.pi(x));
    r.add({"x=" + u64(x) + " lower", pi, lower, lower < pi, true, "pi(x) > bound"});
    r.add({"x=" + u64(x) + " upper", pi, upper, pi < upper, true, "pi(x) < bound"});
    r.max_residual = std::max(lower / pi, pi / upper);
    r.finalize();
    return r;
}

CheckReport check_dusart_pi_sampled(const PrimeTable& table, std::size_t samples, std::uint64_t seed)
{
    if (table.limit() < 599)
        throw RangeError("pi(x) envelopes need a sieve reaching 599");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(599, table.limit());
    std::vector<std::uint64_t> xs{599, table.limit()};
    while (xs.size() < samples)
        xs.push_back(dist(rng));

    CheckReport r;
    r.check_name = "pi(x) envelopes (sampled)";
    SweepTracker track{r};
    for (const auto x : xs) {
        const auto single = check_dusart_pi(table, x);
        track.observe(x, single.max_residual, single.max_residual, 1.0, single.passed);
    }
    track.close(u64(xs.size()) + " sampled x in [599, " + u64(table.limit()) + "], seed " + u64(seed));
    return r;
}

CheckReport check_trudgian(const PrimeTable& table, std::uint64_t x_lo, std::uint64_t x_hi)
{
    if (x_lo < 149)
        throw DomainError("the theta(x) bound is stated for x >= 149");
    if (x_lo > x_hi)
        throw DomainError("empty range");
    require_in_sieve(table, x_hi);

    CheckReport r;
    r.check_name = "theta(x) bound |theta(x)-x| < x eps0(x)";
    SweepTracker track{r};
    std::size_t pi = table.pi(x_lo);
    const auto primes = table.primes();
    for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
        if (x > x_lo && pi < primes.size() && primes[pi] == x)
            ++pi;
        const double dx = static_cast<double>(x);
        const double gap = std::fabs(table.theta_of_index(pi) - dx);
        const double bound = dx * epsilon0(LogPoint::from_log(std::log(dx)));
        track.observe(x, gap, gap / bound, bound, gap < bound);
    }
    track.close("integers in [" + u64(x_lo) + ", " + u64(x_hi) + "]");
    return r;
}

CheckReport check_int1(const PrimeTable& table)
{
    CheckReport r;
    r.check_name = "ln p_n / theta(p_n) sandwich 1/((1+phi)n) .. 1/((1-phi)n)";
    SweepTracker track{r};
    const auto primes = table.primes();
    for (std::size_t i = table.pi(598); i < primes.size(); ++i) {
        const std::size_t n = i + 1;
        const double lp = std::log(static_cast<double>(primes[i]));
        const double f = lp / table.theta_of_index(n);
        const double ph = phi(LogPoint::from_log(lp));
        const double dn = static_cast<double>(n);
        const double lower = 1.0 / ((1.0 + ph) * dn);
        const double upper = 1.0 / ((1.0 - ph) * dn);
        // Residual: deviation of 1/(n f) from 1 in units of phi; < 1 inside the band.
        const double residual = std::fabs(1.0 / (dn * f) - 1.0) / ph;
        track.observe(primes[i], f, residual, upper, lower < f && f < upper);
    }
    track.close("sieved primes p_n in [599, " + u64(table.limit()) + "]");
    return r;
}

CheckReport check_mertens_bands(const PrimeTable& table, std::span<const std::uint64_t> points)
{
    constexpr std::uint64_t kDusartFrom = 2'278'382;
    constexpr std::uint64_t kAxlerAbove = 46'909'038;
    CheckReport r;
    r.check_name = "Mertens product bands";
    const double eg = std::exp(static_cast<double>(kEulerGamma));
    for (const auto x : points) {
        if (x > table.limit()) {
            r.note("x=" + u64(x) + " skipped: beyond sieve limit " + u64(table.limit()));
            continue;
        }
        const double l = std::log(static_cast<double>(x));
        // Normalised product M*(x) e^gamma ln x, which tends to 1.
        const double m = std::exp(log_mertens_product(table, x, 1)) * eg * l;
        const double dev = m - 1.0;
        const double dus = dusart_mertens_halfwidth(l);
        r.max_residual = std::max(r.max_residual, std::fabs(dev) / dus);
        if (x >= kDusartFrom) {
            r.add({"x=" + u64(x) + " dusart", dev, dus, std::fabs(dev) < dus, true, "|M e^g ln x - 1| < 1/(5 ln^3 x)"});
        } else {
            r.add({"x=" + u64(x) + " dusart", dev, dus, std::fabs(dev) < dus, false, "below validity threshold"});
        }
        if (x > kAxlerAbove) {
            const double lo = axler_mertens_lower_halfwidth(l);
            const double hi = axler_mertens_upper_halfwidth(l);
            r.add({"x=" + u64(x) + " axler lower", dev, -lo, dev > -lo, true, "M e^g ln x > 1 - lower band"});
            r.add({"x=" + u64(x) + " axler upper", dev, hi, dev < hi, true, "M e^g ln x < 1 + upper band"});
        }
    }
    r.finalize();
    return r;
}

CheckReport reproduce_section_constants(const PrimeTable& table)
{
    CheckReport r;
    r.check_name = "named constants";
    auto expect = [&r](std::string point, double value, double target, double tol, std::string note) {
        const double res = std::fabs(value - target);
        r.max_residual = std::max(r.max_residual, res / tol);
        r.add({std::move(point), value, target, res <= tol, true, std::move(note) + " (tol " + format_real(tol, 3) + ")"});
    };
    auto expect_rel = [&r](std::string point, double value, double target, double rel, std::string note) {
        const double res = std::fabs(value / target - 1.0);
        r.max_residual = std::max(r.max_residual, res / rel);
        r.add({std::move(point), value, target, res <= rel, true,
               std::move(note) + " (rel tol " + format_real(rel, 3) + ")"});
    };
    auto report = [&r](std::string point, double value, double reference, std::string note) {
        r.add({std::move(point), value, reference, true, false, std::move(note)});
    };

    const auto p599 = LogPoint::from_natural(599);
    const double e599 = epsilon0(p599);
    const double phi599 = phi(p599);
    expect("eps0(599)", e599, 0.14271, 5e-6, "theta(x) bound at 599");
    expect("phi(599)", phi599, 0.30543, 1e-5, "pi/theta deviation constant");
    expect("1/(1+phi(599))", 1.0 / (1.0 + phi599), 0.76603, 1e-4, "lower n-scaling constant");
    expect("1/(1-phi(599))", 1.0 / (1.0 - phi599), 1.4397, 1e-4, "upper n-scaling constant");

    // eps0 peaks where X = 1/2, i.e. ln x = 6.455/4.
    const double log_peak = kBounds.trudgian_scale / 4.0;
    expect("argmax eps0 (x)", std::exp(log_peak), 5.022, 1e-3, "eps0 decreasing beyond this point");
    expect("1/(1+max eps0)", 1.0 / (1.0 + epsilon0_unchecked(log_peak)), kEpsilonMaxFactor, 1e-4,
           "factor inside the lambda bounds");
    expect("sandwich upper factor at x=5, p_n=3", sandwich_upper_factor(std::log(5.0), std::log(3.0)), 6.9579, 1e-3,
           "largest far-right factor");

    expect_rel("phi(3e120)", phi(LogPoint::from_scientific(3.0, 120)), 0.0050222, 0.01, "sharper deviation constant");
    const auto big = LogPoint::from_scientific(8.0, 989079);
    expect_rel("phi(8e989079)", phi(big), 4.39e-7, 0.01, "sharpest deviation constant");
    expect_rel("rho(8e989079) - 1", rho(big) - 1.0, 4.39e-7, 0.01, "matching (1 - 4.39e-7) factor");
    const double X = std::sqrt(big.log_x() / kBounds.trudgian_scale);
    expect_rel("eps0 coefficient at 8e989079", kBounds.trudgian_coeff * std::sqrt(X), 9.433, 1e-3,
               "eps0 = coefficient * e^-X");
    expect("ln eps0(8e989079)", log_epsilon0(big), std::log(9.433) - 593.984, 5e-3, "ln 9.433 - 593.984");

    // Band around n^k L_k / theta_k for the huge primorial regime:
    // Mertens bands at ln x (Axler) and at p_n = 2278421 (Dusart), combined with phi(x).
    const double log_pn = std::log(2'278'421.0);
    const double top = std::max(axler_mertens_lower_halfwidth(big.log_x()), axler_mertens_upper_halfwidth(big.log_x()));
    const double bottom = dusart_mertens_halfwidth(log_pn);
    const double phib = phi(big);
    expect_rel("Mertens half-width at ln(8e989079)", top, 4.233e-21, 0.01, "Axler band");
    expect_rel("Mertens half-width at p_n=2278421", bottom, 6.375e-5, 0.01, "Dusart band");
    const double band_hi = (1.0 + top) / (1.0 - bottom) / (1.0 - phib) - 1.0;
    const double band_lo = 1.0 - (1.0 - top) / (1.0 + bottom) / (1.0 + phib);
    expect_rel("asymptotic band, upper", band_hi, 6.42e-5, 0.02, "n^k L_k/theta_k < (1 + band)^k");
    expect_rel("asymptotic band, lower", band_lo, 6.42e-5, 0.02, "n^k L_k/theta_k > (1 - band)^k");

    // 8*10^989079 between consecutive primorials?
    if (table.limit() >= 2'278'421) {
        const std::size_t n_bracket = table.pi(2'278'421);
        const double th = table.theta_of_index(n_bracket);
        report("theta(p_168065) - ln(8e989079)", th - big.log_x(), 0.0,
               "bracket needs this > 0; p_" + std::to_string(n_bracket) + " = "
                   + std::to_string(table.nth_prime(n_bracket)));
    }

    // n-scaling constants, reported only.
    auto scaled_range = [&table](std::size_t n_from, std::size_t n_to) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t n = n_from; n <= n_to && n <= table.size(); ++n) {
            const double v = static_cast<double>(n) * std::log(static_cast<double>(table.nth_prime(n)))
                             / table.theta_of_index(n);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return std::pair{lo, hi};
    };
    const double phi6 = phi(LogPoint::from_log(table.theta_of_index(6)));
    report("n>5 lower constant via 1/(1+phi(p_6#))", 1.0 / (1.0 + phi6), 0.78482, "recomputation attempt");
    report("n>5 upper constant via 1/(1-phi(p_6#))", 1.0 / (1.0 - phi6), 1.46135, "recomputation attempt");
    const std::size_t n_hi = std::min<std::size_t>(table.size(), 100'000);
    const auto [lo6, hi6] = scaled_range(6, n_hi);
    report("min n ln p_n/theta(p_n), 6<=n<=" + std::to_string(n_hi), lo6, 0.78482, "direct evaluation");
    report("max n ln p_n/theta(p_n), 6<=n<=" + std::to_string(n_hi), hi6, 1.46135,
           hi6 > 1.46135 ? "direct evaluation exceeds the reference upper constant" : "direct evaluation");
    if (table.size() >= 63) {
        const double phi63 = phi(LogPoint::from_log(table.theta_of_index(63)));
        report("n>62 lower constant via 1/(1+phi(p_63#))", 1.0 / (1.0 + phi63), 0.99392, "recomputation attempt");
        report("n>62 upper constant via 1/(1-phi(p_63#))", 1.0 / (1.0 - phi63), 1.02089, "recomputation attempt");
        const auto [lo63, hi63] = scaled_range(63, n_hi);
        report("min n ln p_n/theta(p_n), 63<=n<=" + std::to_string(n_hi), lo63, 0.99392, "direct evaluation");
        report("max n ln p_n/theta(p_n), 63<=n<=" + std::to_string(n_hi), hi63, 1.02089,
               hi63 > 1.02089 ? "direct evaluation exceeds the reference upper constant" : "direct evaluation");
    }
    r.finalize();
    return r;
}

}  // namespace primlab
