#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracle.hpp"
#include "primorial/bignum.hpp"
#include "primorial/errors.hpp"
#include "primorial/heuristics.hpp"
#include "primorial/numeric.hpp"
#include "primorial/prime_table.hpp"

using namespace primlab;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t = PrimeTable::sieve_up_to(2'000'000);
    return t;
}

const PrimeTable& table_1e7()
{
    static const PrimeTable t = PrimeTable::sieve_up_to(10'000'000);
    return t;
}

// Definition-level L_k with plain mpq arithmetic and trial-division factoring.
mpq_class naive_lk(std::uint64_t x, long g, std::uint64_t cutoff, int k)
{
    mpq_class upper = 1;
    for (std::uint64_t p = 2; p <= cutoff; ++p)
        if (oracle::is_prime_td(p) && p > static_cast<std::uint64_t>(k))
            upper *= mpq_class(static_cast<long>(p - k), static_cast<long>(p));
    std::uint64_t m = static_cast<std::uint64_t>(static_cast<long long>(x) - g);
    std::set<std::uint64_t> s;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        while (m % d == 0) {
            s.insert(d);
            m /= d;
        }
    if (m > 1)
        s.insert(m);
    mpq_class lower = 1;
    for (auto p : s)
        if (std::labs(g) % static_cast<long>(p) != 0 && p > static_cast<std::uint64_t>(k))
            lower *= mpq_class(static_cast<long>(p - k), static_cast<long>(p));
    mpq_class r = upper / lower;
    r.canonicalize();
    return r;
}

std::vector<std::uint64_t> set_of(const ExclusionSet& s)
{
    return s.primes;
}

}  // namespace

TEST_CASE("params validation")
{
    CHECK_THROWS_AS(HeuristicParams({3, 0.5}).validate(), DomainError);
    CHECK_THROWS_AS(HeuristicParams({1, 0.4}).validate(), DomainError);
    CHECK_THROWS_AS(HeuristicParams({1, 1.01}).validate(), DomainError);
    CHECK_NOTHROW(HeuristicParams({2, 1.0}).validate());
}

TEST_CASE("Mertens product examples")
{
    CHECK(mertens_product_exact(table(), 2, 1) == mpq_class(1, 2));
    CHECK(mertens_product_exact(table(), 3, 2) == mpq_class(1, 3));
    CHECK(mertens_product(table(), 2, 1) == doctest::Approx(0.5));
    CHECK(mertens_product(table(), 3, 2) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(mertens_product(table(), 2'000'001, 1), RangeError);
    CHECK_THROWS_AS(mertens_product_exact(table(), 20'000, 1), ResourceError);

    const double l = std::log(1e7);
    const double m = mertens_product(table_1e7(), 10'000'000, 1) * std::exp(static_cast<double>(kEulerGamma)) * l;
    const double band = 1.0 / (5.0 * l * l * l);
    CHECK(m > 1.0 - band);
    CHECK(m < 1.0 + band);

    // floating product against the exact rational
    for (std::uint64_t cut : {10ULL, 97ULL, 1000ULL, 9973ULL})
        for (int k : {1, 2})
            CHECK(mertens_product(table(), cut, k) == doctest::Approx(mertens_product_exact(table(), cut, k).get_d()).epsilon(1e-13));
}

TEST_CASE("Mertens asymptotic form matches the sieve at large cutoffs")
{
    const double l = std::log(1e7);
    CHECK(std::fabs(log_mertens_asymptotic(l, 1) - log_mertens_product(table_1e7(), 10'000'000, 1)) < 1e-4);
    CHECK(std::fabs(log_mertens_asymptotic(l, 2) - log_mertens_product(table_1e7(), 10'000'000, 2)) < 1e-4);
}

TEST_CASE("exclusion set examples")
{
    CHECK(set_of(exclusion_set(table(), BigNat(31), 1)) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(set_of(exclusion_set(table(), BigNat(27), 1)) == std::vector<std::uint64_t>{2, 13});
    CHECK(set_of(exclusion_set(table(), BigNat(17), 2)) == std::vector<std::uint64_t>{3, 5});
    CHECK(set_of(exclusion_set(table(), UniversalPrimorial::plain(3, 1))) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(set_of(exclusion_set(table(), UniversalPrimorial::plain(3, -1))) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(set_of(exclusion_set(table(), UniversalPrimorial{26, 1, 1})) == std::vector<std::uint64_t>{2, 13});
    CHECK(set_of(exclusion_set(table(), UniversalPrimorial{1, 3, 2})) == std::vector<std::uint64_t>{3, 5});
}

TEST_CASE("property: structural exclusion set equals the factored one")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> Nd(1, 1000);
    std::uniform_int_distribution<std::size_t> nd(1, 8);
    std::bernoulli_distribution coin;
    for (int i = 0; i < 1000; ++i) {
        UniversalPrimorial u;
        u.N = Nd(rng);
        u.n = nd(rng);
        u.g = u.N % 2 == 0 ? (coin(rng) ? 1 : -1) : (coin(rng) ? 2 : 4);
        const auto x = realize(table(), u);
        REQUIRE(set_of(exclusion_set(table(), u)) == set_of(exclusion_set(table(), x, u.g)));
    }
}

TEST_CASE("exclusion set of an unfactorable value is a capability error")
{
    const auto small = PrimeTable::sieve_up_to(100);
    // 1000003 * 1000033 + 1: the offset removal leaves a product of two large primes.
    const BigNat x = BigNat(1'000'003UL) * BigNat(1'000'033UL) + 1;
    CHECK_THROWS_AS(exclusion_set(small, x, 1), CapabilityError);
}

TEST_CASE("power cutoff")
{
    CHECK(power_cutoff(BigNat(1'000'000'000'000UL), 0.5) == 1'000'000u);
    CHECK(power_cutoff(BigNat(999'999'999'999UL), 0.5) == 999'999u);
    CHECK(power_cutoff(BigNat(65536), 0.75) == 4096u);
    CHECK(power_cutoff(BigNat(65535), 0.75) == 4095u);
    CHECK(power_cutoff(BigNat(30), 1.0) == 30u);
    BigNat huge = BigNat(1) << 200;
    CHECK_FALSE(power_cutoff(huge, 0.5).has_value());
    const double c = std::exp(-static_cast<double>(kEulerGamma));
    for (unsigned long x : {7UL, 29UL, 2309UL, 510511UL, 9699689UL}) {
        const auto y = *power_cutoff(BigNat(x), c);
        CHECK(std::pow(static_cast<long double>(y), 1.0L / c) <= x);
        CHECK(std::pow(static_cast<long double>(y + 1), 1.0L / c) > x);
    }
}

TEST_CASE("L_k exact examples")
{
    const HeuristicParams c1{1, 1.0, EvalDomain::exact_rational};
    const auto r7 = lk_exact(table(), UniversalPrimorial::plain(2, 1), c1).canonical();
    CHECK(r7 == mpq_class(24, 35));
    CHECK(r7 == naive_lk(7, 1, 7, 1));

    const HeuristicParams half{1, 0.5, EvalDomain::exact_rational};
    CHECK(lk_exact(table(), UniversalPrimorial::plain(3, -1), half).canonical() == 1);
    mpq_class q27(52, 90);
    q27.canonicalize();
    CHECK(lk_general_exact(table(), BigNat(27), 1, half).canonical() == q27);
    CHECK(lk_general_exact(table(), BigNat(27), 1, half).canonical() == naive_lk(27, 1, 5, 1));
    CHECK(lk_exact(table(), UniversalPrimorial{26, 1, 1}, half).canonical() == q27);
}

TEST_CASE("L_k exact path against the naive definition")
{
    for (int k : {1, 2})
        for (double c : {0.5, 1.0})
            for (std::size_t n = 2; n <= (c == 1.0 ? 6u : 8u); ++n)
                for (int g : {-1, 1}) {
                    const auto u = UniversalPrimorial::plain(n, g);
                    const auto x = realize(table(), u).get_ui();
                    const std::uint64_t cut = c == 1.0 ? x : isqrt(x);
                    const HeuristicParams p{k, c, EvalDomain::exact_rational};
                    REQUIRE(lk_exact(table(), u, p).canonical() == naive_lk(x, g, cut, k));
                }
}

TEST_CASE("degenerate cutoff")
{
    const HeuristicParams half{1, 0.5, EvalDomain::exact_rational};
    CHECK_THROWS_AS(lk_general_exact(table(), BigNat(3), 1, half), DomainError);
    CHECK_THROWS_AS(lk(table(), UniversalPrimorial::plain(1, 1), HeuristicParams{1, 0.5}), DomainError);
}

TEST_CASE("property: exact and log-domain L_k agree where both run")
{
    const double cs[] = {0.5, std::exp(-static_cast<double>(kEulerGamma)), 1.0};
    for (double c : cs)
        for (int k : {1, 2})
            for (std::size_t n = 2; n <= 9; ++n)
                for (int g : {-1, 1}) {
                    const auto u = UniversalPrimorial::plain(n, g);
                    const HeuristicParams pe{k, c, EvalDomain::exact_rational};
                    const HeuristicParams pl{k, c, EvalDomain::log_domain};
                    double e = 0;
                    try {
                        e = lk_exact(table(), u, pe).to_double();
                    } catch (const RangeError&) {
                        continue;
                    }
                    CHECK(lk(table(), u, pl) == doctest::Approx(e).epsilon(1e-10));
                }
}

TEST_CASE("property: L_k(p_n# - 1) = L_k(p_n# + 1)")
{
    for (int k : {1, 2})
        for (std::size_t n = 2; n <= 400; n += (n < 30 ? 1 : 37)) {
            const HeuristicParams p{k, 0.5};
            CHECK(lk(table(), UniversalPrimorial::plain(n, -1), p)
                  == doctest::Approx(lk(table(), UniversalPrimorial::plain(n, 1), p)).epsilon(1e-9));
        }
}

TEST_CASE("L_k approaches the closed form for large n")
{
    for (int k : {1, 2}) {
        const HeuristicParams p{k, 0.5};
        const auto u = UniversalPrimorial::plain(5000, 1);
        const double L = lk(table(), u, p);
        const double A = lk_asymptotic(table(), u, p);
        CHECK(std::fabs(L / A - 1.0) < 1e-3);
        // n^k L_k is of order theta_k
        const double scaled = L * std::pow(5000.0, k);
        CHECK(scaled > 0.5 * (k == 1 ? 2.0 : 4.0));
        CHECK(scaled < 2.0 * (k == 1 ? 2.0 : 4.0));
    }
}

TEST_CASE("theta_k")
{
    CHECK(theta_k(table(), {1, 0.5}, 1000, 3).value == 2.0);
    CHECK(theta_k(table(), {1, 0.8}, 1000, 3).value == doctest::Approx(1.25));
    CHECK(theta_k(table(), {2, 0.5}, 5, 3).value == doctest::Approx(4.0).epsilon(1e-15));

    long double pi2_big = 1;
    for (auto p : oracle::primes_upto(1'000'000))
        if (p > 2)
            pi2_big *= static_cast<long double>(p) * (p - 2) / ((p - 1.0L) * (p - 1.0L));
    const long double pi2_5 = (3.0L / 4.0L) * (15.0L / 16.0L);
    CHECK(theta_k(table(), {2, 0.5}, 1'000'000, 3).value == doctest::Approx(static_cast<double>(4 * pi2_big / pi2_5)).epsilon(1e-12));
    CHECK_THROWS_AS(theta_k(table(), {2, 0.5}, 1000, 1), DomainError);
}

TEST_CASE("property: theta_2 band")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::uint64_t> cd(3, 2'000'000);
    std::uniform_int_distribution<std::size_t> nd(2, 1000);
    std::uniform_real_distribution<double> c(0.5, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double cc = c(rng);
        const std::size_t n = nd(rng);
        const std::uint64_t cut = std::max<std::uint64_t>(cd(rng), table().nth_prime(n));
        const double v = theta_k(table(), {2, cc}, cut, n).value * cc * cc;
        CHECK(v > 15.0 / 16.0);
        CHECK(v <= 1.0 + 1e-15);
    }
}

TEST_CASE("twin prime constant")
{
    CHECK(twin_prime_constant(table(), 3) == doctest::Approx(0.75));
    CHECK(twin_prime_constant(table(), 5) == doctest::Approx(45.0 / 64.0));
    CHECK(std::fabs(twin_prime_constant(table_1e7(), 10'000'000) - 0.66016) < 2e-5);
    double prev = 1.0;
    for (std::uint64_t cut = 3; cut < 100'000; cut = cut * 3 / 2 + 1) {
        const double v = twin_prime_constant(table(), cut);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("alpha")
{
    const double th3 = table().theta_of_index(3);
    CHECK(alpha(table(), th3, 1, 3) == doctest::Approx(1.0));
    CHECK(alpha(table(), std::log(31.0), 2, 3) == doctest::Approx(std::pow(std::log(30.0) / std::log(31.0), 2)).epsilon(1e-14));
    // fixed K, growing n
    double prev = 0;
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
        const double a = alpha(table(), log_realized(table(), {200, n, 1}), 1, n);
        CHECK(a > prev);
        prev = a;
    }
    CHECK(prev > 0.999);
}

TEST_CASE("omega sums")
{
    CHECK(std::fabs(omega_sum(table(), 10).value - 0.605414) < 1e-6);
    CHECK(std::fabs(omega_sum(table(), 100'000).value - 0.741586) < 1e-6);
    CHECK(std::fabs(omega_sum(table(), 17).value - 0.660163) < 1e-6);
    CHECK(omega_sum(table(), 1).value == doctest::Approx(std::pow(std::log(2.0) / 2.0, 2)).epsilon(1e-15));

    const auto primes = oracle::primes_upto(1'300'000);
    long double ref = 0;
    double prev = 0;
    for (std::size_t i = 0; i < 100'000; ++i) {
        const long double t = std::log(static_cast<long double>(primes[i])) / primes[i];
        ref += t * t;
        if ((i + 1) % 5000 == 0 || i < 50) {
            const double v = omega_sum(table(), i + 1).value;
            CHECK(v == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
            CHECK(v > prev);
            CHECK(v < 0.750159);
            prev = v;
        }
    }
    CHECK_THROWS_AS(omega_sum(PrimeTable::sieve_up_to(100), 26), RangeError);
}

TEST_CASE("omega elementary bracket")
{
    const auto b = omega_elementary_bounds(table());
    CHECK(b.lower < b.upper);
    CHECK(std::fabs(b.partial - 0.660163) < 1e-6);
    // tail oracle: direct sum plus the integral remainder
    long double tail = 0;
    for (long n = 10'000'000; n > 17; --n)
        tail += 1.0L / (static_cast<long double>(n) * n);
    tail += 1.0L / 10'000'000.5L;
    CHECK(std::fabs(b.tail - static_cast<double>(tail)) < 1e-12);
    CHECK(std::fabs(b.lower - 0.717297) < 1e-5);
    CHECK(b.lower == doctest::Approx(b.partial + b.tail));
    CHECK(b.upper == doctest::Approx(b.partial + b.tail / (0.796775 * 0.796775)));
}
