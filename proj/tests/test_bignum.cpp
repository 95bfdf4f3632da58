#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "oracle.hpp"
#include "primorial/bignum.hpp"
#include "primorial/errors.hpp"
#include "primorial/prime_table.hpp"

using namespace primlab;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t = PrimeTable::sieve_up_to(2'000'000);
    return t;
}

BigNat left_fold(std::size_t n)
{
    BigNat v = 1;
    for (std::size_t i = 1; i <= n; ++i)
        v *= static_cast<unsigned long>(table().nth_prime(i));
    return v;
}

}  // namespace

TEST_CASE("primorial examples")
{
    CHECK(primorial(table(), 0).value == 1);
    CHECK(primorial(table(), 0).log_value == 0.0);
    CHECK(primorial(table(), 5).value == 2310);
    CHECK(primorial(table(), 4).value == 210);
    CHECK(primorial(table(), 4).value / 2 + 1 == 106);
    CHECK(primorial(table(), 3).n == 3);
    CHECK_THROWS_AS(primorial(table(), 20'001), ResourceError);
    CHECK_THROWS_AS(primorial(table(), 50, 40), ResourceError);
}

TEST_CASE("product tree equals the left fold for n <= 2000")
{
    for (std::size_t n = 0; n <= 2000; n += (n < 40 ? 1 : 97))
        REQUIRE(primorial(table(), n).value == left_fold(n));
    CHECK(primorial(table(), 2000).value == left_fold(2000));
}

TEST_CASE("primorial recurrence")
{
    BigNat prev = 1;
    for (std::size_t n = 1; n <= 300; ++n) {
        const auto cur = primorial(table(), n).value;
        REQUIRE(cur == prev * static_cast<unsigned long>(table().nth_prime(n)));
        prev = cur;
    }
}

TEST_CASE("log value agrees with the realized value for n <= 25")
{
    for (std::size_t n = 1; n <= 25; ++n) {
        const auto p = primorial(table(), n);
        const long double direct = std::log(std::strtold(p.value.get_str().c_str(), nullptr));
        CHECK(std::fabs(p.log_value - static_cast<double>(direct)) / static_cast<double>(direct) < 1e-12);
    }
}

TEST_CASE("log_primorial")
{
    CHECK(log_primorial(table(), 4) == doctest::Approx(std::log(210.0)).epsilon(1e-14));
    CHECK(log_primorial(table(), 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    const double big = log_primorial(table(), 100'000);
    CHECK(big > 0.9 * 1'299'709);
    CHECK(big < 1.1 * 1'299'709);
    CHECK_THROWS_AS(log_primorial(PrimeTable::sieve_up_to(100), 30), RangeError);
}

TEST_CASE("realize examples")
{
    CHECK(realize(table(), {2, 3, 1}) == 31);
    CHECK(realize(table(), {1, 3, 2}) == 17);
    CHECK(realize(table(), {26, 1, 1}) == 27);
    CHECK(realize(table(), UniversalPrimorial::plain(3, -1)) == 29);
    CHECK(realize(table(), UniversalPrimorial::plain(6, 1)) == 30031);
}

TEST_CASE("parity rule")
{
    try {
        (void)realize(table(), {2, 3, 2});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("g incompatible with N parity") != std::string::npos);
    }
    CHECK_THROWS_AS(realize(table(), {3, 3, 1}), DomainError);
    CHECK_THROWS_AS(realize(table(), {4, 3, 4}), DomainError);
    CHECK_THROWS_AS(realize(table(), {0, 3, 1}), DomainError);
    CHECK_THROWS_AS(realize(table(), {2, 0, 1}), DomainError);
}

TEST_CASE("property: realized universal primorials are odd")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> Nd(1, 1000);
    std::uniform_int_distribution<std::size_t> nd(1, 20);
    std::bernoulli_distribution coin;
    for (int i = 0; i < 2000; ++i) {
        UniversalPrimorial u;
        u.N = Nd(rng);
        u.n = nd(rng);
        u.g = u.N % 2 == 0 ? (coin(rng) ? 1 : -1) : (coin(rng) ? 2 : 4);
        const BigNat v = realize(table(), u);
        REQUIRE(mpz_odd_p(v.get_mpz_t()));
        // K p_n# + g computed independently as N * p_n# / 2 + g.
        BigNat expect = BigNat(static_cast<unsigned long>(u.N)) * left_fold(u.n) / 2 + u.g;
        REQUIRE(v == expect);
        CHECK(log_realized(table(), u) == doctest::Approx(std::log(expect.get_d())).epsilon(1e-12));
    }
}

TEST_CASE("log_big and ratio helpers")
{
    BigNat huge = 1;
    huge <<= 5000;
    CHECK(log_big(huge) == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-14));
    CHECK(ratio_to_double(BigNat(1) << 4000, BigNat(1) << 4001) == doctest::Approx(0.5));
    CHECK(to_decimal(BigNat(12345)) == "12345");
}
