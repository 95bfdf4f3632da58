#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <unistd.h>

#include "oracle.hpp"
#include "primorial/errors.hpp"
#include "primorial/experiments.hpp"
#include "primorial/numeric.hpp"

using namespace primlab;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t = PrimeTable::sieve_up_to(2'000'000);
    return t;
}

}  // namespace

TEST_CASE("primorial prime search to n = 10")
{
    SearchCache cache;
    const auto recs = search_primorial_primes(table(), 10, cache);
    REQUIRE(recs.size() == 20);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].n == i / 2 + 1);
        CHECK(recs[i].form == (i % 2 == 0 ? Form::minus : Form::plus));
    }
    CHECK(count_primorial_primes(recs, 10) == 9);
    CHECK(recs[11].n == 6);
    CHECK(recs[11].form == Form::plus);
    CHECK(recs[11].classification == Classification::composite);
    CHECK(recs[0].classification == Classification::composite);  // 2 - 1 = 1
    // trial-division oracle for the small values
    BigNat p = 1;
    for (std::size_t n = 1; n <= 10; ++n) {
        p *= static_cast<unsigned long>(table().nth_prime(n));
        CHECK(recs[2 * (n - 1)].passes() == oracle::is_prime_td(BigNat(p - 1).get_ui()));
        CHECK(recs[2 * (n - 1) + 1].passes() == oracle::is_prime_td(BigNat(p + 1).get_ui()));
    }
}

TEST_CASE("search to n = 100 finds 15; parallel output is identical")
{
    SearchCache c1;
    SearchCache c4;
    const auto a = search_primorial_primes(table(), 100, c1, {1, {}});
    const auto b = search_primorial_primes(table(), 100, c4, {4, {}});
    CHECK(count_primorial_primes(a, 100) == 15);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n == b[i].n);
        CHECK(a[i].form == b[i].form);
        CHECK(a[i].classification == b[i].classification);
        CHECK(a[i].digest == b[i].digest);
    }
}

TEST_CASE("twins")
{
    SearchCache cache;
    CHECK(search_twins(table(), 10, cache) == std::vector<std::size_t>{2, 3, 5});
    CHECK(search_twins(table(), 1, cache).empty());
    const auto twins = search_twins(table(), 200, cache, {3, {}});
    CHECK(twins == std::vector<std::size_t>{2, 3, 5});
    // independent re-test of each twin member with GMP's own routine
    for (auto n : twins) {
        const BigNat p = primorial(table(), n).value;
        CHECK(mpz_probab_prime_p(BigNat(p - 1).get_mpz_t(), 30) > 0);
        CHECK(mpz_probab_prime_p(BigNat(p + 1).get_mpz_t(), 30) > 0);
    }
}

TEST_CASE("cache-backed search round trip and verification")
{
    const auto path = std::filesystem::temp_directory_path() / ("primorial_lab_exp_" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(path);
    std::vector<SearchRecord> first;
    {
        SearchCache c(path);
        first = search_primorial_primes(table(), 40, c);
    }
    SearchCache warm(path);
    CHECK(warm.size() == 80);
    const auto second = search_primorial_primes(table(), 40, warm);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(second[i].classification == first[i].classification);
        CHECK(second[i].elapsed_ms == first[i].elapsed_ms);
    }
    CHECK(verify_cache(table(), warm).passed);

    // tamper with one digest: loading works, searching refuses
    {
        std::ofstream out(path, std::ios::app);
        auto bogus = first[0];
        bogus.n = 41;
        out << SearchCache::serialize(bogus) << "\n";
    }
    SearchCache tampered(path);
    CHECK_FALSE(verify_cache(table(), tampered).passed);
    CHECK_THROWS_AS(search_primorial_primes(table(), 41, tampered), IntegrityError);
    std::filesystem::remove(path);
}

TEST_CASE("search limits")
{
    SearchCache cache;
    CHECK_THROWS_AS(search_primorial_primes(table(), 20'001, cache), ResourceError);
    CHECK_THROWS_AS(search_primorial_primes(PrimeTable::sieve_up_to(100), 30, cache), RangeError);
}

TEST_CASE("table 1 expected columns")
{
    SearchCache cache;
    const std::size_t Ns[] = {10, 100, 1000};
    const auto rows = table1(table(), Ns, &cache, 100);
    CHECK(std::fabs(rows[0].expected_low - 6.74) < 0.01);
    CHECK(std::fabs(rows[0].expected_high - 13.47) < 0.01);
    CHECK(std::fabs(rows[1].expected_low - 12.58) < 0.01);
    CHECK(std::fabs(rows[1].expected_high - 25.17) < 0.01);
    CHECK(std::fabs(rows[2].expected_low - 17.96) < 0.01);
    CHECK(std::fabs(rows[2].expected_high - 35.90) < 0.01);
    CHECK(*rows[0].reference == doctest::Approx(2 * std::exp(0.5772156649015329) * std::log(29.0)));
    CHECK(std::fabs(*rows[0].reference - 11.99) < 0.01);
    CHECK(rows[0].actual == 9u);
    CHECK(rows[1].actual == 15u);
    CHECK_FALSE(rows[2].actual.has_value());
    CHECK_THROWS_AS(table1(table(), Ns, nullptr, 0, 2.0, 1.0), DomainError);
}

TEST_CASE("tables 2 and 3")
{
    const std::size_t Ns[] = {1, 10, 100, 1000, 10000, 100000};
    const auto t2 = table2(table(), Ns);
    CHECK(*t2[0].omega == doctest::Approx(std::pow(std::log(2.0) / 2, 2)));
    CHECK(std::fabs(*t2[2].omega - 0.728261) < 1e-6);
    CHECK(std::fabs(*t2[4].omega - 0.741478) < 1e-6);
    const auto t3 = table3(table(), Ns, nullptr, 0);
    for (std::size_t i = 0; i < t3.size(); ++i)
        CHECK(t3[i].expected_low == 4.0 * *t2[i].omega);
    CHECK(std::fabs(t3[1].expected_low - 2.42) < 0.005);
    CHECK(std::fabs(t3[2].expected_low - 2.91) < 0.005);
    CHECK(std::fabs(t3[5].expected_low - 2.97) < 0.005);

    SearchCache cache;
    const std::size_t small[] = {10, 100};
    const auto with_actual = table3(table(), small, &cache, 100);
    CHECK(with_actual[0].actual == 3u);
    CHECK(with_actual[1].actual == 3u);
}

TEST_CASE("primorial below the product of primes up to sqrt x")
{
    const auto res = check_lemma_a(table(), 20);
    std::vector<unsigned long> v;
    for (const auto& x : res.violations)
        v.push_back(x.get_ui());
    CHECK(v == std::vector<unsigned long>{2, 4, 14, 16, 104, 106});
    CHECK(res.report.passed);

    // n = 5: x = 1154, 1156; primes up to 33 multiply to 200560490130 > 2310
    long double prod = 1;
    for (auto p : oracle::primes_upto(33))
        prod *= p;
    CHECK(prod == 200560490130.0L);
    // x = 106: primes up to 10 give exactly 210 = p_4#
    CHECK(2 * 3 * 5 * 7 == 210);

    const auto parity = check_lemma_a(table(), 20, LemmaAOffsets::parity);
    CHECK_FALSE(parity.report.passed);  // x = 107 breaks the threshold under the +2/+4 reading
    CHECK_THROWS_AS(check_lemma_a(table(), 3), DomainError);
}

TEST_CASE("maximality comparator")
{
    const HeuristicParams p{1, 0.5, EvalDomain::exact_rational};
    const auto r = denns_compare(table(), UniversalPrimorial::plain(3, -1), UniversalPrimorial{26, 1, 1}, p);
    CHECK(r.passed);
    REQUIRE(r.details.size() == 1);
    CHECK(r.details[0].value == 1.0);
    CHECK(r.details[0].bound == doctest::Approx(52.0 / 90.0));
    CHECK(denns_compare(table(), UniversalPrimorial::plain(3, -1), BigNat(27), 1, p).passed);
    CHECK_THROWS_AS(denns_compare(table(), UniversalPrimorial::plain(3, -1), BigNat(29), -1, p), PreconditionError);
    CHECK_THROWS_AS(denns_compare(table(), UniversalPrimorial::plain(3, -1), BigNat(51), 1, p), PreconditionError);

    const std::vector<UniversalPrimorial> targets{UniversalPrimorial::plain(3, -1), UniversalPrimorial::plain(3, 1),
                                                  UniversalPrimorial::plain(5, -1), UniversalPrimorial::plain(5, 1)};
    CHECK(denns_sweep(table(), targets, 500).passed);
    CHECK(denns_sweep(table(), targets, std::nullopt).passed);
}

TEST_CASE("divergence sums")
{
    const double root = divergence_threshold_root();
    CHECK(std::fabs(root - 17.262) < 1e-2);
    CHECK(root == doctest::Approx(17.2717).epsilon(1e-5));
    CHECK(check_divergence(table(), 100, 10'000).passed);
    const double a = divergence_partial_sum(table(), 100, 1000);
    CHECK(divergence_partial_sum(table(), 100, 2000) > a);
    CHECK(divergence_partial_sum(table(), 200, 1000) > a);
    CHECK_THROWS_AS(divergence_partial_sum(table(), 3'000'000, 10), RangeError);
}

TEST_CASE("log-log correction constants")
{
    const auto r = lemma_eq_constants();
    CHECK(r.passed);
    for (const auto& d : r.details)
        if (d.point == "-ln(1-eps0(599))")
            CHECK(std::fabs(d.value - 0.15402) < 1e-3);
}

TEST_CASE("twin count envelope")
{
    CHECK(brun_partial_sum(table(), 100'000).first == 1224);
    CHECK(brun_partial_sum(table(), 100'000).first == oracle::twin_count_naive(100'000));
    CHECK(brun_partial_sum(table(), 10).first == 2);
    double prev = 0;
    for (std::uint64_t x = 16; x < 1'000'000; x = x * 5 / 4) {
        const double env = brun_partial_sum(table(), x).second;
        CHECK(env > 0);
        CHECK(env > prev);
        prev = env;
    }
}

TEST_CASE("weak sandwich report and exact/log comparison")
{
    const auto r = check_int5(table(), 8, {1, 0.5, EvalDomain::exact_rational});
    CHECK(r.passed);  // reported only
    bool n6 = false;
    for (const auto& d : r.details)
        if (d.point == "n=6 g=1") {
            n6 = true;
            CHECK(d.ok);
        }
    CHECK(n6);
    const double cs[] = {0.5};
    const auto ev = check_exact_vs_log(table(), 11, cs);
    CHECK(ev.passed);
    CHECK(ev.max_residual < 1e-6);
}
