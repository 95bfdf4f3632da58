#include "primorial/primality.hpp"

#include <array>
#include <chrono>
#include <vector>

#include "primorial/errors.hpp"
#include "primorial/numeric.hpp"

namespace primlab {

namespace {

constexpr std::array<unsigned long, 13> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Odd primes below 3163 > sqrt(10^7), enough for the trial-division tier.
const std::vector<std::uint32_t>& small_odd_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<std::uint32_t> out;
        for (std::uint32_t v = 3; v < 3163; v += 2) {
            bool prime = true;
            for (const auto p : out) {
                if (p * p > v)
                    break;
                if (v % p == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime)
                out.push_back(v);
        }
        return out;
    }();
    return primes;
}

PrimalityVerdict trial_division(std::uint64_t v)
{
    PrimalityVerdict out;
    out.method = Method::trial_division;
    if (v < 2) {
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::below_two;
        return out;
    }
    if (v % 2 == 0 && v != 2) {
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::factor;
        out.witness = 2;
        return out;
    }
    for (const auto p : small_odd_primes()) {
        if (std::uint64_t{p} * p > v)
            break;
        if (v % p == 0) {
            out.classification = Classification::composite;
            out.witness_kind = WitnessKind::factor;
            out.witness = p;
            return out;
        }
    }
    out.classification = Classification::prime;
    return out;
}

// Divides by odd primes below `bound`; returns the first divisor found.
std::optional<std::uint32_t> small_factor(const BigNat& n, std::uint32_t bound)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (const auto p : small_odd_primes()) {
        if (p >= bound)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return p;
    }
    return std::nullopt;
}

// (a/2) mod n for odd n.
void halve_mod(BigNat& a, const BigNat& n)
{
    if (mpz_odd_p(a.get_mpz_t()))
        a += n;
    a >>= 1;
}

void reduce(BigNat& a, const BigNat& n)
{
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
}

}  // namespace

bool strong_probable_prime(const BigNat& n, unsigned long base)
{
    const BigNat n_minus_1 = n - 1;
    const auto s = mpz_scan1(n_minus_1.get_mpz_t(), 0);
    BigNat d = n_minus_1 >> s;
    BigNat x;
    const BigNat a = base;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1)
        return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n_minus_1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

bool strong_lucas_probable_prime(const BigNat& n, std::uint64_t* d_out)
{
    // Selfridge: first D in 5, -7, 9, -11, ... with Jacobi(D/n) = -1.
    long d = 5;
    while (true) {
        const BigNat dz = d;
        const int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
        if (j == -1)
            break;
        if (j == 0) {
            // gcd(|D|, n) > 1: composite unless n == |D|.
            if (n != (d < 0 ? -d : d)) {
                if (d_out)
                    *d_out = static_cast<std::uint64_t>(d < 0 ? -d : d);
                return false;
            }
        }
        d = d > 0 ? -(d + 2) : -(d - 2);
        if (d > 1'000'000 || d < -1'000'000)
            throw CapabilityError("no Selfridge parameter found (input may be a perfect square)");
    }
    const BigNat D = d;
    const BigNat Q = (1 - d) / 4;

    const BigNat n_plus_1 = n + 1;
    const auto s = mpz_scan1(n_plus_1.get_mpz_t(), 0);
    const BigNat odd = n_plus_1 >> s;

    BigNat U = 1;
    BigNat V = 1;  // P = 1
    BigNat Qk = Q;
    reduce(Qk, n);
    BigNat tmp;
    const auto bits = mpz_sizeinbase(odd.get_mpz_t(), 2);
    for (auto i = static_cast<long>(bits) - 2; i >= 0; --i) {
        // Doubling: U_2k = U_k V_k, V_2k = V_k^2 - 2 Q^k.
        U *= V;
        reduce(U, n);
        V = V * V - 2 * Qk;
        reduce(V, n);
        Qk *= Qk;
        reduce(Qk, n);
        if (mpz_tstbit(odd.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // Increment: U_{k+1} = (P U + V)/2, V_{k+1} = (D U + P V)/2.
            tmp = U + V;
            V = D * U + V;
            U = tmp;
            reduce(U, n);
            reduce(V, n);
            halve_mod(U, n);
            halve_mod(V, n);
            Qk *= Q;
            reduce(Qk, n);
        }
    }
    if (U == 0 || V == 0)
        return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        V = V * V - 2 * Qk;
        reduce(V, n);
        if (V == 0)
            return true;
        Qk *= Qk;
        reduce(Qk, n);
    }
    if (d_out)
        *d_out = static_cast<std::uint64_t>(d < 0 ? -d : d);
    return false;
}

PrimalityVerdict is_prime(const BigNat& x)
{
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](PrimalityVerdict v) {
        v.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                .count());
        return v;
    };

    if (sgn(x) < 0)
        throw DomainError("primality is defined for naturals only");
    if (x < kTrialDivisionCeiling)
        return finish(trial_division(x.get_ui()));

    static const BigNat mr_ceiling{std::string(kDeterministicMrCeiling)};
    const bool deterministic = x < mr_ceiling;

    PrimalityVerdict out;
    out.method = deterministic ? Method::deterministic_mr : Method::bpsw;

    if (const auto f = small_factor(x, 1000)) {
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::factor;
        out.witness = *f;
        return finish(out);
    }

    if (deterministic) {
        for (const auto a : kMrBases) {
            if (!strong_probable_prime(x, a)) {
                out.classification = Classification::composite;
                out.witness_kind = WitnessKind::base;
                out.witness = a;
                return finish(out);
            }
        }
        out.classification = Classification::prime;
        return finish(out);
    }

    if (!strong_probable_prime(x, 2)) {
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::base;
        out.witness = 2;
        return finish(out);
    }
    if (mpz_perfect_square_p(x.get_mpz_t())) {
        BigNat root;
        mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::factor;
        if (root.fits_ulong_p())
            out.witness = root.get_ui();
        return finish(out);
    }
    std::uint64_t d = 0;
    if (!strong_lucas_probable_prime(x, &d)) {
        out.classification = Classification::composite;
        out.witness_kind = WitnessKind::lucas_parameter;
        out.witness = d;
        return finish(out);
    }
    out.classification = Classification::probable_prime;
    return finish(out);
}

std::string_view to_string(Classification c) noexcept
{
    switch (c) {
    case Classification::prime:
        return "prime";
    case Classification::composite:
        return "composite";
    case Classification::probable_prime:
        return "probable_prime";
    }
    return "?";
}

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::trial_division:
        return "trial_division";
    case Method::deterministic_mr:
        return "deterministic_mr";
    case Method::bpsw:
        return "bpsw";
    }
    return "?";
}

std::optional<Classification> parse_classification(std::string_view s) noexcept
{
    if (s == "prime")
        return Classification::prime;
    if (s == "composite")
        return Classification::composite;
    if (s == "probable_prime")
        return Classification::probable_prime;
    return std::nullopt;
}

}  // namespace primlab
