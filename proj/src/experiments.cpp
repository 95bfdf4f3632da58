#include "primorial/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "primorial/analytic_bounds.hpp"
#include "primorial/errors.hpp"
#include "primorial/numeric.hpp"
#include "primorial/primality.hpp"

namespace primlab {

namespace {

constexpr std::size_t kMaxListed = 20;

std::string dec(const BigNat& x)
{
    return x.get_str();
}

SearchRecord classify(std::size_t n, Form form, const BigNat& value, SearchCache& cache)
{
    const std::string digest = sha256_hex(to_decimal(value));
    if (auto hit = cache.lookup(n, form, digest))
        return *hit;
    const auto v = is_prime(value);
    SearchRecord rec{n, form, v.classification, std::string(to_string(v.method)), v.elapsed_ms, digest};
    cache.store(rec);
    return rec;
}

using PerN = std::array<std::optional<SearchRecord>, 2>;

// Runs `body(n, primorial)` for n = 1..n_max on `jobs` workers; each worker
// extends its own running primorial.
std::vector<PerN> run_search(const PrimeTable& table, std::size_t n_max, const SearchOptions& opts,
                             const std::function<PerN(std::size_t, const BigNat&)>& body)
{
    if (n_max > kDefaultPrimorialMax)
        throw ResourceError("search limit " + std::to_string(n_max) + " exceeds primorial ceiling "
                            + std::to_string(kDefaultPrimorialMax));
    if (n_max > table.size())
        throw RangeError("search to n=" + std::to_string(n_max) + " needs a sieve reaching p_n ~ "
                         + std::to_string(PrimeTable::nth_prime_upper_estimate(n_max)));
    std::vector<PerN> out(n_max + 1);
    std::atomic<std::size_t> next{1};
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> done{0};
    std::mutex mu;
    std::exception_ptr failure;
    const auto primes = table.primes();

    auto worker = [&] {
        BigNat running = 1;
        std::size_t have = 0;
        while (!stop.load()) {
            const std::size_t n = next.fetch_add(1);
            if (n > n_max)
                break;
            try {
                for (; have < n; ++have)
                    running *= primes[have];
                out[n] = body(n, running);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
                break;
            }
            const auto d = ++done;
            if (opts.progress) {
                std::lock_guard lock(mu);
                opts.progress(n, d, n_max);
            }
        }
    };

    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

double ln_pn(const PrimeTable& table, std::size_t n)
{
    return std::log(static_cast<double>(table.nth_prime(n)));
}


bool exact_greater(const ExactRatio& a, const ExactRatio& b)
{
    return a.num * b.den > b.num * a.den;
}

std::size_t sqrt_prime_count(const PrimeTable& table, const BigNat& x)
{
    BigNat r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r > table.limit())
        throw RangeError("sqrt(" + dec(x) + ") exceeds the sieve limit");
    return table.pi(r.get_ui());
}

std::string describe(const UniversalPrimorial& u)
{
    std::string s = "p_" + std::to_string(u.n) + "#";
    if (u.N != 2)
        s = std::to_string(u.N) + "/2*" + s;
    s += u.g < 0 ? "-" : "+";
    s += std::to_string(std::abs(u.g));
    return s;
}

CheckReport compare_exact(const std::string& label, const ExactRatio& lx, const ExactRatio& lbar)
{
    CheckReport r;
    r.check_name = "L_k maximality";
    const bool ok = exact_greater(lx, lbar);
    r.add({label, lx.to_double(), lbar.to_double(), ok, true, "L_k(x) > L_k(xbar)"});
    r.max_residual = lbar.to_double() - lx.to_double();
    r.finalize();
    return r;
}

void require_same_p_set(const PrimeTable& table, const BigNat& x, const BigNat& xbar)
{
    if (x == xbar)
        throw PreconditionError("xbar must differ from x");
    if (sqrt_prime_count(table, x) != sqrt_prime_count(table, xbar))
        throw PreconditionError("primes below sqrt differ for x=" + dec(x) + " and xbar=" + dec(xbar));
}

}  // namespace

std::vector<SearchRecord> search_primorial_primes(const PrimeTable& table, std::size_t n_max, SearchCache& cache,
                                                  const SearchOptions& opts)
{
    auto per_n = run_search(table, n_max, opts, [&cache](std::size_t n, const BigNat& p) {
        return PerN{classify(n, Form::minus, p - 1, cache), classify(n, Form::plus, p + 1, cache)};
    });
    std::vector<SearchRecord> out;
    out.reserve(2 * n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        for (auto& r : per_n[n])
            out.push_back(std::move(*r));
    return out;
}

std::vector<std::size_t> search_twins(const PrimeTable& table, std::size_t n_max, SearchCache& cache,
                                      const SearchOptions& opts)
{
    auto per_n = run_search(table, n_max, opts, [&cache](std::size_t n, const BigNat& p) {
        PerN res;
        res[0] = classify(n, Form::minus, p - 1, cache);
        if (res[0]->passes())
            res[1] = classify(n, Form::plus, p + 1, cache);
        return res;
    });
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= n_max; ++n)
        if (per_n[n][1] && per_n[n][1]->passes())
            out.push_back(n);
    return out;
}

CheckReport verify_cache(const PrimeTable& table, const SearchCache& cache)
{
    CheckReport r;
    r.check_name = "cache integrity";
    std::size_t bad = 0;
    std::size_t retested = 0;
    BigNat running = 1;
    std::size_t have = 0;
    for (const auto& rec : cache.records()) {
        if (rec.n > table.size())
            throw RangeError("cache holds n=" + std::to_string(rec.n) + " beyond the sieve");
        for (; have < rec.n; ++have)
            running *= table.primes()[have];
        const BigNat value = rec.form == Form::minus ? BigNat(running - 1) : BigNat(running + 1);
        const std::string point = "n=" + std::to_string(rec.n) + " " + std::string(to_string(rec.form));
        if (sha256_hex(to_decimal(value)) != rec.digest) {
            ++bad;
            r.add({point, 0.0, 0.0, false, true, "digest mismatch"});
            continue;
        }
        if (rec.passes()) {
            ++retested;
            // Independent re-test through GMP's own probabilistic routine.
            const bool again = mpz_probab_prime_p(value.get_mpz_t(), 25) > 0;
            if (!again) {
                ++bad;
                r.add({point, 0.0, 0.0, false, true, "re-test disagrees"});
            }
        }
    }
    r.max_residual = static_cast<double>(bad);
    r.note(std::to_string(cache.size()) + " records, " + std::to_string(retested) + " passing records re-tested, "
           + std::to_string(bad) + " problems");
    r.finalize();
    return r;
}

std::size_t count_primorial_primes(std::span<const SearchRecord> records, std::size_t N)
{
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [N](const SearchRecord& r) { return r.n <= N && r.passes(); }));
}

std::vector<TableRow> table1(const PrimeTable& table, std::span<const std::size_t> Ns, SearchCache* cache,
                             std::size_t search_limit, double theta1_low, double theta1_high,
                             const SearchOptions& opts)
{
    if (theta1_low > theta1_high)
        throw DomainError("theta1 interval is reversed");
    std::size_t reach = 0;
    for (const auto N : Ns)
        if (N <= search_limit)
            reach = std::max(reach, N);
    std::vector<SearchRecord> records;
    if (cache && reach > 0)
        records = search_primorial_primes(table, reach, *cache, opts);
    const double eg = std::exp(static_cast<double>(kEulerGamma));
    std::vector<TableRow> rows;
    for (const auto N : Ns) {
        const double lp = ln_pn(table, N);
        TableRow row;
        row.N = N;
        row.expected_low = 2.0 * theta1_low * lp;
        row.expected_high = 2.0 * theta1_high * lp;
        row.reference = 2.0 * eg * lp;
        if (cache && N <= search_limit)
            row.actual = count_primorial_primes(records, N);
        rows.push_back(row);
    }
    return rows;
}

std::vector<TableRow> table2(const PrimeTable& table, std::span<const std::size_t> Ns)
{
    std::vector<TableRow> rows;
    for (const auto N : Ns) {
        TableRow row;
        row.N = N;
        row.omega = omega_sum(table, N).value;
        row.expected_low = row.expected_high = *row.omega;
        rows.push_back(row);
    }
    return rows;
}

std::vector<TableRow> table3(const PrimeTable& table, std::span<const std::size_t> Ns, SearchCache* cache,
                             std::size_t search_limit, double theta2, const SearchOptions& opts)
{
    std::size_t reach = 0;
    for (const auto N : Ns)
        if (N <= search_limit)
            reach = std::max(reach, N);
    std::vector<std::size_t> twins;
    if (cache && reach > 0)
        twins = search_twins(table, reach, *cache, opts);
    auto rows = table2(table, Ns);
    for (auto& row : rows) {
        row.expected_low = row.expected_high = theta2 * *row.omega;
        if (cache && row.N <= search_limit)
            row.actual = static_cast<std::uint64_t>(
                std::count_if(twins.begin(), twins.end(), [&row](std::size_t n) { return n <= row.N; }));
    }
    return rows;
}

TextTable render_table1(std::span<const TableRow> rows, int digits)
{
    TextTable t;
    t.columns = {"N", "actual", "expected_low", "expected_high", "2e^gamma_ln_pN"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.N), r.actual ? std::to_string(*r.actual) : "",
                          format_real(r.expected_low, digits), format_real(r.expected_high, digits),
                          format_real(r.reference.value_or(0.0), digits)});
    return t;
}

TextTable render_table2(std::span<const TableRow> rows, int digits)
{
    TextTable t;
    t.columns = {"N", "omega"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.N), format_real(r.omega.value_or(0.0), digits)});
    return t;
}

TextTable render_table3(std::span<const TableRow> rows, int digits)
{
    TextTable t;
    t.columns = {"N", "actual", "expected", "omega"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.N), r.actual ? std::to_string(*r.actual) : "",
                          format_real(r.expected_low, digits), format_real(r.omega.value_or(0.0), digits)});
    return t;
}

LemmaAResult check_lemma_a(const PrimeTable& table, std::size_t n_max, LemmaAOffsets offsets)
{
    if (n_max < 4)
        throw DomainError("n_max must be at least 4");
    LemmaAResult res;
    auto& r = res.report;
    r.check_name = offsets == LemmaAOffsets::unit ? "primorial below product of primes up to sqrt x (x = p_n#/2 +- 1)"
                                                  : "primorial below product of primes up to sqrt x (x = p_n#/2 + 2, + 4)";
    const auto primes = table.primes();
    const std::array<long, 2> offs = offsets == LemmaAOffsets::unit ? std::array<long, 2>{-1, 1}
                                                                    : std::array<long, 2>{2, 4};
    std::size_t evaluated = 0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const BigNat pn = primorial(table, n).value;
        const BigNat half = pn / 2;
        for (const long g : offs) {
            const BigNat x = g < 0 ? BigNat(half - static_cast<unsigned long>(-g)) : BigNat(half + static_cast<unsigned long>(g));
            BigNat prod = 1;
            std::size_t i = 0;
            for (; i < primes.size() && prod <= pn; ++i) {
                const BigNat p = primes[i];
                if (p * p > x)
                    break;
                prod *= p;
            }
            if (prod <= pn && i == primes.size())
                throw RangeError("sieve exhausted before sqrt(" + dec(x) + ")");
            ++evaluated;
            const bool holds = pn < prod;
            if (!holds) {
                res.violations.push_back(x);
                const bool allowed = x <= 106;
                r.add({"n=" + std::to_string(n) + " x=" + dec(x), log_big(prod), log_big(pn), allowed, true,
                       allowed ? "violation at or below 106" : "violation above 106"});
            }
        }
    }
    std::string list;
    for (const auto& v : res.violations)
        list += (list.empty() ? "" : ", ") + dec(v);
    r.note(std::to_string(evaluated) + " values checked for 2 <= n <= " + std::to_string(n_max) + "; violations: {"
           + list + "}");
    r.max_residual = res.violations.empty() ? 0.0 : mpz_get_d(res.violations.back().get_mpz_t());
    r.finalize();
    return res;
}

CheckReport denns_compare(const PrimeTable& table, const UniversalPrimorial& x, const UniversalPrimorial& xbar,
                          const HeuristicParams& params)
{
    x.validate();
    xbar.validate();
    const BigNat vx = realize(table, x);
    const BigNat vb = realize(table, xbar);
    require_same_p_set(table, vx, vb);
    return compare_exact(describe(x) + " vs " + describe(xbar) + " k=" + std::to_string(params.k),
                         lk_exact(table, x, params), lk_exact(table, xbar, params));
}

CheckReport denns_compare(const PrimeTable& table, const UniversalPrimorial& x, const BigNat& xbar, long g,
                          const HeuristicParams& params)
{
    x.validate();
    const BigNat vx = realize(table, x);
    require_same_p_set(table, vx, xbar);
    return compare_exact(describe(x) + " vs " + dec(xbar) + " (g=" + std::to_string(g) + ") k=" + std::to_string(params.k),
                         lk_exact(table, x, params), lk_general_exact(table, xbar, g, params));
}

CheckReport denns_sweep(const PrimeTable& table, std::span<const UniversalPrimorial> targets,
                        std::optional<std::uint64_t> xbar_max, double c)
{
    CheckReport r;
    r.check_name = xbar_max ? "L_k maximality sweep (xbar <= " + std::to_string(*xbar_max) + ")"
                            : "L_k maximality sweep (full interval)";
    r.max_residual = -std::numeric_limits<double>::infinity();
    std::size_t comparisons = 0;
    std::size_t counterexamples = 0;
    for (const auto& t : targets) {
        t.validate();
        const BigNat vx = realize(table, t);
        UniversalPrimorial partner = t;
        partner.g = -t.g;
        const BigNat vp = realize(table, partner);
        const std::size_t d = sqrt_prime_count(table, vx);
        if (d + 1 > table.size())
            throw RangeError("sieve too small for the sqrt interval of " + dec(vx));
        const std::uint64_t lo = static_cast<std::uint64_t>(table.nth_prime(d)) * table.nth_prime(d);
        std::uint64_t hi = static_cast<std::uint64_t>(table.nth_prime(d + 1)) * table.nth_prime(d + 1) - 1;
        if (xbar_max)
            hi = std::min(hi, *xbar_max);
        std::size_t here = 0;
        std::array<ExactRatio, 2> lx;
        for (int k = 1; k <= 2; ++k)
            lx[k - 1] = lk_exact(table, t, HeuristicParams{k, c, EvalDomain::exact_rational});
        for (std::uint64_t xb = std::max<std::uint64_t>(lo | 1, 3); xb <= hi; xb += 2) {
            const BigNat vb = xb;
            if (vb == vx || vb == vp)
                continue;
            for (const long g : {1L, -1L}) {
                for (int k = 1; k <= 2; ++k) {
                    const HeuristicParams p{k, c, EvalDomain::exact_rational};
                    ExactRatio lb;
                    try {
                        lb = lk_general_exact(table, vb, g, p);
                    } catch (const CapabilityError&) {
                        continue;
                    }
                    ++comparisons;
                    ++here;
                    const double diff = lb.to_double() - lx[k - 1].to_double();
                    r.max_residual = std::max(r.max_residual, diff);
                    if (!exact_greater(lx[k - 1], lb)) {
                        ++counterexamples;
                        if (counterexamples <= kMaxListed)
                            r.add({describe(t) + " vs " + std::to_string(xb) + " (g=" + std::to_string(g)
                                       + ") k=" + std::to_string(k),
                                   lx[k - 1].to_double(), lb.to_double(), false, true, "counterexample"});
                    }
                }
            }
        }
        r.note(describe(t) + " = " + dec(vx) + ": xbar in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], "
               + std::to_string(here) + " comparisons"
               + (here == 0 ? " (no qualifying xbar)" : ""));
    }
    if (comparisons == 0)
        r.max_residual = 0.0;
    r.add({"total", static_cast<double>(comparisons), 0.0, counterexamples == 0, true,
           std::to_string(counterexamples) + " counterexamples"});
    r.finalize();
    return r;
}

double divergence_partial_sum(const PrimeTable& table, std::uint64_t p_max, std::uint64_t N_max)
{
    if (p_max > table.limit())
        throw RangeError("p_max exceeds the sieve limit");
    if (N_max == 0)
        throw DomainError("N_max must be positive");
    CompensatedSum acc;
    for (const auto p : table.primes()) {
        if (p > p_max)
            break;
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t N = 1; N <= N_max; ++N) {
            const double t = lp / (p + std::log(N / 2.0));
            acc += t * t;
        }
    }
    return acc.value();
}

double divergence_threshold_root()
{
    auto f = [](double N) { return N - std::pow(2.0 + std::log(N / 2.0), 2); };
    double lo = 10.0;
    double hi = 30.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CheckReport check_divergence(const PrimeTable& table, std::uint64_t p_max, std::uint64_t N_max)
{
    if (N_max < 19)
        throw DomainError("N_max must be at least 19");
    CheckReport r;
    r.check_name = "divergence of the twin expectation sum";
    auto gap = [](double N) { return N - std::pow(2.0 + std::log(N / 2.0), 2); };

    const double root = divergence_threshold_root();
    r.add({"threshold root", root, 17.262, std::fabs(root - 17.262) <= 1e-2, true, "N = (2 + ln(N/2))^2 (tol 0.01)"});
    r.add({"N=17", gap(17.0), 0.0, gap(17.0) < 0.0, true, "threshold inequality fails at 17"});
    std::uint64_t bad = 0;
    for (std::uint64_t N = 18; N <= N_max; ++N)
        if (!(gap(static_cast<double>(N)) > 0.0))
            ++bad;
    r.add({"18<=N<=" + std::to_string(N_max), static_cast<double>(bad), 0.0, bad == 0, true,
           "N > (2 + ln(N/2))^2 violations"});

    const double l2 = std::numbers::ln2;
    CompensatedSum head;
    for (int N = 1; N <= 18; ++N)
        head += std::pow(l2 / (2.0 + std::log(N / 2.0)), 2);
    r.add({"p=2 head N<=18", head.value(), 1.0659, std::fabs(head.value() - 1.0659) <= 1e-4, true,
           "head constant (tol 1e-4)"});

    CompensatedSum tail;
    CompensatedSum harmonic;
    for (std::uint64_t N = 19; N <= N_max; ++N) {
        tail += std::pow(l2 / (2.0 + std::log(N / 2.0)), 2);
        harmonic += l2 * l2 / static_cast<double>(N);
    }
    r.add({"p=2 tail 19<=N<=" + std::to_string(N_max), tail.value(), harmonic.value(),
           tail.value() > harmonic.value(), true, "dominates ln^2(2)/N"});

    const double s1 = divergence_partial_sum(table, p_max, N_max);
    const double s2 = divergence_partial_sum(table, p_max, 2 * N_max);
    r.add({"partial sum p<=" + std::to_string(p_max) + " N<=" + std::to_string(N_max), s1, s2, s1 < s2, true,
           "strictly increases when N_max doubles"});
    r.max_residual = std::fabs(root - 17.262);
    r.finalize();
    return r;
}

CheckReport lemma_eq_constants()
{
    CheckReport r;
    r.check_name = "log-log correction constants";
    const double e = epsilon0(LogPoint::from_natural(599));
    const double a = std::log1p(e);
    const double b = -std::log1p(-e);
    r.add({"eps0(599)", e, 0.14271, std::fabs(e - 0.14271) <= 5e-6, true, "input constant"});
    r.add({"ln(1+eps0(599))", a, 0.1334, std::fabs(a - 0.1334) <= 1e-3, true, "tol 1e-3"});
    r.add({"-ln(1-eps0(599))", b, 0.15398, std::fabs(b - 0.15398) <= 1e-3, true, "tol 1e-3"});
    r.max_residual = std::max(std::fabs(a - 0.1334), std::fabs(b - 0.15398));
    r.finalize();
    return r;
}

std::pair<std::uint64_t, double> brun_partial_sum(const PrimeTable& table, std::uint64_t x)
{
    if (x < 3)
        throw DomainError("x must be at least 3");
    const double l = std::log(static_cast<double>(x));
    const double ll = std::log(l);
    return {table.twin_count(x), static_cast<double>(x) * ll * ll / (l * l)};
}

CheckReport brun_report(const PrimeTable& table, std::span<const std::uint64_t> xs)
{
    CheckReport r;
    r.check_name = "twin count against x (ln ln x)^2 / ln^2 x";
    for (const auto x : xs) {
        const auto [count, env] = brun_partial_sum(table, x);
        const double ratio = static_cast<double>(count) / env;
        r.max_residual = std::max(r.max_residual, ratio);
        r.add({"x=" + std::to_string(x) + " pi2", static_cast<double>(count), env, true, false,
               "ratio " + format_real(ratio)});
    }
    r.finalize();
    return r;
}

CheckReport check_int5(const PrimeTable& table, std::size_t n_max, const HeuristicParams& params)
{
    params.validate();
    CheckReport r;
    r.check_name = "weak L_k sandwich for p_n# +- 1";
    std::size_t outside = 0;
    std::size_t total = 0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        for (const int g : {-1, 1}) {
            const auto u = UniversalPrimorial::plain(n, g);
            double L = 0.0;
            std::string how = "log";
            if (params.domain == EvalDomain::exact_rational) {
                try {
                    L = lk_exact(table, u, params).to_double();
                    how = "exact";
                } catch (const RangeError&) {
                    L = lk(table, u, HeuristicParams{params.k, params.c, EvalDomain::log_domain});
                }
            } else {
                L = lk(table, u, params);
            }
            const double A = lk_asymptotic(table, u, params);
            const double lx = log_realized(table, u);
            const double lp = ln_pn(table, n);
            const double lo = A * sandwich_lower_factor(lx, lp);
            const double hi = A * sandwich_upper_factor(lx, lp);
            const bool ok = lo < L && L < hi;
            ++total;
            if (!ok)
                ++outside;
            r.max_residual = std::max(r.max_residual, std::max(lo / L, L / hi));
            r.add({"n=" + std::to_string(n) + " g=" + std::to_string(g), L, ok ? hi : (L <= lo ? lo : hi), ok, false,
                   how + (ok ? " inside" : (L <= lo ? " below lower bound" : " above upper bound"))});
        }
    }
    r.note(std::to_string(outside) + " of " + std::to_string(total) + " values outside the sandwich (k="
           + std::to_string(params.k) + ", c=" + format_real(params.c) + ")");
    r.finalize();
    return r;
}

CheckReport check_exact_vs_log(const PrimeTable& table, std::size_t n_max, std::span<const double> cs, double rel_tol)
{
    CheckReport r;
    r.check_name = "exact vs log-domain L_k";
    std::size_t compared = 0;
    std::vector<std::string> skipped;
    for (const double c : cs) {
        for (int k = 1; k <= 2; ++k) {
            for (std::size_t n = 2; n <= n_max; ++n) {
                for (const int g : {-1, 1}) {
                    const auto u = UniversalPrimorial::plain(n, g);
                    const HeuristicParams pe{k, c, EvalDomain::exact_rational};
                    const HeuristicParams pl{k, c, EvalDomain::log_domain};
                    ExactRatio ex;
                    try {
                        ex = lk_exact(table, u, pe);
                    } catch (const RangeError&) {
                        skipped.push_back("n=" + std::to_string(n) + " g=" + std::to_string(g) + " k="
                                          + std::to_string(k) + " c=" + format_real(c, 6));
                        continue;
                    }
                    const double e = ex.to_double();
                    const double l = lk(table, u, pl);
                    const double rel = std::fabs(l / e - 1.0);
                    ++compared;
                    r.max_residual = std::max(r.max_residual, rel);
                    if (rel > rel_tol)
                        r.add({"n=" + std::to_string(n) + " g=" + std::to_string(g) + " k=" + std::to_string(k)
                                   + " c=" + format_real(c, 6),
                               l, e, false, true, "relative gap " + format_real(rel, 3)});
                }
            }
        }
    }
    r.add({"compared", static_cast<double>(compared), static_cast<double>(skipped.size()), compared > 0, true,
           "combinations compared / skipped"});
    if (!skipped.empty()) {
        std::string s;
        for (std::size_t i = 0; i < skipped.size() && i < kMaxListed; ++i)
            s += (i ? "; " : "") + skipped[i];
        if (skipped.size() > kMaxListed)
            s += "; ...";
        r.note(std::to_string(skipped.size()) + " combinations skipped (exact cutoff beyond sieve): " + s);
    }
    r.finalize();
    return r;
}

}  // namespace primlab
