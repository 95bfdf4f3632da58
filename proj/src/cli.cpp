#include "primorial/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <regex>
#include <sstream>

#include "primorial/analytic_bounds.hpp"
#include "primorial/bignum.hpp"
#include "primorial/errors.hpp"
#include "primorial/experiments.hpp"
#include "primorial/heuristics.hpp"
#include "primorial/numeric.hpp"
#include "primorial/primality.hpp"
#include "primorial/prime_table.hpp"
#include "primorial/search_cache.hpp"

namespace primlab {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::size_t> default_rows()
{
    return {10, 100, 1000, 10000, 100000};
}

// Parsed "p6#+1", "p_6#-1" or a plain decimal.
BigNat parse_value(const PrimeTable* table, const std::string& text, const std::function<const PrimeTable&(std::uint64_t)>& need)
{
    static const std::regex form(R"(^p_?(\d+)#([+-]\d+)?$)");
    std::smatch m;
    if (std::regex_match(text, m, form)) {
        const auto n = static_cast<std::size_t>(std::stoull(m[1].str()));
        const auto& t = table ? *table : need(PrimeTable::nth_prime_upper_estimate(std::max<std::size_t>(n, 6)));
        BigNat v = primorial(t, n).value;
        if (m[2].matched) {
            const long g = std::stol(m[2].str());
            v += g;
        }
        return v;
    }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("cannot parse '" + text + "' as a natural number or p<n>#<+-g>");
    return BigNat(text);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw DomainError("range must look like lo:hi");
    try {
        return {std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw DomainError("range must look like lo:hi with natural numbers");
    }
}

class Session {
public:
    Session(CliConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

    const PrimeTable& table(std::uint64_t need = 0)
    {
        const std::uint64_t want = std::max(cfg_.sieve_limit, need);
        if (!table_ || table_->limit() < want) {
            const auto t0 = std::chrono::steady_clock::now();
            table_ = PrimeTable::sieve_up_to(want);
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
            err_ << "sieved to " << want << " (" << table_->size() << " primes, " << ms.count() << " ms)\n";
        }
        return *table_;
    }

    SearchCache& cache()
    {
        if (!cache_) {
            const auto path = resolve_cache_path(cfg_.cache_path);
            if (path) {
                cache_ = std::make_unique<SearchCache>(*path);
                err_ << "cache " << path->string() << " (" << cache_->size() << " records)\n";
            } else {
                cache_ = std::make_unique<SearchCache>();
            }
        }
        return *cache_;
    }

    SearchOptions search_options()
    {
        SearchOptions o;
        o.jobs = cfg_.jobs;
        o.progress = [this](std::size_t n, std::size_t done, std::size_t total) {
            if (done % 50 == 0 || done == total)
                err_ << "  searched " << done << "/" << total << " (last n=" << n << ")\n";
        };
        return o;
    }

    std::size_t search_limit() const { return cfg_.long_run ? kDefaultPrimorialMax : kDefaultSearchCeiling; }

    void require_search(std::size_t n_max) const
    {
        if (n_max > search_limit())
            throw ResourceError("searching to n=" + std::to_string(n_max) + " needs --long-run (default ceiling "
                                + std::to_string(kDefaultSearchCeiling) + ")");
    }

    std::uint64_t sieve_for_n(std::size_t n) const
    {
        return std::max<std::uint64_t>(PrimeTable::nth_prime_upper_estimate(std::max<std::size_t>(n, 6)), 2);
    }

    HeuristicParams params(bool exact) const
    {
        HeuristicParams p{cfg_.k, cfg_.c, exact ? EvalDomain::exact_rational : EvalDomain::log_domain};
        p.validate();
        return p;
    }

    void print(const TextTable& t) { out_ << emit(t, cfg_.output_format); }

    int print(const CheckReport& r)
    {
        out_ << emit(r, cfg_.output_format, cfg_.digits);
        return r.passed ? 0 : kExitFail;
    }

    std::string num(double v) const { return format_real(v, cfg_.digits); }

    const CliConfig& cfg() const { return cfg_; }
    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

private:
    CliConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<PrimeTable> table_;
    std::unique_ptr<SearchCache> cache_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"primorial-lab: primality heuristics for primorials, explicit prime bounds and their tables"};
    app.name("primorial-lab");
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    std::string format = "md";
    std::string cache_flag;
    app.add_option("--sieve-limit", cfg.sieve_limit, "Sieve upper bound (raised automatically when a command needs more)")
        ->capture_default_str();
    app.add_option("--c", cfg.c, "Cutoff exponent c in [1/2, 1]")->capture_default_str();
    app.add_option("--k", cfg.k, "1 = one of the pair prime, 2 = both prime")->check(CLI::IsMember({1, 2}))->capture_default_str();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "md"}))->capture_default_str();
    app.add_option("--cache", cache_flag, "Search cache file (JSONL); overrides $PRIMORIAL_LAB_CACHE");
    app.add_option("--jobs", cfg.jobs, "Parallel primality workers")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--long-run", cfg.long_run, "Allow searches beyond n = 2000");
    app.add_option("--digits", cfg.digits, "Significant digits for real output")->check(CLI::Range(1, 17))->capture_default_str();

    std::function<int(Session&)> action;

    // sieve
    auto* sieve = app.add_subcommand("sieve", "Prime counting pi(x), Chebyshev theta(x), n-th prime and twin counts");
    std::vector<std::uint64_t> sieve_x;
    std::vector<std::size_t> sieve_nth;
    sieve->add_option("--x", sieve_x, "Points x for pi(x), theta(x), pi_2(x)")->delimiter(',');
    sieve->add_option("--nth", sieve_nth, "Indices n for p_n")->delimiter(',');
    sieve->callback([&] {
        action = [&](Session& s) {
            std::uint64_t need = 0;
            for (auto x : sieve_x)
                need = std::max(need, x + 2);
            for (auto n : sieve_nth)
                need = std::max(need, s.sieve_for_n(n));
            const auto& t = s.table(need);
            TextTable tt;
            if (sieve_x.empty() && sieve_nth.empty()) {
                tt.columns = {"limit", "primes", "largest", "theta"};
                tt.rows.push_back({std::to_string(t.limit()), std::to_string(t.size()),
                                   std::to_string(t.nth_prime(t.size())), s.num(t.theta_of_index(t.size()))});
            } else {
                tt.columns = {"query", "x", "pi", "theta", "pi2"};
                for (auto x : sieve_x) {
                    const auto st = t.stats_at(x);
                    tt.rows.push_back({"x", std::to_string(x), std::to_string(st.pi), s.num(st.theta),
                                       std::to_string(t.twin_count(x))});
                }
                for (auto n : sieve_nth) {
                    const auto p = t.nth_prime(n);
                    tt.rows.push_back({"nth=" + std::to_string(n), std::to_string(p), std::to_string(n),
                                       s.num(t.theta_of_index(n)), std::to_string(t.twin_count(p))});
                }
            }
            s.print(tt);
            return 0;
        };
    });

    // primorial
    auto* prim = app.add_subcommand("primorial", "Primorial p_n# and universal primorial N/2 * p_n# + g");
    std::size_t prim_n = 1;
    std::uint64_t prim_N = 2;
    std::optional<int> prim_g;
    bool prim_show = false;
    prim->add_option("--n", prim_n, "Index n")->required();
    prim->add_option("--N", prim_N, "N in K = N/2")->capture_default_str();
    prim->add_option("--g", prim_g, "Offset g (omit for the bare primorial)");
    prim->add_flag("--show", prim_show, "Print the decimal value");
    prim->callback([&] {
        action = [&](Session& s) {
            const auto& t = s.table(s.sieve_for_n(prim_n));
            TextTable tt;
            tt.columns = {"n", "N", "g", "digits", "ln_value"};
            BigNat v;
            double lv = 0.0;
            if (prim_g) {
                UniversalPrimorial u{prim_N, prim_n, *prim_g};
                u.validate();
                v = realize(t, u);
                lv = log_realized(t, u);
            } else {
                const auto p = primorial(t, prim_n);
                v = p.value;
                lv = p.log_value;
            }
            const std::string d = to_decimal(v);
            tt.rows.push_back({std::to_string(prim_n), std::to_string(prim_N), prim_g ? std::to_string(*prim_g) : "",
                               std::to_string(d.size()), s.num(lv)});
            if (prim_show) {
                tt.columns.push_back("value");
                tt.rows.back().push_back(d);
            }
            s.print(tt);
            return 0;
        };
    });

    // isprime
    auto* isp = app.add_subcommand("isprime", "Primality verdict: trial division, deterministic Miller-Rabin or Baillie-PSW");
    std::vector<std::string> isp_values;
    isp->add_option("values", isp_values, "Decimal numbers or p<n>#+-g forms")->required();
    isp->callback([&] {
        action = [&](Session& s) {
            TextTable tt;
            tt.columns = {"value", "digits", "classification", "method", "witness"};
            for (const auto& text : isp_values) {
                const BigNat v = parse_value(nullptr, text, [&s](std::uint64_t need) -> const PrimeTable& { return s.table(need); });
                const auto verdict = is_prime(v);
                tt.rows.push_back({text, std::to_string(to_decimal(v).size()), std::string(to_string(verdict.classification)),
                                   std::string(to_string(verdict.method)),
                                   verdict.witness ? std::to_string(*verdict.witness) : ""});
            }
            s.print(tt);
            return 0;
        };
    });

    // lk
    auto* lkc = app.add_subcommand("lk", "Heuristic primality probability L_k of N/2 * p_n# + g");
    std::vector<std::size_t> lk_n;
    std::uint64_t lk_N = 2;
    int lk_g = 1;
    lkc->add_option("--n", lk_n, "Indices n")->required()->delimiter(',');
    lkc->add_option("--N", lk_N, "N in K = N/2")->capture_default_str();
    lkc->add_option("--g", lk_g, "Offset g")->capture_default_str();
    lkc->callback([&] {
        action = [&](Session& s) {
            std::size_t nmax = *std::max_element(lk_n.begin(), lk_n.end());
            const auto& t = s.table(s.sieve_for_n(nmax));
            const auto p = s.params(false);
            TextTable tt;
            tt.columns = {"n", "N", "g", "L_k", "L_k_exact", "asymptotic", "n^k*L_k"};
            for (auto n : lk_n) {
                UniversalPrimorial u{lk_N, n, lk_g};
                u.validate();
                const double L = lk(t, u, p);
                std::string exact;
                try {
                    exact = s.num(lk_exact(t, u, s.params(true)).to_double());
                } catch (const RangeError&) {
                } catch (const DomainError&) {
                }
                std::string asym;
                if (n > 1)
                    asym = s.num(lk_asymptotic(t, u, p));
                tt.rows.push_back({std::to_string(n), std::to_string(lk_N), std::to_string(lk_g), s.num(L), exact, asym,
                                   s.num(L * std::pow(static_cast<double>(n), p.k))});
            }
            s.print(tt);
            return 0;
        };
    });

    // theta
    auto* th = app.add_subcommand("theta", "Constant theta_k (1/c, or the twin-prime product ratio for k = 2) and Pi_2");
    std::uint64_t th_cut = 1'000'000;
    std::size_t th_n = 3;
    th->add_option("--x-cutoff", th_cut, "Upper product cutoff x^c")->capture_default_str();
    th->add_option("--n", th_n, "Index n of the lower cutoff p_n")->capture_default_str();
    th->callback([&] {
        action = [&](Session& s) {
            const auto& t = s.table(th_cut);
            const auto v = theta_k(t, s.params(false), th_cut, th_n);
            TextTable tt;
            tt.columns = {"k", "c", "x_cutoff", "n", "theta_k", "Pi2(x_cutoff)"};
            tt.rows.push_back({std::to_string(v.k), s.num(v.c), std::to_string(v.x_cutoff), std::to_string(v.n), s.num(v.value),
                               s.num(twin_prime_constant(t, th_cut))});
            s.print(tt);
            return 0;
        };
    });

    // omega
    auto* om = app.add_subcommand("omega", "Series sum of (ln p / p)^2 over the first N primes and its elementary bracket");
    std::vector<std::size_t> om_N;
    bool om_bounds = false;
    om->add_option("--N", om_N, "Prime counts N")->delimiter(',');
    om->add_flag("--bounds", om_bounds, "Also print the elementary lower/upper bracket");
    om->callback([&] {
        action = [&](Session& s) {
            std::size_t nmax = om_N.empty() ? 17 : *std::max_element(om_N.begin(), om_N.end());
            const auto& t = s.table(s.sieve_for_n(nmax));
            if (!om_N.empty())
                s.print(render_table2(table2(t, om_N), s.cfg().digits));
            if (om_bounds || om_N.empty()) {
                const auto b = omega_elementary_bounds(t);
                TextTable tt;
                tt.columns = {"partial_p<=59", "tail", "lower", "upper"};
                tt.rows.push_back({s.num(b.partial), s.num(b.tail), s.num(b.lower), s.num(b.upper)});
                s.print(tt);
            }
            return 0;
        };
    });

    // tables
    auto* tab = app.add_subcommand("tables", "Reproduce the primorial-prime (1), Omega (2) and twin-pair (3) tables");
    int which = 2;
    std::vector<std::size_t> tab_N;
    double th_lo = 1.0;
    double th_hi = 2.0;
    double theta2 = 4.0;
    tab->add_option("--which", which, "Table number")->check(CLI::IsMember({1, 2, 3}))->required();
    tab->add_option("--N", tab_N, "Rows N (default 10,100,1000,10000,100000)")->delimiter(',');
    tab->add_option("--theta1-low", th_lo, "Lower theta_1 for table 1")->capture_default_str();
    tab->add_option("--theta1-high", th_hi, "Upper theta_1 for table 1")->capture_default_str();
    tab->add_option("--theta2", theta2, "theta_2 for table 3")->capture_default_str();
    tab->callback([&] {
        action = [&](Session& s) {
            if (tab_N.empty())
                tab_N = default_rows();
            const std::size_t nmax = *std::max_element(tab_N.begin(), tab_N.end());
            const auto& t = s.table(s.sieve_for_n(nmax));
            if (which == 2) {
                s.print(render_table2(table2(t, tab_N), s.cfg().digits));
                return 0;
            }
            auto& cache = s.cache();
            const auto limit = std::min(s.search_limit(), nmax);
            if (which == 1)
                s.print(render_table1(table1(t, tab_N, &cache, limit, th_lo, th_hi, s.search_options()), s.cfg().digits));
            else
                s.print(render_table3(table3(t, tab_N, &cache, limit, theta2, s.search_options()), s.cfg().digits));
            return 0;
        };
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Machine checks of the explicit bounds, named constants and enumerations");
    std::string check;
    std::string range;
    std::size_t v_nmax = 0;
    std::size_t v_samples = 1000;
    std::uint64_t v_seed = 1;
    std::string v_offsets = "unit";
    std::string v_xbar = "500";
    std::vector<std::uint64_t> v_points;
    ver->add_option("--check", check,
                    "t2 (pi/theta deviation), dusart-pi (pi(x) envelopes), mertens (Mertens product bands), "
                    "constants (named bound constants), lemma-a (primorial below product of primes up to sqrt x), "
                    "denns (maximality of L_k for p_n#+-1), lemma-eq (log-log correction constants), "
                    "brun (twin count envelope), int1 (ln p_n / theta(p_n) sandwich), int5 (weak L_k sandwich), "
                    "trudgian (theta(x) bound), exact-log (exact vs log L_k), divergence (twin expectation sum), "
                    "omega-bounds (elementary Omega bracket)")
        ->required()
        ->check(CLI::IsMember({"t2", "dusart-pi", "mertens", "constants", "lemma-a", "denns", "lemma-eq", "brun", "int1",
                               "int5", "trudgian", "exact-log", "divergence", "omega-bounds"}));
    ver->add_option("--range", range, "lo:hi for sweeps");
    ver->add_option("--n-max", v_nmax, "Largest n for enumerations");
    ver->add_option("--samples", v_samples, "Sample count for dusart-pi")->capture_default_str();
    ver->add_option("--seed", v_seed, "Sampling seed")->capture_default_str();
    ver->add_option("--offsets", v_offsets, "lemma-a offsets: unit (+-1) or parity (+2, +4)")
        ->check(CLI::IsMember({"unit", "parity"}))
        ->capture_default_str();
    ver->add_option("--xbar-max", v_xbar, "denns: largest xbar, or 'full' for the whole sqrt interval")->capture_default_str();
    ver->add_option("--points", v_points, "Evaluation points (mertens, brun, dusart-pi)")->delimiter(',');
    ver->callback([&] {
        action = [&](Session& s) -> int {
            if (check == "t2" || check == "trudgian") {
                const std::uint64_t floor = check == "t2" ? 599 : 149;
                auto [lo, hi] = range.empty() ? std::pair<std::uint64_t, std::uint64_t>{floor, s.cfg().sieve_limit}
                                              : parse_range(range);
                const auto& t = s.table(hi);
                return s.print(check == "t2" ? check_lemma_t2(t, lo, hi) : check_trudgian(t, lo, hi));
            }
            if (check == "dusart-pi") {
                if (!v_points.empty()) {
                    const auto& t = s.table(*std::max_element(v_points.begin(), v_points.end()));
                    int rc = 0;
                    for (auto x : v_points)
                        rc = std::max(rc, s.print(check_dusart_pi(t, x)));
                    return rc;
                }
                return s.print(check_dusart_pi_sampled(s.table(), v_samples, v_seed));
            }
            if (check == "mertens") {
                if (v_points.empty())
                    v_points = {2'300'000, 10'000'000};
                const auto& t = s.table(*std::max_element(v_points.begin(), v_points.end()));
                return s.print(check_mertens_bands(t, v_points));
            }
            if (check == "constants")
                return s.print(reproduce_section_constants(s.table(2'300'000)));
            if (check == "lemma-a") {
                const auto& t = s.table();
                return s.print(check_lemma_a(t, v_nmax ? v_nmax : 20,
                                             v_offsets == "unit" ? LemmaAOffsets::unit : LemmaAOffsets::parity)
                                   .report);
            }
            if (check == "denns") {
                const auto& t = s.table();
                std::optional<std::uint64_t> xmax;
                if (v_xbar != "full")
                    xmax = std::stoull(v_xbar);
                const std::vector<UniversalPrimorial> targets{UniversalPrimorial::plain(3, -1), UniversalPrimorial::plain(3, 1),
                                                              UniversalPrimorial::plain(5, -1), UniversalPrimorial::plain(5, 1)};
                return s.print(denns_sweep(t, targets, xmax, s.cfg().c));
            }
            if (check == "lemma-eq")
                return s.print(lemma_eq_constants());
            if (check == "brun") {
                if (v_points.empty())
                    v_points = {10, 100, 1000, 10'000, 100'000};
                const auto& t = s.table(*std::max_element(v_points.begin(), v_points.end()) + 2);
                return s.print(brun_report(t, v_points));
            }
            if (check == "int1")
                return s.print(check_int1(s.table()));
            if (check == "int5") {
                const auto& t = s.table();
                return s.print(check_int5(t, v_nmax ? v_nmax : 25, s.params(true)));
            }
            if (check == "exact-log") {
                const auto& t = s.table();
                const double cs[] = {s.cfg().c};
                return s.print(check_exact_vs_log(t, v_nmax ? v_nmax : 25, cs));
            }
            if (check == "divergence") {
                auto [pmax, nmax] = range.empty() ? std::pair<std::uint64_t, std::uint64_t>{1000, 10'000} : parse_range(range);
                return s.print(check_divergence(s.table(pmax), pmax, nmax));
            }
            // omega-bounds
            const auto b = omega_elementary_bounds(s.table());
            CheckReport r;
            r.check_name = "elementary Omega bracket";
            auto add = [&r](const char* what, double v, double target, double tol) {
                r.add({what, v, target, std::fabs(v - target) <= tol, true, "tol " + format_real(tol, 3)});
                r.max_residual = std::max(r.max_residual, std::fabs(v - target));
            };
            add("partial p<=59", b.partial, 0.660163, 1e-6);
            add("tail n>17", b.tail, 0.057134, 1e-6);
            add("lower", b.lower, 0.717297, 1e-5);
            add("upper", b.upper, 0.750159, 1e-5);
            r.finalize();
            return s.print(r);
        };
    });

    // search-primes
    auto* sp = app.add_subcommand("search-primes", "Classify p_n# - 1 and p_n# + 1 for n <= max-n (primorial primes)");
    std::size_t sp_max = 10;
    bool sp_all = false;
    sp->add_option("--max-n", sp_max, "Largest n")->capture_default_str();
    sp->add_flag("--all", sp_all, "List composites too");
    sp->callback([&] {
        action = [&](Session& s) {
            s.require_search(sp_max);
            const auto& t = s.table(s.sieve_for_n(sp_max));
            const auto recs = search_primorial_primes(t, sp_max, s.cache(), s.search_options());
            TextTable tt;
            tt.columns = {"n", "form", "classification", "method"};
            for (const auto& r : recs)
                if (sp_all || r.passes())
                    tt.rows.push_back({std::to_string(r.n), std::string(to_string(r.form)),
                                       std::string(to_string(r.classification)), r.method});
            s.print(tt);
            s.err() << count_primorial_primes(recs, sp_max) << " primorial primes for n <= " << sp_max << "\n";
            return 0;
        };
    });

    // search-twins
    auto* st = app.add_subcommand("search-twins", "Primorial twin pairs: n with p_n# - 1 and p_n# + 1 both prime");
    std::size_t st_max = 10;
    st->add_option("--max-n", st_max, "Largest n")->capture_default_str();
    st->callback([&] {
        action = [&](Session& s) {
            s.require_search(st_max);
            const auto& t = s.table(s.sieve_for_n(st_max));
            const auto twins = search_twins(t, st_max, s.cache(), s.search_options());
            std::string line;
            for (auto n : twins)
                line += (line.empty() ? "" : " ") + std::to_string(n);
            s.out() << line << "\n";
            return 0;
        };
    });

    // cache
    auto* ca = app.add_subcommand("cache", "Inspect or verify the search cache");
    ca->require_subcommand(1);
    auto* ci = ca->add_subcommand("inspect", "Summarize cached records");
    auto* cv = ca->add_subcommand("verify", "Recompute digests and re-test passing records");
    ci->callback([&] {
        action = [&](Session& s) {
            auto& c = s.cache();
            const auto recs = c.records();
            std::size_t n_hi = 0;
            std::size_t passing = 0;
            for (const auto& r : recs) {
                n_hi = std::max(n_hi, r.n);
                passing += r.passes();
            }
            TextTable tt;
            tt.columns = {"path", "records", "max_n", "passing"};
            tt.rows.push_back({c.path() ? c.path()->string() : "", std::to_string(recs.size()), std::to_string(n_hi),
                               std::to_string(passing)});
            s.print(tt);
            return 0;
        };
    });
    cv->callback([&] {
        action = [&](Session& s) {
            auto& c = s.cache();
            std::size_t n_hi = 0;
            for (const auto& r : c.records())
                n_hi = std::max(n_hi, r.n);
            return s.print(verify_cache(s.table(s.sieve_for_n(n_hi)), c));
        };
    });

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i)
            args.emplace_back(argv[i]);
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (!format.empty())
        cfg.output_format = *parse_output_format(format);
    if (!cache_flag.empty())
        cfg.cache_path = cache_flag;

    Session session(cfg, out, err);
    try {
        if (!action)
            throw DomainError("no subcommand");
        HeuristicParams{cfg.k, cfg.c}.validate();
        return action(session);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace primlab
