#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primorial/bignum.hpp"
#include "primorial/heuristics.hpp"
#include "primorial/prime_table.hpp"
#include "primorial/report.hpp"
#include "primorial/search_cache.hpp"

namespace primlab {

/// Largest n searched by default; larger searches need the long-run switch.
inline constexpr std::size_t kDefaultSearchCeiling = 2000;

struct SearchOptions {
    unsigned jobs = 1;
    /// Called after each completed n (possibly from worker threads, serialized).
    std::function<void(std::size_t n, std::size_t done, std::size_t total)> progress;
};

/// Tests p_n# - 1 and p_n# + 1 for 1 <= n <= n_max through the cache.
/// Records come back ordered by (n, form) regardless of jobs.
std::vector<SearchRecord> search_primorial_primes(const PrimeTable& table, std::size_t n_max, SearchCache& cache,
                                                  const SearchOptions& opts = {});

/// All n <= n_max with both p_n# - 1 and p_n# + 1 prime. The minus form is
/// tested first and the plus form only when the minus form passes.
std::vector<std::size_t> search_twins(const PrimeTable& table, std::size_t n_max, SearchCache& cache,
                                      const SearchOptions& opts = {});

/// Recomputes every cached digest and re-tests every passing record.
CheckReport verify_cache(const PrimeTable& table, const SearchCache& cache);

/// Count of primorial primes with n <= N among search records.
std::size_t count_primorial_primes(std::span<const SearchRecord> records, std::size_t N);

/// Actual count (when N <= search_limit), interval [2 t_lo ln p_N, 2 t_hi ln p_N]
/// and the reference column 2 e^gamma ln p_N.
std::vector<TableRow> table1(const PrimeTable& table, std::span<const std::size_t> Ns, SearchCache* cache,
                             std::size_t search_limit, double theta1_low = 1.0, double theta1_high = 2.0,
                             const SearchOptions& opts = {});

std::vector<TableRow> table2(const PrimeTable& table, std::span<const std::size_t> Ns);

/// expected = theta2 * omega_sum(N); actual twin count when N <= search_limit.
std::vector<TableRow> table3(const PrimeTable& table, std::span<const std::size_t> Ns, SearchCache* cache,
                             std::size_t search_limit, double theta2 = 4.0, const SearchOptions& opts = {});

TextTable render_table1(std::span<const TableRow> rows, int digits = 9);
TextTable render_table2(std::span<const TableRow> rows, int digits = 9);
TextTable render_table3(std::span<const TableRow> rows, int digits = 9);

enum class LemmaAOffsets {
    unit,    // x = p_n#/2 - 1 and p_n#/2 + 1
    parity,  // x = p_n#/2 + 2 and p_n#/2 + 4 (N = 1 parity rule)
};

struct LemmaAResult {
    CheckReport report;
    std::vector<BigNat> violations;
};

/// Checks p_n# < prod_{p <= sqrt x} p for 2 <= n <= n_max. Violations with
/// x <= 106 are expected; any larger violation fails the check.
LemmaAResult check_lemma_a(const PrimeTable& table, std::size_t n_max, LemmaAOffsets offsets = LemmaAOffsets::unit);

/// Compares L_k(x) against L_k(xbar) in exact rationals and asserts L_k(x) > L_k(xbar).
/// PreconditionError when the primes below sqrt differ or xbar equals x.
CheckReport denns_compare(const PrimeTable& table, const UniversalPrimorial& x, const UniversalPrimorial& xbar,
                          const HeuristicParams& params);
/// Same with an arbitrary odd xbar whose exclusion set comes from factoring xbar - g.
CheckReport denns_compare(const PrimeTable& table, const UniversalPrimorial& x, const BigNat& xbar, long g,
                          const HeuristicParams& params);

/// Brute-force maximality sweep: for every target p_n# +- 1 and every odd xbar with
/// the same primes below sqrt (xbar <= xbar_max, or the whole interval
/// [p_d^2, p_{d+1}^2) when xbar_max is nullopt), offsets g = +-1, excluding the
/// target and its partner; k in {1, 2}.
CheckReport denns_sweep(const PrimeTable& table, std::span<const UniversalPrimorial> targets,
                        std::optional<std::uint64_t> xbar_max, double c = 0.5);

/// sum_{p <= p_max} sum_{N=1}^{N_max} (ln p / (p + ln(N/2)))^2.
double divergence_partial_sum(const PrimeTable& table, std::uint64_t p_max, std::uint64_t N_max);

/// Root of N = (2 + ln(N/2))^2 near 17.
double divergence_threshold_root();

/// Threshold root, integer threshold inequality, the 1.0659 head constant and monotonicity.
CheckReport check_divergence(const PrimeTable& table, std::uint64_t p_max, std::uint64_t N_max);

/// ln(1 + eps0(599)) and -ln(1 - eps0(599)) against 0.1334 and 0.15398.
CheckReport lemma_eq_constants();

/// (pi_2(x), x (ln ln x)^2 / ln^2 x).
std::pair<std::uint64_t, double> brun_partial_sum(const PrimeTable& table, std::uint64_t x);
CheckReport brun_report(const PrimeTable& table, std::span<const std::uint64_t> xs);

/// L_k(p_n# +- 1) against the weak sandwich
/// A f_lo(x, p_n) < L_k < A f_hi(x, p_n), A = theta_k (ln p_n / ln x)^k, for 2 <= n <= n_max.
/// Reported only.
CheckReport check_int5(const PrimeTable& table, std::size_t n_max, const HeuristicParams& params);

/// Exact rational vs log-domain L_k for p_n# +- 1 with n <= n_max, k in {1,2}
/// and every c in `cs`. Combinations whose exact cutoff leaves the sieve are
/// skipped and listed.
CheckReport check_exact_vs_log(const PrimeTable& table, std::size_t n_max, std::span<const double> cs,
                               double rel_tol = 1e-6);

}  // namespace primlab
