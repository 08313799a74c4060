#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "po2fact/engine.hpp"
#include "po2fact/factorize.hpp"
#include "po2fact/theory.hpp"

namespace po2fact {

struct SizeNK {
    int n = 0;
    int k = 0;

    friend bool operator==(const SizeNK&, const SizeNK&) = default;
};

/// Sweep description. A cell always aggregates at least min_entries matrix
/// entries: the effective trial count is max(trials, ceil(min_entries/(N*K))).
struct BenchmarkSpec {
    std::vector<SizeNK> sizes;
    std::vector<int> q_values;
    std::vector<Rational> r_values;
    std::vector<Rational> budgets;  // table3 additions budgets; empty = all six
    int trials = 1;
    std::uint64_t seed = 1;
    std::int64_t min_entries = 100000;
};

struct BenchmarkCell {
    int n = 0;
    int k = 0;
    int q = 0;
    Rational r{1, 1};
    int trials = 0;
    double mean_snr_db = 0.0;   // power-aggregated over all trials
    double stderr_db = 0.0;
    double adds_per_entry = 0.0;
};

struct BenchmarkResult {
    std::vector<BenchmarkCell> cells;
    std::vector<std::string> notes;  // skipped cells etc.
};

/// N x K iid standard normal matrix from the counter-based generator
/// (SplitMix64 stream, Box-Muller transform), filled row-major. Identical
/// seed, identical matrix.
DenseMatrix gen_gaussian(int n, int k, std::uint64_t seed);

/// Sizes x Q sweep at R = 1.
BenchmarkResult run_table1(const BenchmarkSpec& spec, ExecMode mode = ExecMode::Parallel);

/// K = 1024 with N = 10/R rows, sweeping the R list against the Q list.
BenchmarkResult run_table2(const BenchmarkSpec& spec, ExecMode mode = ExecMode::Parallel);

/// For each additions budget in {1/4, 1/3, 1/2, 1, 2, 3} and each K in the
/// spec sizes, evaluates every rate R in {1, 1/2, ..., 1/12} whose Q =
/// budget/R is a positive integer, with N = rows_for_aspect(K, R).
/// Infeasible (budget, R) pairs are skipped with a note.
BenchmarkResult run_table3(const BenchmarkSpec& spec, ExecMode mode = ExecMode::Parallel);

/// The additions budgets swept by run_table3.
std::vector<Rational> table3_budgets();

/// Best cell of a table3 result for one (k, budget) pair, where a cell
/// belongs to the budget when q * r equals it exactly.
std::optional<BenchmarkCell> best_cell_for_budget(const BenchmarkResult& result, int k,
                                                  Rational budget);

/// CSV with header n,k,q,r,trials,snr_db,stderr_db,adds_per_entry. Rates are
/// written as exact fractions. Byte-identical output for identical results.
void emit_csv(const BenchmarkResult& result, std::ostream& out);
void emit_csv(const BenchmarkResult& result, const std::filesystem::path& path);
BenchmarkResult parse_csv(std::istream& in);

/// Fig-1-style data: the analytic information curve sampled log-uniformly on
/// aspect ratios [1, 1e4] plus one marker row per benchmark size
/// (largest adjacent-Q SNR gap divided by 20*log10(2)).
void emit_fig1(const BenchmarkResult& table1, std::ostream& out);

/// Benchmark rows grouped per size and ordered by Q, as consumed by
/// fig1_markers.
std::vector<SnrTableRow> result_rows(const BenchmarkResult& result);

} // namespace po2fact
