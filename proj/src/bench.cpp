#include "po2fact/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include "po2fact/rng.hpp"

namespace po2fact {

namespace {

struct CellRequest {
    int n, k, q;
    Rational r;
    std::uint64_t cell_id;
};

int effective_trials(const BenchmarkSpec& spec, int n, int k) {
    const std::int64_t area = static_cast<std::int64_t>(n) * k;
    const std::int64_t floor_trials = (spec.min_entries + area - 1) / area;
    return std::max<std::int64_t>({1, spec.trials, floor_trials});
}

BenchmarkCell run_cell(const BenchmarkSpec& spec, const CellRequest& req, ExecMode mode) {
    const int trials = effective_trials(spec, req.n, req.k);

    std::vector<double> sig(trials), err(trials), adds(trials);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));

    auto run_trial = [&](int t) {
        try {
            const std::uint64_t trial_seed = mix_seed(spec.seed, req.cell_id, t);
            const DenseMatrix m = gen_gaussian(req.n, req.k, trial_seed);
            FactorConfig cfg;
            cfg.q = req.q;
            cfg.rate = req.r;
            cfg.seed = trial_seed;
            // Trials already run concurrently; keep the column solves serial.
            const Factorization fact = factorize(m, cfg, ExecMode::Serial);
            const DenseMatrix approx = fact.reconstruct();
            double e = 0.0;
            for (std::size_t i = 0; i < m.data().size(); ++i) {
                const double d = m.data()[i] - approx.data()[i];
                e += d * d;
            }
            sig[t] = m.frob_sq();
            err[t] = e;
            adds[t] = factorization_cost(fact).per_entry;
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        for (int t = 0; t < trials; ++t) run_trial(t);
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    double sig_sum = 0.0, err_sum = 0.0, adds_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        sig_sum += sig[t];
        err_sum += err[t];
        adds_sum += adds[t];
    }

    // Power-aggregated SNR over all trials; the reported standard error comes
    // from the per-trial noise-to-signal ratios through the delta method.
    BenchmarkCell cell;
    cell.n = req.n;
    cell.k = req.k;
    cell.q = req.q;
    cell.r = req.r;
    cell.trials = trials;
    cell.mean_snr_db = 10.0 * std::log10(sig_sum / err_sum);
    cell.adds_per_entry = adds_sum / trials;

    if (trials >= 2) {
        double mean_ratio = 0.0;
        for (int t = 0; t < trials; ++t) mean_ratio += err[t] / sig[t];
        mean_ratio /= trials;
        double var = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = err[t] / sig[t] - mean_ratio;
            var += d * d;
        }
        var /= (trials - 1);
        cell.stderr_db =
            (10.0 / std::numbers::ln10) * std::sqrt(var / trials) / mean_ratio;
    }
    return cell;
}

BenchmarkResult run_requests(const BenchmarkSpec& spec, const std::vector<CellRequest>& requests,
                             ExecMode mode, std::vector<std::string> notes = {}) {
    BenchmarkResult result;
    result.notes = std::move(notes);
    for (const CellRequest& req : requests) result.cells.push_back(run_cell(spec, req, mode));
    return result;
}

std::string format_rational(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return {static_cast<std::uint32_t>(std::stoul(text)), 1};
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, slash))),
            static_cast<std::uint32_t>(std::stoul(text.substr(slash + 1)))};
}

} // namespace

DenseMatrix gen_gaussian(int n, int k, std::uint64_t seed) {
    DenseMatrix m(n, k);
    CounterRng rng(seed);
    for (double& v : m.data()) v = rng.next_normal();
    return m;
}

BenchmarkResult run_table1(const BenchmarkSpec& spec, ExecMode mode) {
    std::vector<SizeNK> sizes = spec.sizes;
    if (sizes.empty())
        sizes = {{2, 4}, {3, 8}, {4, 16}, {5, 32}, {6, 64}, {7, 128}};
    std::vector<int> qs = spec.q_values;
    if (qs.empty()) qs = {1, 2, 3, 4, 5};

    std::vector<CellRequest> requests;
    std::uint64_t cell_id = 0;
    for (const SizeNK& size : sizes)
        for (int q : qs) requests.push_back({size.n, size.k, q, Rational{1, 1}, cell_id++});
    return run_requests(spec, requests, mode);
}

BenchmarkResult run_table2(const BenchmarkSpec& spec, ExecMode mode) {
    std::vector<Rational> rates = spec.r_values;
    if (rates.empty())
        for (std::uint32_t d = 1; d <= 12; ++d) rates.push_back({1, d});
    std::vector<int> qs = spec.q_values;
    if (qs.empty()) qs = {1, 2, 3, 4, 5, 6, 7};
    const int k = 1024;

    std::vector<CellRequest> requests;
    std::uint64_t cell_id = 0;
    for (const Rational& r : rates) {
        const int n = static_cast<int>(std::llround(10.0 / r.value()));
        for (int q : qs) requests.push_back({n, k, q, r, cell_id++});
    }
    return run_requests(spec, requests, mode);
}

std::vector<Rational> table3_budgets() {
    return {{1, 4}, {1, 3}, {1, 2}, {1, 1}, {2, 1}, {3, 1}};
}

BenchmarkResult run_table3(const BenchmarkSpec& spec, ExecMode mode) {
    std::vector<int> k_values;
    for (const SizeNK& size : spec.sizes) k_values.push_back(size.k);
    if (k_values.empty()) k_values = {256};

    std::vector<Rational> budgets = spec.budgets;
    if (budgets.empty()) budgets = table3_budgets();

    std::vector<CellRequest> requests;
    std::vector<std::string> notes;
    std::uint64_t cell_id = 0;
    for (int k : k_values) {
        for (const Rational& budget : budgets) {
            for (std::uint32_t den = 1; den <= 12; ++den) {
                const Rational r{1, den};
                // q = budget / r must be a positive integer
                const std::uint64_t q_num = static_cast<std::uint64_t>(budget.num) * den;
                if (q_num % budget.den != 0) {
                    notes.push_back("table3: skipped k=" + std::to_string(k) + " budget=" +
                                    format_rational(budget) + " r=" + format_rational(r) +
                                    " (q not integer)");
                    continue;
                }
                const int q = static_cast<int>(q_num / budget.den);
                const int n = rows_for_aspect(k, r.value());
                if (n > k) {
                    notes.push_back("table3: skipped k=" + std::to_string(k) + " budget=" +
                                    format_rational(budget) + " r=" + format_rational(r) +
                                    " (rows exceed columns)");
                    continue;
                }
                requests.push_back({n, k, q, r, cell_id++});
            }
        }
    }
    return run_requests(spec, requests, mode, std::move(notes));
}

std::optional<BenchmarkCell> best_cell_for_budget(const BenchmarkResult& result, int k,
                                                  Rational budget) {
    std::optional<BenchmarkCell> best;
    for (const BenchmarkCell& cell : result.cells) {
        if (cell.k != k) continue;
        // q * r == budget, compared exactly in cross-multiplied integers
        const std::uint64_t lhs =
            static_cast<std::uint64_t>(cell.q) * cell.r.num * budget.den;
        const std::uint64_t rhs = static_cast<std::uint64_t>(budget.num) * cell.r.den;
        if (lhs != rhs) continue;
        if (!best || cell.mean_snr_db > best->mean_snr_db) best = cell;
    }
    return best;
}

void emit_csv(const BenchmarkResult& result, std::ostream& out) {
    out << "n,k,q,r,trials,snr_db,stderr_db,adds_per_entry\n";
    char buf[160];
    for (const BenchmarkCell& c : result.cells) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%s,%d,%.6f,%.6f,%.6f\n", c.n, c.k, c.q,
                      format_rational(c.r).c_str(), c.trials, c.mean_snr_db, c.stderr_db,
                      c.adds_per_entry);
        out << buf;
    }
}

void emit_csv(const BenchmarkResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    emit_csv(result, out);
}

BenchmarkResult parse_csv(std::istream& in) {
    BenchmarkResult result;
    std::string line;
    if (!std::getline(in, line) || line != "n,k,q,r,trials,snr_db,stderr_db,adds_per_entry")
        throw FormatError("csv: missing or unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw FormatError("csv: expected 8 columns");
        BenchmarkCell c;
        c.n = std::stoi(fields[0]);
        c.k = std::stoi(fields[1]);
        c.q = std::stoi(fields[2]);
        c.r = parse_rational(fields[3]);
        c.trials = std::stoi(fields[4]);
        c.mean_snr_db = std::stod(fields[5]);
        c.stderr_db = std::stod(fields[6]);
        c.adds_per_entry = std::stod(fields[7]);
        result.cells.push_back(c);
    }
    return result;
}

std::vector<SnrTableRow> result_rows(const BenchmarkResult& result) {
    std::vector<SnrTableRow> rows;
    for (const BenchmarkCell& cell : result.cells) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SnrTableRow& r) {
            return r.n == cell.n && r.k == cell.k;
        });
        if (it == rows.end()) {
            rows.push_back({cell.n, cell.k, {}});
            it = rows.end() - 1;
        }
        it->snr_db.push_back(cell.mean_snr_db);
    }
    return rows;
}

void emit_fig1(const BenchmarkResult& table1, std::ostream& out) {
    out << "kind,aspect,bits\n";
    char buf[96];
    constexpr int kSamples = 241;  // log-uniform on [1, 1e4]
    for (int i = 0; i < kSamples; ++i) {
        const double aspect = std::pow(10.0, 4.0 * i / (kSamples - 1));
        std::snprintf(buf, sizeof(buf), "curve,%.8g,%.6f\n", aspect, aspect_info(aspect));
        out << buf;
    }
    const std::vector<SnrTableRow> rows = result_rows(table1);
    for (const Fig1Marker& m : fig1_markers(rows)) {
        std::snprintf(buf, sizeof(buf), "marker,%.8g,%.6f\n", m.aspect, m.bits);
        out << buf;
    }
}

} // namespace po2fact
