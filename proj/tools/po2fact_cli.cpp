// Command-line front end: factorize matrices into sparse power-of-two
// factor chains, apply stored factorizations to streamed vectors, benchmark
// approximation SNR on random Gaussian matrices, and evaluate the analytic
// predictors.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "po2fact/bench.hpp"
#include "po2fact/blocks.hpp"
#include "po2fact/engine.hpp"
#include "po2fact/matrix_io.hpp"
#include "po2fact/po2file.hpp"
#include "po2fact/quantize.hpp"
#include "po2fact/theory.hpp"

namespace {

using namespace po2fact;

Rational parse_rational_arg(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return {static_cast<std::uint32_t>(std::stoul(text)), 1};
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, slash))),
            static_cast<std::uint32_t>(std::stoul(text.substr(slash + 1)))};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<SizeNK> parse_sizes(const std::string& text) {
    std::vector<SizeNK> sizes;
    for (const std::string& item : split_list(text)) {
        const auto x = item.find('x');
        if (x == std::string::npos) {
            sizes.push_back({0, std::stoi(item)});  // bare K, used by table3
        } else {
            sizes.push_back({std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1))});
        }
    }
    return sizes;
}

int cmd_factorize(const std::string& input, int q, const std::string& r_text,
                  std::uint64_t seed, const std::string& out_path, bool text_mode) {
    const DenseMatrix m = read_matrix(std::filesystem::path(input));
    FactorConfig cfg;
    cfg.q = q;
    cfg.rate = parse_rational_arg(r_text);
    cfg.seed = seed;
    const Factorization fact = factorize(m, cfg);
    save_po2f(out_path, fact, text_mode ? FileMode::Text : FileMode::Binary);

    const AdditionLedger ledger = factorization_cost(fact);
    std::fprintf(stderr, "wrote %s: snr=%.2f dB, additions/entry=%.3f, shifts=%llu\n",
                 out_path.c_str(), snr_db(m, fact.reconstruct()), ledger.per_entry,
                 static_cast<unsigned long long>(ledger.shifts));
    return 0;
}

int cmd_apply(const std::string& fact_path) {
    const Factorization fact = load_po2f(fact_path);
    std::vector<double> values;
    double v;
    while (std::cin >> v) values.push_back(v);
    if (values.empty()) throw InvalidInputError("apply: no input values on stdin");
    if (values.size() % static_cast<std::size_t>(fact.cols) != 0)
        throw DimensionError("apply: input length is not a multiple of K=" +
                             std::to_string(fact.cols));

    AdditionLedger ledger;
    std::cout.precision(17);
    for (std::size_t off = 0; off < values.size(); off += fact.cols) {
        const ApplyResult res =
            apply_factorization(fact, {values.data() + off, static_cast<std::size_t>(fact.cols)});
        ledger = res.ledger;
        for (std::size_t i = 0; i < res.y.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << res.y[i];
        }
        std::cout << '\n';
    }
    std::fprintf(stderr, "additions=%llu shifts=%llu additions/entry=%.6f\n",
                 static_cast<unsigned long long>(ledger.additions),
                 static_cast<unsigned long long>(ledger.shifts), ledger.per_entry);
    return 0;
}

int cmd_snr(const std::string& mat_path, const std::string& fact_path) {
    const DenseMatrix m = read_matrix(std::filesystem::path(mat_path));
    const Factorization fact = load_po2f(fact_path);
    if (fact.rows != m.rows() || fact.cols != m.cols())
        throw DimensionError("snr: factorization shape does not match the matrix");
    std::printf("%.6f\n", snr_db(m, fact.reconstruct()));
    return 0;
}

int cmd_bench(const std::string& table, const BenchmarkSpec& spec, const std::string& out_path,
              bool serial) {
    const ExecMode mode = serial ? ExecMode::Serial : ExecMode::Parallel;
    BenchmarkResult result;
    if (table == "table1")
        result = run_table1(spec, mode);
    else if (table == "table2")
        result = run_table2(spec, mode);
    else
        result = run_table3(spec, mode);

    for (const std::string& note : result.notes) std::fprintf(stderr, "%s\n", note.c_str());
    if (table == "table3") {
        // summary of the grid maxima per (k, budget)
        std::vector<int> ks;
        for (const BenchmarkCell& cell : result.cells)
            if (std::find(ks.begin(), ks.end(), cell.k) == ks.end()) ks.push_back(cell.k);
        for (int k : ks)
            for (const Rational& budget : table3_budgets())
                if (const auto best = best_cell_for_budget(result, k, budget))
                    std::fprintf(stderr, "best k=%d budget=%u/%u: %.2f dB (q=%d, r=%u/%u)\n", k,
                                 budget.num, budget.den, best->mean_snr_db, best->q, best->r.num,
                                 best->r.den);
    }

    if (out_path.empty())
        emit_csv(result, std::cout);
    else
        emit_csv(result, std::filesystem::path(out_path));
    return 0;
}

int cmd_theory_fig1(const std::string& table1_csv, const std::string& out_path) {
    BenchmarkResult table1;
    if (!table1_csv.empty()) {
        std::ifstream in(table1_csv);
        if (!in) throw Error("cannot open: " + table1_csv);
        table1 = parse_csv(in);
    }
    if (out_path.empty()) {
        emit_fig1(table1, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open for writing: " + out_path);
        emit_fig1(table1, out);
    }
    return 0;
}

int cmd_theory_predict(int k, int q, const std::string& r_text) {
    const Rational r = parse_rational_arg(r_text);
    const TheoryReport rep = make_theory_report(k, q, r.value());
    std::printf(
        "k,q,r,n,info_bits,cos2_alpha,sin2_alpha,gamma,predicted_snr_db,conjectured_snr_db,"
        "collision_bound\n");
    std::printf("%d,%d,%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6g\n", rep.k, rep.q, r_text.c_str(),
                rep.n, rep.info_bits, rep.cos2_alpha, rep.sin2_alpha, rep.gamma,
                rep.predicted_snr_db, rep.conjectured_snr_db, rep.collision_bound);
    return 0;
}

int cmd_roundtrip(const std::string& fact_path) {
    std::ifstream in(fact_path, std::ios::binary);
    if (!in) throw Error("cannot open: " + fact_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string original = buf.str();

    const Factorization fact = deserialize(original);
    const FileMode mode = original.size() > 4 && original[4] == 'T' ? FileMode::Text
                                                                    : FileMode::Binary;
    if (serialize(fact, mode) != original)
        throw FormatError("roundtrip: re-serialized bytes differ");
    std::printf("ok: %zu bytes, %d factor(s)\n", original.size(), fact.config.q);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse power-of-two matrix factorization toolkit"};
    app.require_subcommand(1);

    // factorize
    std::string fz_input, fz_r = "1", fz_out;
    int fz_q = 2;
    std::uint64_t fz_seed = 0;
    bool fz_text = false;
    CLI::App* fz = app.add_subcommand("factorize", "factorize a text matrix into a PO2F file");
    fz->add_option("input", fz_input, "input matrix (\"N K\" header + rows)")->required();
    fz->add_option("--q", fz_q, "number of factors");
    fz->add_option("--r", fz_r, "sparsification rate, e.g. 1, 1/2");
    fz->add_option("--seed", fz_seed, "seed recorded in the file header");
    fz->add_option("--out", fz_out, "output PO2F path")->required();
    fz->add_flag("--text", fz_text, "write the text PO2F mode");

    // apply
    std::string ap_fact;
    CLI::App* ap = app.add_subcommand("apply", "apply a PO2F factorization to stdin vectors");
    ap->add_option("factorization", ap_fact, "PO2F file")->required();

    // snr
    std::string sn_mat, sn_fact;
    CLI::App* sn = app.add_subcommand("snr", "SNR of a factorization against its matrix");
    sn->add_option("matrix", sn_mat)->required();
    sn->add_option("factorization", sn_fact)->required();

    // bench
    std::string be_table, be_sizes, be_q, be_r, be_out;
    int be_trials = 1;
    std::uint64_t be_seed = 1;
    std::int64_t be_min_entries = 100000;
    bool be_serial = false;
    CLI::App* be = app.add_subcommand("bench", "SNR benchmarks on iid Gaussian matrices");
    be->add_option("table", be_table, "table1 | table2 | table3")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "table3"}));
    be->add_option("--trials", be_trials, "minimum trials per cell");
    be->add_option("--seed", be_seed, "master seed");
    be->add_option("--sizes", be_sizes, "sizes, e.g. 2x4,3x8 (table3: bare K list)");
    be->add_option("--q", be_q, "comma list of factor counts");
    be->add_option("--r", be_r, "comma list of rates (table2)");
    std::string be_budgets;
    be->add_option("--budgets", be_budgets, "comma list of additions budgets (table3)");
    be->add_option("--min-entries", be_min_entries, "entry floor aggregated per cell");
    be->add_option("--out", be_out, "CSV output path (default stdout)");
    be->add_flag("--serial", be_serial, "single-threaded reference path");

    // theory
    std::string th_mode, th_table1, th_out, th_r = "1";
    int th_k = 1024, th_q = 2;
    CLI::App* th = app.add_subcommand("theory", "analytic curves and predictors");
    th->add_option("mode", th_mode, "fig1 | predict")
        ->required()
        ->check(CLI::IsMember({"fig1", "predict"}));
    th->add_option("--table1", th_table1, "table1 CSV for fig1 markers");
    th->add_option("--out", th_out, "output path (default stdout)");
    th->add_option("--k", th_k, "columns");
    th->add_option("--q", th_q, "number of factors");
    th->add_option("--r", th_r, "sparsification rate");

    // roundtrip
    std::string rt_fact;
    CLI::App* rt = app.add_subcommand("roundtrip", "verify a PO2F file re-serializes bit-exactly");
    rt->add_option("factorization", rt_fact)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (fz->parsed()) return cmd_factorize(fz_input, fz_q, fz_r, fz_seed, fz_out, fz_text);
        if (ap->parsed()) return cmd_apply(ap_fact);
        if (sn->parsed()) return cmd_snr(sn_mat, sn_fact);
        if (be->parsed()) {
            BenchmarkSpec spec;
            spec.trials = be_trials;
            spec.seed = be_seed;
            spec.min_entries = be_min_entries;
            if (!be_sizes.empty()) spec.sizes = parse_sizes(be_sizes);
            if (!be_q.empty())
                for (const std::string& s : split_list(be_q)) spec.q_values.push_back(std::stoi(s));
            if (!be_r.empty())
                for (const std::string& s : split_list(be_r))
                    spec.r_values.push_back(parse_rational_arg(s));
            if (!be_budgets.empty())
                for (const std::string& s : split_list(be_budgets))
                    spec.budgets.push_back(parse_rational_arg(s));
            return cmd_bench(be_table, spec, be_out, be_serial);
        }
        if (th->parsed()) {
            if (th_mode == "fig1") return cmd_theory_fig1(th_table1, th_out);
            return cmd_theory_predict(th_k, th_q, th_r);
        }
        if (rt->parsed()) return cmd_roundtrip(rt_fact);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
