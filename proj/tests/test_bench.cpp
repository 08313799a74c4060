#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "po2fact/bench.hpp"
#include "po2fact/po2file.hpp"

using namespace po2fact;

TEST_CASE("gaussian generator statistics and reproducibility") {
    const DenseMatrix m = gen_gaussian(1000, 1000, 77);
    double mean = 0.0;
    for (double v : m.data()) mean += v;
    mean /= m.data().size();
    double var = 0.0;
    for (double v : m.data()) var += (v - mean) * (v - mean);
    var /= m.data().size();
    CHECK(std::fabs(mean) < 0.004);
    CHECK(std::fabs(var - 1.0) < 0.006);

    CHECK(gen_gaussian(1000, 1000, 77) == m);
    CHECK(!(gen_gaussian(1000, 1000, 78) == m));
}

TEST_CASE("table1 cells carry sane statistics") {
    BenchmarkSpec spec;
    spec.sizes = {{2, 4}};
    spec.q_values = {1, 2};
    spec.trials = 500;
    spec.min_entries = 4000;  // 500 trials of 8 entries each
    spec.seed = 5;

    const BenchmarkResult result = run_table1(spec);
    REQUIRE(result.cells.size() == 2);
    CHECK(result.cells[0].trials == 500);
    CHECK(result.cells[0].mean_snr_db == doctest::Approx(14.2).epsilon(0.05));
    CHECK(result.cells[1].mean_snr_db == doctest::Approx(20.6).epsilon(0.08));
    for (const BenchmarkCell& c : result.cells) {
        CHECK(c.stderr_db > 0.0);
        CHECK(c.stderr_db < 1.0);
        CHECK(c.adds_per_entry <= c.q * c.r.value() + 1.0 / c.n + 1e-12);
    }
}

TEST_CASE("the entry floor raises the trial count") {
    BenchmarkSpec spec;
    spec.sizes = {{2, 4}};
    spec.q_values = {1};
    spec.trials = 1;
    spec.min_entries = 8000;
    const BenchmarkResult result = run_table1(spec);
    CHECK(result.cells[0].trials == 1000);
}

TEST_CASE("table2 derives rows from the rate") {
    BenchmarkSpec spec;
    spec.r_values = {{1, 1}, {1, 2}};
    spec.q_values = {1};
    spec.trials = 1;
    spec.min_entries = 1;
    const BenchmarkResult result = run_table2(spec);
    REQUIRE(result.cells.size() == 2);
    CHECK(result.cells[0].n == 10);
    CHECK(result.cells[0].k == 1024);
    CHECK(result.cells[1].n == 20);
    CHECK(result.cells[1].r == Rational{1, 2});
}

TEST_CASE("table3 keeps only integer factor counts") {
    BenchmarkSpec spec;
    spec.sizes = {{0, 16}};
    spec.trials = 2;
    spec.min_entries = 1;
    const BenchmarkResult result = run_table3(spec);

    for (const BenchmarkCell& c : result.cells) {
        // q * r must equal one of the swept budgets exactly
        bool matched = false;
        for (const Rational& budget : table3_budgets())
            matched |= static_cast<std::uint64_t>(c.q) * c.r.num * budget.den ==
                       static_cast<std::uint64_t>(budget.num) * c.r.den;
        CHECK(matched);
    }
    CHECK(!result.notes.empty());  // e.g. budget 1/4 with r = 1 has no integer q

    const auto best = best_cell_for_budget(result, 16, {1, 1});
    REQUIRE(best.has_value());
    CHECK(best->k == 16);
}

TEST_CASE("csv emission roundtrips and is byte-stable") {
    BenchmarkSpec spec;
    spec.sizes = {{3, 8}};
    spec.q_values = {1, 2};
    spec.trials = 50;
    spec.min_entries = 1;
    spec.seed = 11;

    const BenchmarkResult result = run_table1(spec);
    std::ostringstream csv1, csv2;
    emit_csv(result, csv1);
    emit_csv(run_table1(spec), csv2);
    CHECK(csv1.str() == csv2.str());

    std::istringstream in(csv1.str());
    const BenchmarkResult parsed = parse_csv(in);
    REQUIRE(parsed.cells.size() == result.cells.size());
    for (std::size_t i = 0; i < parsed.cells.size(); ++i) {
        CHECK(parsed.cells[i].n == result.cells[i].n);
        CHECK(parsed.cells[i].q == result.cells[i].q);
        CHECK(parsed.cells[i].r == result.cells[i].r);
        CHECK(parsed.cells[i].mean_snr_db ==
              doctest::Approx(result.cells[i].mean_snr_db).epsilon(1e-6));
    }

    std::ostringstream csv3;
    emit_csv(parsed, csv3);
    CHECK(csv3.str() == csv1.str());
}

TEST_CASE("csv parser rejects malformed input") {
    std::istringstream bad_header("x,y\n");
    CHECK_THROWS_AS(parse_csv(bad_header), FormatError);
    std::istringstream bad_row("n,k,q,r,trials,snr_db,stderr_db,adds_per_entry\n1,2,3\n");
    CHECK_THROWS_AS(parse_csv(bad_row), FormatError);
}

TEST_CASE("fig1 data has the curve plus one marker per size") {
    BenchmarkSpec spec;
    spec.sizes = {{2, 4}, {3, 8}};
    spec.q_values = {1, 2};
    spec.trials = 30;
    spec.min_entries = 1;
    const BenchmarkResult result = run_table1(spec);

    std::ostringstream out;
    emit_fig1(result, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "kind,aspect,bits");
    int curves = 0, markers = 0;
    double first_aspect = -1.0, last_aspect = -1.0;
    while (std::getline(in, line)) {
        if (line.rfind("curve,", 0) == 0) {
            ++curves;
            const double aspect = std::stod(line.substr(6));
            if (first_aspect < 0) first_aspect = aspect;
            last_aspect = aspect;
        } else if (line.rfind("marker,", 0) == 0) {
            ++markers;
        }
    }
    CHECK(curves >= 100);
    CHECK(markers == 2);
    CHECK(first_aspect == doctest::Approx(1.0));
    CHECK(last_aspect == doctest::Approx(1e4));
}
