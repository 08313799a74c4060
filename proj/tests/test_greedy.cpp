#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "po2fact/bench.hpp"
#include "po2fact/greedy.hpp"
#include "test_util.hpp"

using namespace po2fact;

TEST_CASE("identity basis resolves a single scaled axis") {
    DenseMatrix basis(2, 2, {1.0, 0.0, 0.0, 1.0});
    const std::vector<double> target{0.5, 0.0};
    const auto picks = greedy_sparse_column(basis, target, 1);
    REQUIRE(picks.size() == 1);
    CHECK(picks[0].index == 0);
    CHECK(picks[0].coeff.value() == 0.5);
    CHECK(test_util::residual_norm(basis, target, picks) == doctest::Approx(0.0));
}

TEST_CASE("single pick agrees with the exhaustive search") {
    DenseMatrix basis(2, 2, {1.0, 1.0, 0.0, 1.0});
    const std::vector<double> target{1.0, 1.0};
    const auto picks = greedy_sparse_column(basis, target, 1);
    REQUIRE(picks.size() == 1);
    CHECK(picks[0].index == 1);
    CHECK(picks[0].coeff.value() == 1.0);

    const double greedy_res = test_util::residual_norm(basis, target, picks);
    const double brute = test_util::brute_force_best_residual(basis, target, 1, -10, 10);
    CHECK(greedy_res == doctest::Approx(brute).epsilon(1e-12));
    CHECK(greedy_res == doctest::Approx(0.0));
}

TEST_CASE("greedy never beats the exhaustive optimum and never loses to the zero vector") {
    // the oracle and the greedy must search the same exponent alphabet
    QuantizerConfig cfg;
    cfg.e_min = -6;
    cfg.e_max = 6;
    CounterRng rng(321);
    for (int trial = 0; trial < 40; ++trial) {
        DenseMatrix basis = gen_gaussian(3, 8, 1000 + trial);
        std::vector<double> target(3);
        for (double& v : target) v = rng.next_normal();

        const auto picks = greedy_sparse_column(basis, target, 3, cfg);
        const double greedy_res = test_util::residual_norm(basis, target, picks);
        const double brute = test_util::brute_force_best_residual(basis, target, 3, -6, 6);
        double zero_res = 0.0;
        for (double v : target) zero_res += v * v;
        zero_res = std::sqrt(zero_res);

        CHECK(greedy_res >= brute - 1e-12);
        CHECK(greedy_res <= zero_res + 1e-12);
    }
}

TEST_CASE("residual norm decreases with every extra budget unit") {
    // greedy is prefix-consistent, so growing budgets replay the same picks
    const DenseMatrix basis = gen_gaussian(6, 12, 77);
    const DenseMatrix tmat = gen_gaussian(6, 1, 78);
    const std::vector<double> target(tmat.data());

    double prev = test_util::residual_norm(basis, target, {});
    for (int s = 1; s <= 6; ++s) {
        const auto picks = greedy_sparse_column(basis, target, s);
        const double res = test_util::residual_norm(basis, target, picks);
        CHECK(res < prev);
        prev = res;
    }
}

TEST_CASE("degenerate and edge bases") {
    SUBCASE("all-zero basis") {
        DenseMatrix basis(2, 3);
        const std::vector<double> target{1.0, 2.0};
        CHECK_THROWS_AS(greedy_sparse_column(basis, target, 1), DegenerateInputError);
    }

    SUBCASE("zero columns are skipped, picks capped at usable columns") {
        DenseMatrix basis(2, 3, {1.0, 0.0, 0.0, 0.0, 0.0, 1.0});  // middle column zero
        const std::vector<double> target{1.0, 1.0};
        const auto picks = greedy_sparse_column(basis, target, 3);
        REQUIRE(picks.size() == 2);
        CHECK(picks[0].index == 0);
        CHECK(picks[1].index == 2);
    }

    SUBCASE("orthogonal target consumes budget without entries") {
        DenseMatrix basis(2, 1, {1.0, 0.0});
        const std::vector<double> target{0.0, 1.0};
        const auto picks = greedy_sparse_column(basis, target, 1);
        CHECK(picks.empty());
    }

    SUBCASE("length mismatch") {
        DenseMatrix basis(2, 2, {1.0, 0.0, 0.0, 1.0});
        const std::vector<double> target{1.0, 1.0, 1.0};
        CHECK_THROWS_AS(greedy_sparse_column(basis, target, 1), DimensionError);
    }
}

TEST_CASE("tie on the score goes to the smaller column index") {
    // duplicate columns: both reduce the residual equally
    DenseMatrix basis(2, 2, {1.0, 1.0, 1.0, 1.0});
    const std::vector<double> target{1.0, 1.0};
    const auto picks = greedy_sparse_column(basis, target, 1);
    REQUIRE(picks.size() == 1);
    CHECK(picks[0].index == 0);
}
