#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "po2fact/quantize.hpp"
#include "po2fact/rng.hpp"
#include "po2fact/theory.hpp"
#include "test_util.hpp"

using namespace po2fact;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(0.4999).epsilon(2e-4));
    CHECK_THROWS_AS(binary_entropy(-0.01), InvalidInputError);
    CHECK_THROWS_AS(binary_entropy(1.01), InvalidInputError);
}

TEST_CASE("information per entry") {
    CHECK(info_per_entry(7, 7) == 0.0);
    CHECK(info_per_entry(5, 10) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(info_per_entry(10, 1024) == doctest::Approx(8.1137).epsilon(1e-4));
    CHECK(aspect_info(2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(info_per_entry(11, 10), InvalidInputError);
}

TEST_CASE("aspect scaling law row counts") {
    CHECK(rows_for_aspect(1024, 1.0) == 10);
    CHECK(rows_for_aspect(1024, 0.5) == 20);
    CHECK(rows_for_aspect(4, 1.0) == 2);
}

TEST_CASE("correlation cdf") {
    CHECK(corr_cdf(0.0, 5) == 0.0);
    CHECK(corr_cdf(1.0, 5) == 1.0);

    // n = 3 has a flat integrand, the cdf is the identity
    for (double rho : {0.1, 0.4, 0.75, 0.95})
        CHECK(corr_cdf(rho, 3) == doctest::Approx(rho).epsilon(1e-9));

    // n = 2 closed form (2/pi) asin(rho), including the endpoint singularity
    for (double rho : {0.2, 0.8, 0.99})
        CHECK(corr_cdf(rho, 2) ==
              doctest::Approx(2.0 / std::numbers::pi * std::asin(rho)).epsilon(1e-9));

    // monotone and inside [0,1]
    double prev = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double c = corr_cdf(i / 50.0, 12);
        CHECK(c >= prev - 1e-12);
        CHECK(c <= 1.0);
        prev = c;
    }
}

TEST_CASE("maximum-correlation cdf") {
    CHECK(pmax_cdf(0.5, 6, 1) == doctest::Approx(corr_cdf(0.5, 6)).epsilon(1e-9));
    CHECK(pmax_cdf(1.0, 6, 64) == 1.0);
    for (double rho : {0.3, 0.6, 0.9})
        CHECK(pmax_cdf(rho, 8, 32) <= corr_cdf(rho, 8) + 1e-12);

    // the step sharpens around sqrt(1 - 4^-R) as K grows along the scaling law
    const double threshold = std::sqrt(limiting_cos2(1.0));
    double below_prev = 1.0, above_prev = 0.0;
    for (int log2k : {6, 10, 14}) {
        const int k = 1 << log2k;
        const int n = rows_for_aspect(k, 1.0);
        const double below = pmax_cdf(threshold - 0.05, n, k);
        const double above = pmax_cdf(threshold + 0.05, n, k);
        CHECK(below < below_prev);
        CHECK(above > above_prev);
        below_prev = below;
        above_prev = above;
    }
    CHECK(below_prev < 0.05);
    CHECK(above_prev > 0.95);
}

TEST_CASE("limiting squared correlation") {
    CHECK(limiting_cos2(1.0) == 0.75);
    CHECK(limiting_cos2(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(limiting_cos2(30.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-nonzero snr constant") {
    const double g = gamma_constant();
    CHECK(g == doctest::Approx(3.614).epsilon(2e-4));
    CHECK(std::fabs(g - gamma_constant_quadrature()) <= 1e-9);
    CHECK(10.0 * std::log10(g) == doctest::Approx(5.5799).epsilon(1e-4));
    CHECK(std::fabs(g - 18.0 / 5.0) < 0.015);  // close to the linear-averaging variant
}

TEST_CASE("snr predictors") {
    CHECK(predicted_snr_db(10, 1.0) == doctest::Approx(55.80).epsilon(1e-3));
    CHECK(predicted_snr_db(0, 1.0) == 0.0);
    CHECK(predicted_snr_db(20, 1.0) == doctest::Approx(2 * predicted_snr_db(10, 1.0)));

    CHECK(conjectured_snr_db(1024, 1, 1.0) == 0.0);
    CHECK(conjectured_snr_db(1024, 2, 1.0) == doctest::Approx(50.206).epsilon(1e-4));
    double prev = 0.0;
    for (int k : {16, 64, 256, 1024}) {
        const double v = conjectured_snr_db(k, 3, 0.5);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("power-of-two code match probability against a sampling oracle") {
    const double p = po2_match_prob();
    CHECK(p == doctest::Approx(0.1060).epsilon(2e-3));

    // Monte Carlo oracle: empirical collision probability of the quantizer
    // codes of 10^7 standard Gaussians
    constexpr int buckets = 1 << 12;
    std::vector<double> counts(2 * buckets, 0.0);
    CounterRng rng(7777);
    constexpr int samples = 10000000;
    for (int i = 0; i < samples; ++i) {
        const double x = rng.next_normal();
        const auto q = quantize_scalar(x);
        int code = buckets;  // zero bin
        if (q) code = (q->exponent + 200) * 2 + (q->sign > 0 ? 0 : 1);
        counts[code] += 1.0;
    }
    double p_mc = 0.0;
    for (double c : counts) p_mc += (c / samples) * (c / samples);
    // 3 sigma of the estimator, plus the analytic value's own tiny slack
    CHECK(std::fabs(p_mc - p) < 3.5e-4);
}

TEST_CASE("column collision union bound") {
    CHECK(collision_bound(0.4, 3, 1) == 0.0);
    CHECK(collision_bound(0.9, 1, 1000000) == 1.0);  // clamped
    CHECK(collision_bound(po2_match_prob(), 10, 1024) == doctest::Approx(9.38e-5).epsilon(0.01));
}

TEST_CASE("theory report is internally consistent") {
    const TheoryReport rep = make_theory_report(1024, 2, 1.0);
    CHECK(rep.n == 10);
    CHECK(rep.cos2_alpha + rep.sin2_alpha == doctest::Approx(1.0));
    CHECK(rep.gamma > 1.0);
    CHECK(rep.collision_bound >= 0.0);
    CHECK(rep.collision_bound <= 1.0);
}

TEST_CASE("empirical maximum correlation matches the analytic cdf") {
    const int n = 8, k = 64, trials = 10000;
    const std::vector<double> samples = test_util::sample_max_correlations(n, k, trials, 4242);
    const double ks = test_util::ks_distance(
        samples, [&](double rho) { return pmax_cdf(rho, n, k); });
    CHECK(ks < 0.05);
}

TEST_CASE("figure markers from gap tables") {
    SUBCASE("pinned wide-row values") {
        const SnrTableRow row{10, 1024, {14.2, 63.5, 113.0, 162.0, 212.0}};
        const auto markers = fig1_markers(std::vector<SnrTableRow>{row});
        REQUIRE(markers.size() == 1);
        CHECK(markers[0].aspect == doctest::Approx(102.4));
        CHECK(markers[0].bits == doctest::Approx(50.0 / 6.0206).epsilon(1e-4));
    }

    SUBCASE("two columns give the single difference") {
        const SnrTableRow row{4, 16, {10.0, 22.04}};
        const auto markers = fig1_markers(std::vector<SnrTableRow>{row});
        CHECK(markers[0].bits == doctest::Approx(2.0).epsilon(1e-3));
    }

    SUBCASE("constant rows give zero bits") {
        const SnrTableRow row{4, 16, {10.0, 10.0, 10.0}};
        CHECK(fig1_markers(std::vector<SnrTableRow>{row})[0].bits == 0.0);
    }

    SUBCASE("a single-resolution row is rejected") {
        const SnrTableRow row{4, 16, {10.0}};
        CHECK_THROWS_AS(fig1_markers(std::vector<SnrTableRow>{row}), InvalidInputError);
    }
}
