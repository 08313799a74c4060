#pragma once

#include <span>
#include <vector>

#include "po2fact/types.hpp"

namespace po2fact {

/// Binary entropy -x log2 x - (1-x) log2(1-x) with 0 log 0 = 0.
/// Throws InvalidInputError outside [0, 1].
double binary_entropy(double x);

/// Position information per matrix entry, (K/N) * H2(N/K), for 1 <= n <= k.
double info_per_entry(int n, int k);

/// info_per_entry generalized to a real aspect ratio a = K/N >= 1.
double aspect_info(double aspect);

/// Row count max(1, round(log2(K)/R)) that keeps the aspect ratio on the
/// logarithmic scaling law.
int rows_for_aspect(int k, double r);

/// CDF of the magnitude of the correlation between a fixed direction and a
/// uniform random direction on the (n-1)-sphere:
///     P(rho) = (2/Z) * integral_0^rho (1 - t^2)^((n-3)/2) dt,
/// Z = Beta(1/2, (n-1)/2). Evaluated by adaptive quadrature to 1e-10.
double corr_cdf(double rho, int n);

/// CDF of the maximum of k independent such correlations, corr_cdf^k,
/// evaluated through the upper tail for accuracy at large k.
double pmax_cdf(double rho, int n, int k);

/// Limiting squared correlation 1 - 4^(-R) of the best basis column.
double limiting_cos2(double r);

/// Per-nonzero SNR factor 3*exp(2 - sqrt(3)*pi/3) ~= 3.614.
double gamma_constant();

/// The same constant through its defining integral,
/// exp(-3 * integral_0^(1/3) ln(1/4 + (3/4) a^2) da), as a numeric
/// cross-check of the closed form.
double gamma_constant_quadrature();

/// Predicted per-factor SNR 10*N*R*log10(gamma) in dB.
double predicted_snr_db(int n, double r);

/// Conjectured scaling 10*(Q-1)*R*log10(R*K^2/log2(K)) in dB.
double conjectured_snr_db(int k, int q, double r);

/// Probability that two independent standard Gaussians quantize to the same
/// power-of-two code (sign and exponent, or both zero).
double po2_match_prob(const QuantizerConfig& cfg = {});

/// Union bound min(1, p^n * k(k-1)/2) on the probability of at least two
/// identical quantized columns.
double collision_bound(double p, int n, int k);

/// Analytic summary for one (K, Q, R) operating point with N derived from
/// the aspect scaling law.
struct TheoryReport {
    int n = 0;
    int k = 0;
    int q = 0;
    double r = 0.0;
    double info_bits = 0.0;
    double cos2_alpha = 0.0;
    double sin2_alpha = 0.0;
    double gamma = 0.0;
    double predicted_snr_db = 0.0;
    double conjectured_snr_db = 0.0;
    double collision_bound = 0.0;
};

TheoryReport make_theory_report(int k, int q, double r);

/// One measured benchmark row: SNRs for consecutive resolutions at a fixed
/// size, ordered by increasing Q.
struct SnrTableRow {
    int n = 0;
    int k = 0;
    std::vector<double> snr_db;
};

struct Fig1Marker {
    double aspect = 0.0;
    double bits = 0.0;
};

/// For each size, the largest SNR gap between neighboring resolutions
/// divided by 20*log10(2) dB/bit, paired with the aspect ratio K/N.
std::vector<Fig1Marker> fig1_markers(std::span<const SnrTableRow> rows);

} // namespace po2fact
