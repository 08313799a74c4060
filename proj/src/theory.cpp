#include "po2fact/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace po2fact {

namespace {

constexpr double kDbPerBit = 6.020599913279624;  // 20*log10(2)

// Adaptive Simpson quadrature with absolute tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Beta(1/2, (n-1)/2) through log-gamma, safe for large n.
double beta_half(int n) {
    return std::exp(std::lgamma(0.5) + std::lgamma(0.5 * (n - 1)) - std::lgamma(0.5 * n));
}

// integral over theta of cos^(n-2), i.e. the correlation CDF integrand after
// the substitution xi = sin(theta), which removes the n = 2 endpoint
// singularity.
double cos_power_integral(double theta_lo, double theta_hi, int n) {
    return integrate([n](double t) { return std::pow(std::cos(t), n - 2); }, theta_lo, theta_hi,
                     1e-11);
}

/// Upper-tail probability 1 - corr_cdf(rho, n), computed directly.
double corr_tail(double rho, int n) {
    const double t = cos_power_integral(std::asin(rho), std::numbers::pi / 2.0, n);
    return std::clamp(2.0 * t / beta_half(n), 0.0, 1.0);
}

} // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInputError("binary_entropy: argument outside [0, 1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double info_per_entry(int n, int k) {
    if (n < 1 || n > k) throw InvalidInputError("info_per_entry: need 1 <= n <= k");
    const double ratio = static_cast<double>(n) / static_cast<double>(k);
    return binary_entropy(ratio) / ratio;
}

double aspect_info(double aspect) {
    if (!(aspect >= 1.0)) throw InvalidInputError("aspect_info: aspect ratio must be >= 1");
    return aspect * binary_entropy(1.0 / aspect);
}

int rows_for_aspect(int k, double r) {
    if (k < 2) throw InvalidInputError("rows_for_aspect: k must be >= 2");
    if (!(r > 0.0)) throw InvalidInputError("rows_for_aspect: r must be positive");
    return std::max(1, static_cast<int>(std::llround(std::log2(static_cast<double>(k)) / r)));
}

double corr_cdf(double rho, int n) {
    if (n < 2) throw InvalidInputError("corr_cdf: n must be >= 2");
    if (rho <= 0.0) return 0.0;
    if (rho >= 1.0) return 1.0;
    if (rho > 0.7) return 1.0 - corr_tail(rho, n);
    const double t = cos_power_integral(0.0, std::asin(rho), n);
    return std::clamp(2.0 * t / beta_half(n), 0.0, 1.0);
}

double pmax_cdf(double rho, int n, int k) {
    if (k < 1) throw InvalidInputError("pmax_cdf: k must be >= 1");
    if (n < 2) throw InvalidInputError("pmax_cdf: n must be >= 2");
    if (rho <= 0.0) return 0.0;
    if (rho >= 1.0) return 1.0;
    // [corr_cdf]^k through the tail and log1p, which stays accurate when the
    // CDF is squeezed against 1 and k is large.
    const double tail = corr_tail(rho, n);
    if (tail >= 1.0) return 0.0;
    return std::exp(static_cast<double>(k) * std::log1p(-tail));
}

double limiting_cos2(double r) {
    if (!(r > 0.0)) throw InvalidInputError("limiting_cos2: r must be positive");
    return 1.0 - std::pow(4.0, -r);
}

double gamma_constant() {
    return 3.0 * std::exp(2.0 - std::numbers::sqrt3 * std::numbers::pi / 3.0);
}

double gamma_constant_quadrature() {
    const double integral = integrate(
        [](double a) { return std::log(0.25 + 0.75 * a * a); }, 0.0, 1.0 / 3.0, 1e-13);
    return std::exp(-3.0 * integral);
}

double predicted_snr_db(int n, double r) {
    if (n < 0) throw InvalidInputError("predicted_snr_db: n must be non-negative");
    return 10.0 * n * r * std::log10(gamma_constant());
}

double conjectured_snr_db(int k, int q, double r) {
    if (k < 2) throw InvalidInputError("conjectured_snr_db: k must be >= 2");
    if (q < 1) throw InvalidInputError("conjectured_snr_db: q must be >= 1");
    if (!(r > 0.0)) throw InvalidInputError("conjectured_snr_db: r must be positive");
    if (q == 1) return 0.0;
    const double kk = static_cast<double>(k);
    return 10.0 * (q - 1) * r * std::log10(r * kk * kk / std::log2(kk));
}

double po2_match_prob(const QuantizerConfig& cfg) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    // Standard-Gaussian mass per quantizer bin; bins are the magnitude
    // intervals [0.75*2^e, 0.75*2^(e+1)) split by sign, the top bin absorbs
    // the clamp, and sub-threshold mass forms the zero bin.
    const double p_zero = std::erf(cfg.zero_threshold() * inv_sqrt2);
    double p = p_zero * p_zero;
    for (int e = cfg.e_min; e <= cfg.e_max; ++e) {
        const double lo = 0.75 * std::ldexp(1.0, e);
        double mass = 0.5 * std::erfc(lo * inv_sqrt2);
        if (e < cfg.e_max) {
            const double hi = 0.75 * std::ldexp(1.0, e + 1);
            mass -= 0.5 * std::erfc(hi * inv_sqrt2);
        }
        p += 2.0 * mass * mass;
    }
    return p;
}

double collision_bound(double p, int n, int k) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInputError("collision_bound: p outside [0, 1]");
    if (n < 1) throw InvalidInputError("collision_bound: n must be >= 1");
    if (k < 2) return 0.0;
    const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
    return std::min(1.0, std::pow(p, n) * pairs);
}

TheoryReport make_theory_report(int k, int q, double r) {
    TheoryReport rep;
    rep.k = k;
    rep.q = q;
    rep.r = r;
    rep.n = rows_for_aspect(k, r);
    rep.info_bits = info_per_entry(rep.n, k);
    rep.cos2_alpha = limiting_cos2(r);
    rep.sin2_alpha = 1.0 - rep.cos2_alpha;
    rep.gamma = gamma_constant();
    rep.predicted_snr_db = po2fact::predicted_snr_db(rep.n, r);
    rep.conjectured_snr_db = po2fact::conjectured_snr_db(k, q, r);
    rep.collision_bound = po2fact::collision_bound(po2_match_prob(), rep.n, k);
    return rep;
}

std::vector<Fig1Marker> fig1_markers(std::span<const SnrTableRow> rows) {
    std::vector<Fig1Marker> markers;
    for (const SnrTableRow& row : rows) {
        if (row.snr_db.size() < 2)
            throw InvalidInputError("fig1_markers: every size needs at least two resolutions");
        double gap = 0.0;
        for (std::size_t i = 1; i < row.snr_db.size(); ++i)
            gap = std::max(gap, row.snr_db[i] - row.snr_db[i - 1]);
        markers.push_back({static_cast<double>(row.k) / row.n, gap / kDbPerBit});
    }
    return markers;
}

} // namespace po2fact
