#include "po2fact/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace po2fact {

std::optional<ScalarPo2> quantize_scalar(double v, const QuantizerConfig& cfg) {
    if (!std::isfinite(v)) throw InvalidInputError("quantize_scalar: input is not finite");
    const double mag = std::fabs(v);
    if (mag < cfg.zero_threshold()) return std::nullopt;

    // mag = f * 2^k with f in [0.5, 1). The midpoint between 2^(k-1) and 2^k
    // is 0.75 * 2^k, so f < 0.75 selects k-1 and f >= 0.75 selects k; the
    // exact midpoint lands on the larger exponent. frexp and the comparison
    // are exact, so the boundary is hit without rounding slop.
    int k = 0;
    const double f = std::frexp(mag, &k);
    int e = (f < 0.75) ? k - 1 : k;
    e = std::clamp(e, cfg.e_min, cfg.e_max);
    return ScalarPo2{static_cast<std::int8_t>(v < 0.0 ? -1 : 1), static_cast<std::int16_t>(e)};
}

Po2Matrix quantize_matrix(const DenseMatrix& m, const QuantizerConfig& cfg) {
    Po2Matrix out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (auto q = quantize_scalar(m.at(r, c), cfg))
                out.push(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), *q);
        }
    }
    return out;
}

double snr_db(const DenseMatrix& m, const DenseMatrix& a) {
    if (m.rows() != a.rows() || m.cols() != a.cols())
        throw DimensionError("snr_db: shape mismatch");
    const double signal = m.frob_sq();
    if (signal == 0.0) throw DegenerateInputError("snr_db: reference matrix is zero");
    double err = 0.0;
    for (std::size_t i = 0; i < m.data().size(); ++i) {
        const double d = m.data()[i] - a.data()[i];
        err += d * d;
    }
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / err);
}

} // namespace po2fact
