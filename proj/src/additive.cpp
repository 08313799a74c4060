#include "po2fact/additive.hpp"

#include <cmath>

namespace po2fact {

DenseMatrix BitplaneDecomposition::reconstruct() const {
    DenseMatrix out(rows, cols);
    const std::size_t area = static_cast<std::size_t>(rows) * cols;
    for (std::size_t i = 0; i < area; ++i) {
        double mag = 0.0;
        for (std::size_t q = 0; q < bitplanes.size(); ++q) {
            if (bitplanes[q][i])
                mag += std::ldexp(1.0, q0 - static_cast<int>(q) - 1);
        }
        out.data()[i] = signs[i] * mag;
    }
    return out;
}

BitplaneDecomposition standard_additive(const DenseMatrix& m, int q) {
    if (q < 1) throw InvalidInputError("standard_additive: q must be >= 1");
    double max_mag = 0.0;
    for (double v : m.data()) max_mag = std::max(max_mag, std::fabs(v));
    if (max_mag == 0.0)
        throw DegenerateInputError("standard_additive: all-zero matrix, q0 undefined");

    // max = f * 2^k, f in [0.5, 1)  =>  floor(log2 max) + 1 == k, and every
    // magnitude is strictly below 2^k.
    int q0 = 0;
    std::frexp(max_mag, &q0);

    const std::size_t area = m.data().size();
    BitplaneDecomposition out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.q0 = q0;
    out.signs.resize(area);
    out.bitplanes.assign(static_cast<std::size_t>(q), std::vector<std::uint8_t>(area, 0));

    for (std::size_t i = 0; i < area; ++i) {
        const double v = m.data()[i];
        out.signs[i] = static_cast<std::int8_t>(v < 0.0 ? -1 : 1);
        // Truncating binary expansion of |v| / 2^q0 in [0, 1). Doubling and
        // subtracting the integer bit are exact in binary floating point.
        double frac = std::ldexp(std::fabs(v), -q0);
        for (int plane = 0; plane < q; ++plane) {
            frac *= 2.0;
            if (frac >= 1.0) {
                out.bitplanes[plane][i] = 1;
                frac -= 1.0;
            }
        }
    }
    return out;
}

std::vector<Po2Matrix> improved_additive(const DenseMatrix& m, int q, const QuantizerConfig& cfg) {
    if (q < 1) throw InvalidInputError("improved_additive: q must be >= 1");
    std::vector<Po2Matrix> terms;
    terms.reserve(static_cast<std::size_t>(q));
    DenseMatrix residual = m;
    for (int step = 0; step < q; ++step) {
        Po2Matrix p = quantize_matrix(residual, cfg);
        for (const Po2Entry& e : p.entries())
            residual.at(static_cast<int>(e.row), static_cast<int>(e.col)) -= e.value();
        terms.push_back(std::move(p));
    }
    return terms;
}

DenseMatrix sum_terms(const std::vector<Po2Matrix>& terms) {
    if (terms.empty()) throw DegenerateInputError("sum_terms: empty term list");
    DenseMatrix out(terms.front().rows(), terms.front().cols());
    for (const Po2Matrix& t : terms) {
        if (t.rows() != out.rows() || t.cols() != out.cols())
            throw DimensionError("sum_terms: shape mismatch");
        for (const Po2Entry& e : t.entries())
            out.at(static_cast<int>(e.row), static_cast<int>(e.col)) += e.value();
    }
    return out;
}

} // namespace po2fact
