#pragma once

#include <cstdint>
#include <vector>

#include "po2fact/quantize.hpp"
#include "po2fact/types.hpp"

namespace po2fact {

/// Sign-magnitude bitplane decomposition: the value at (r, c) is
/// signs[r*cols+c] * sum_q 2^(q0-q) * bitplanes[q-1][r*cols+c].
struct BitplaneDecomposition {
    int rows = 0;
    int cols = 0;
    int q0 = 0;
    std::vector<std::int8_t> signs;                    // +1/-1, row-major
    std::vector<std::vector<std::uint8_t>> bitplanes;  // one 0/1 plane per resolution step

    DenseMatrix reconstruct() const;
};

/// Truncating bitplane decomposition with q0 = floor(log2 max|m_ij|) + 1, so
/// every magnitude lies below 2^q0 and the per-entry error is below 2^(q0-q).
/// Signs live in a separate sign matrix (sign of zero is +1).
BitplaneDecomposition standard_additive(const DenseMatrix& m, int q);

/// Successive nearest-power-of-two quantization of the residual:
/// P_1 = quantize(M), P_k = quantize(M - sum_{i<k} P_i). Returns the q terms.
std::vector<Po2Matrix> improved_additive(const DenseMatrix& m, int q,
                                         const QuantizerConfig& cfg = {});

/// Dense sum of a term list (all terms same shape).
DenseMatrix sum_terms(const std::vector<Po2Matrix>& terms);

} // namespace po2fact
