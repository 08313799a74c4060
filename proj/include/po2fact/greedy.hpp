#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "po2fact/quantize.hpp"
#include "po2fact/types.hpp"

namespace po2fact {

/// One selected component of a sparse power-of-two coefficient vector.
struct SparseCoeff {
    std::uint32_t index = 0;
    ScalarPo2 coeff;

    friend bool operator==(const SparseCoeff&, const SparseCoeff&) = default;
};

/// Decision-directed greedy solve of
///     min || target - sum_j rho_j * basis_col_j ||_2,   rho_j in {0, +/-2^e},
/// selecting at most `budget` distinct columns. Each round scores every
/// unused nonzero column by the exact residual reduction achieved with the
/// quantized projection coefficient, fixes the best one (ties to the smallest
/// index), and updates the residual. A round whose best coefficient
/// quantizes to zero consumes budget without adding an entry.
///
/// Returns the selected coefficients sorted by index.
/// Throws DegenerateInputError when every basis column is zero.
std::vector<SparseCoeff> greedy_sparse_column(const DenseMatrix& basis,
                                              std::span<const double> target,
                                              int budget,
                                              const QuantizerConfig& cfg = {});

namespace detail {

/// Hot-path variant: basis given column-major with precomputed squared
/// column norms; residual scratch is caller-provided (length = rows) and
/// holds the final residual on return.
std::vector<SparseCoeff> greedy_solve(std::span<const double> basis_colmajor, int rows, int cols,
                                      std::span<const double> col_norms_sq,
                                      std::span<const double> target, int budget,
                                      const QuantizerConfig& cfg, std::span<double> residual);

} // namespace detail

} // namespace po2fact
