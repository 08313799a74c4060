#include "po2fact/greedy.hpp"

#include <algorithm>
#include <cmath>

namespace po2fact {
namespace detail {

std::vector<SparseCoeff> greedy_solve(std::span<const double> basis_colmajor, int rows, int cols,
                                      std::span<const double> col_norms_sq,
                                      std::span<const double> target, int budget,
                                      const QuantizerConfig& cfg, std::span<double> residual) {
    int usable = 0;
    for (int j = 0; j < cols; ++j)
        if (col_norms_sq[j] > 0.0) ++usable;
    if (usable == 0) throw DegenerateInputError("greedy_sparse_column: every basis column is zero");

    std::copy(target.begin(), target.end(), residual.begin());

    std::vector<SparseCoeff> picks;
    std::vector<char> used(static_cast<std::size_t>(cols), 0);
    const int rounds = std::min(budget, usable);

    for (int round = 0; round < rounds; ++round) {
        int best_j = -1;
        double best_score = -1.0;
        double best_value = 0.0;
        std::optional<ScalarPo2> best_coeff;

        for (int j = 0; j < cols; ++j) {
            if (used[j] || col_norms_sq[j] == 0.0) continue;
            const double* col = basis_colmajor.data() + static_cast<std::size_t>(j) * rows;
            double dot = 0.0;
            for (int n = 0; n < rows; ++n) dot += residual[n] * col[n];

            const double norm_sq = col_norms_sq[j];
            const std::optional<ScalarPo2> coeff = quantize_scalar(dot / norm_sq, cfg);
            const double c = coeff ? coeff->value() : 0.0;
            // Exact squared-norm reduction achieved by the quantized
            // coefficient: ||r||^2 - ||r - c l_j||^2 = c (2 <r,l_j> - c ||l_j||^2).
            const double score = c * (2.0 * dot - c * norm_sq);
            if (score > best_score) {
                best_score = score;
                best_j = j;
                best_value = c;
                best_coeff = coeff;
            }
        }

        used[best_j] = 1;
        if (best_coeff) {
            picks.push_back({static_cast<std::uint32_t>(best_j), *best_coeff});
            const double* col = basis_colmajor.data() + static_cast<std::size_t>(best_j) * rows;
            for (int n = 0; n < rows; ++n) residual[n] -= best_value * col[n];
        }
        // A zero coefficient consumes the round without touching the residual.
    }

    std::sort(picks.begin(), picks.end(),
              [](const SparseCoeff& a, const SparseCoeff& b) { return a.index < b.index; });
    return picks;
}

} // namespace detail

std::vector<SparseCoeff> greedy_sparse_column(const DenseMatrix& basis,
                                              std::span<const double> target, int budget,
                                              const QuantizerConfig& cfg) {
    const int n = basis.rows();
    const int k = basis.cols();
    if (static_cast<int>(target.size()) != n)
        throw DimensionError("greedy_sparse_column: target length must equal basis rows");
    if (budget < 0) throw InvalidInputError("greedy_sparse_column: negative budget");

    std::vector<double> colmajor(static_cast<std::size_t>(n) * k);
    std::vector<double> norms(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = basis.at(i, j);
            colmajor[static_cast<std::size_t>(j) * n + i] = v;
            s += v * v;
        }
        norms[j] = s;
    }
    std::vector<double> residual(static_cast<std::size_t>(n));
    return detail::greedy_solve(colmajor, n, k, norms, target, budget, cfg, residual);
}

} // namespace po2fact
