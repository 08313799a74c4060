#include "po2fact/blocks.hpp"

#include <exception>

#include "po2fact/theory.hpp"

namespace po2fact {

BlockPlan plan_blocks(int n_total, int k, double r) {
    if (n_total < 1) throw InvalidInputError("plan_blocks: n_total must be >= 1");
    if (k < 2) throw InvalidInputError("plan_blocks: k must be >= 2");
    if (!(r > 0.0)) throw InvalidInputError("plan_blocks: r must be positive");

    const int h = rows_for_aspect(k, r);

    // floor(n/h) blocks when the remainder can be absorbed as +1 rows, one
    // more block otherwise; at least one block.
    int b = n_total / h;
    if (b == 0) {
        b = 1;
    } else if (n_total - b * h > b) {
        b += 1;
    }

    BlockPlan plan;
    plan.target_rows = h;
    const int base = n_total / b;
    const int taller = n_total % b;
    int start = 0;
    for (int i = 0; i < b; ++i) {
        const int rows = base + (i < taller ? 1 : 0);
        plan.blocks.push_back({start, rows});
        start += rows;
    }
    return plan;
}

std::vector<std::pair<BlockRange, Factorization>> factorize_blocked(const DenseMatrix& m,
                                                                    const FactorConfig& cfg,
                                                                    ExecMode mode) {
    const BlockPlan plan = plan_blocks(m.rows(), m.cols(), cfg.rate.value());
    const int nblocks = static_cast<int>(plan.blocks.size());

    std::vector<std::pair<BlockRange, Factorization>> out(plan.blocks.size());
    std::vector<std::exception_ptr> errors(plan.blocks.size());

    auto solve_block = [&](int bi) {
        try {
            const BlockRange& range = plan.blocks[bi];
            DenseMatrix slice(range.row_count, m.cols());
            for (int i = 0; i < range.row_count; ++i)
                for (int j = 0; j < m.cols(); ++j)
                    slice.at(i, j) = m.at(range.row_start + i, j);
            // Blocks already run concurrently; keep the inner solves serial.
            out[bi] = {range, factorize(slice, cfg, ExecMode::Serial)};
        } catch (...) {
            errors[bi] = std::current_exception();
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int bi = 0; bi < nblocks; ++bi) solve_block(bi);
    } else {
        for (int bi = 0; bi < nblocks; ++bi) solve_block(bi);
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

DenseMatrix reconstruct_blocked(const std::vector<std::pair<BlockRange, Factorization>>& blocks,
                                int n_total, int k) {
    DenseMatrix out(n_total, k);
    for (const auto& [range, fact] : blocks) {
        const DenseMatrix part = fact.reconstruct();
        for (int i = 0; i < range.row_count; ++i)
            for (int j = 0; j < k; ++j) out.at(range.row_start + i, j) = part.at(i, j);
    }
    return out;
}

} // namespace po2fact
