#pragma once

#include <utility>
#include <vector>

#include "po2fact/factorize.hpp"

namespace po2fact {

struct BlockRange {
    int row_start = 0;
    int row_count = 0;

    friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

/// Contiguous row partition with block heights as even as possible around
/// the target height log2(K)/R.
struct BlockPlan {
    int target_rows = 0;
    std::vector<BlockRange> blocks;
};

/// Picks the block count so each block is close to h = max(1, round(log2(K)/R))
/// rows: B = floor(N/h) when the remainder fits as +1 rows spread over the
/// blocks, otherwise one more block. Heights differ by at most one, taller
/// blocks first.
BlockPlan plan_blocks(int n_total, int k, double r);

/// Factorizes each planned row block independently.
std::vector<std::pair<BlockRange, Factorization>> factorize_blocked(
    const DenseMatrix& m, const FactorConfig& cfg, ExecMode mode = ExecMode::Parallel);

/// Stacks block reconstructions back into the full matrix shape.
DenseMatrix reconstruct_blocked(const std::vector<std::pair<BlockRange, Factorization>>& blocks,
                                int n_total, int k);

} // namespace po2fact
