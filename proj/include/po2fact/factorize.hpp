#pragma once

#include <cstdint>
#include <vector>

#include "po2fact/greedy.hpp"
#include "po2fact/types.hpp"

namespace po2fact {

/// Serial runs the reference single-thread path; Parallel distributes
/// independent column solves (and block factorizations) across OpenMP
/// threads. Both produce bit-identical results.
enum class ExecMode { Serial, Parallel };

struct FactorConfig {
    int q = 2;                        // number of factors
    Rational rate{1, 1};              // sparsification rate R in (0, 1]
    int per_column_budget = 0;        // 0 selects the default max(1, round(R*N))
    QuantizerConfig quantizer{};
    std::uint64_t seed = 0;           // provenance metadata, carried into PO2F files

    friend bool operator==(const FactorConfig&, const FactorConfig&) = default;
};

/// Product-form approximation M ~= F_1 * F_2 * ... * F_Q with F_1 of the
/// original N x K shape and every later factor K x K.
struct Factorization {
    int rows = 0;  // original N
    int cols = 0;  // original K
    std::vector<Po2Matrix> factors;
    FactorConfig config;

    /// Dense product of the factors.
    DenseMatrix reconstruct() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Keeps the nnz_budget entries of largest magnitude; ties broken by
/// (row, col) order.
Po2Matrix sparsify_po2(const Po2Matrix& f, std::size_t nnz_budget);

/// Keeps the nnz_budget entries whose removal would grow the squared error
/// against `reference` the most, i.e. ranked by m^2 - (m - f)^2; ties broken
/// by (row, col) order.
Po2Matrix sparsify_po2(const Po2Matrix& f, const DenseMatrix& reference, std::size_t nnz_budget);

/// Solves one recursion stage: column k of the result is the greedy sparse
/// power-of-two combination of basis columns approximating column k of m.
/// basis is N x K, m is N x K, result is K x K.
Po2Matrix factor_step(const DenseMatrix& basis, const DenseMatrix& m, const FactorConfig& cfg,
                      ExecMode mode = ExecMode::Parallel);

/// Full factorization of an N x K matrix with N <= K (throws
/// OrientationError otherwise; factorize the transpose instead). F_1 is the
/// sparsified entrywise quantization; each later factor re-approximates m
/// against the dense product of everything before it.
Factorization factorize(const DenseMatrix& m, const FactorConfig& cfg,
                        ExecMode mode = ExecMode::Parallel);

/// Per-column pick budget actually used for the square factors.
int per_column_budget(const FactorConfig& cfg, int n);

/// Aggregate nonzero budget ceil(R*N*K) enforced per factor.
std::size_t total_nnz_budget(const FactorConfig& cfg, int n, int k);

/// Dense product `dense * sparse` (dense N x K times sparse K x K).
DenseMatrix multiply_dense_po2(const DenseMatrix& dense, const Po2Matrix& sparse,
                               ExecMode mode = ExecMode::Serial);

} // namespace po2fact
