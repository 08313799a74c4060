#include "po2fact/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace po2fact {

namespace {

void validate_rate(const Rational& r) {
    if (r.num == 0 || r.den == 0 || r.num > r.den)
        throw InvalidInputError("sparsification rate must lie in (0, 1]");
}

Po2Matrix keep_ranked(const Po2Matrix& f, std::size_t nnz_budget,
                      const std::vector<double>& rank_key) {
    // Keeps the nnz_budget entries with the largest key; ties fall back to
    // (row, col) order because the sort is stable over the sorted entry list.
    std::vector<std::uint32_t> order(f.nnz());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return rank_key[a] > rank_key[b];
    });

    std::vector<char> keep(f.nnz(), 0);
    for (std::size_t i = 0; i < nnz_budget && i < order.size(); ++i) keep[order[i]] = 1;

    Po2Matrix out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.nnz(); ++i) {
        if (keep[i]) {
            const Po2Entry& e = f.entries()[i];
            out.push(e.row, e.col, e.coeff);
        }
    }
    return out;
}

struct ColumnMajorView {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;    // column-contiguous
    std::vector<double> norms_sq;  // per column

    explicit ColumnMajorView(const DenseMatrix& m)
        : rows(m.rows()), cols(m.cols()),
          values(static_cast<std::size_t>(m.rows()) * m.cols()),
          norms_sq(static_cast<std::size_t>(m.cols()), 0.0) {
        for (int j = 0; j < cols; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows; ++i) {
                const double v = m.at(i, j);
                values[static_cast<std::size_t>(j) * rows + i] = v;
                s += v * v;
            }
            norms_sq[j] = s;
        }
    }
};

} // namespace

int per_column_budget(const FactorConfig& cfg, int n) {
    if (cfg.per_column_budget > 0) return cfg.per_column_budget;
    // round-half-up of R*n in exact integer arithmetic
    const std::uint64_t num = static_cast<std::uint64_t>(cfg.rate.num) * static_cast<std::uint64_t>(n);
    const std::uint64_t s = (2 * num + cfg.rate.den) / (2ULL * cfg.rate.den);
    return std::max<int>(1, static_cast<int>(s));
}

std::size_t total_nnz_budget(const FactorConfig& cfg, int n, int k) {
    const std::uint64_t num = static_cast<std::uint64_t>(cfg.rate.num) *
                              static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k);
    return static_cast<std::size_t>((num + cfg.rate.den - 1) / cfg.rate.den);
}

Po2Matrix sparsify_po2(const Po2Matrix& f, std::size_t nnz_budget) {
    if (nnz_budget >= f.nnz()) return f;
    std::vector<double> key(f.nnz());
    for (std::size_t i = 0; i < f.nnz(); ++i)
        key[i] = static_cast<double>(f.entries()[i].coeff.exponent);
    return keep_ranked(f, nnz_budget, key);
}

Po2Matrix sparsify_po2(const Po2Matrix& f, const DenseMatrix& reference, std::size_t nnz_budget) {
    if (f.rows() != reference.rows() || f.cols() != reference.cols())
        throw DimensionError("sparsify_po2: reference shape mismatch");
    if (nnz_budget >= f.nnz()) return f;
    // Squared-error reduction contributed by keeping each entry.
    std::vector<double> key(f.nnz());
    for (std::size_t i = 0; i < f.nnz(); ++i) {
        const Po2Entry& e = f.entries()[i];
        const double m = reference.at(static_cast<int>(e.row), static_cast<int>(e.col));
        const double d = m - e.value();
        key[i] = m * m - d * d;
    }
    return keep_ranked(f, nnz_budget, key);
}

Po2Matrix factor_step(const DenseMatrix& basis, const DenseMatrix& m, const FactorConfig& cfg,
                      ExecMode mode) {
    if (basis.rows() != m.rows())
        throw DimensionError("factor_step: basis and target row counts differ");
    const int n = m.rows();
    const int t = m.cols();
    const int k = basis.cols();
    const int budget = per_column_budget(cfg, n);

    const ColumnMajorView view(basis);
    if (std::all_of(view.norms_sq.begin(), view.norms_sq.end(),
                    [](double x) { return x == 0.0; }))
        throw DegenerateInputError("factor_step: basis has no nonzero column");

    std::vector<std::vector<SparseCoeff>> per_col(static_cast<std::size_t>(t));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));

    auto solve_one = [&](int col) {
        try {
            std::vector<double> target(static_cast<std::size_t>(n));
            std::vector<double> residual(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) target[i] = m.at(i, col);
            per_col[col] = detail::greedy_solve(view.values, n, k, view.norms_sq, target,
                                                budget, cfg.quantizer, residual);
        } catch (...) {
            errors[col] = std::current_exception();
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int col = 0; col < t; ++col) solve_one(col);
    } else {
        for (int col = 0; col < t; ++col) solve_one(col);
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    // Independent column solves, assembled in deterministic (row, col) order.
    std::vector<Po2Entry> entries;
    for (int col = 0; col < t; ++col)
        for (const SparseCoeff& p : per_col[col])
            entries.push_back({p.index, static_cast<std::uint32_t>(col), p.coeff});
    std::sort(entries.begin(), entries.end(), [](const Po2Entry& a, const Po2Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    Po2Matrix out(k, t);
    for (const Po2Entry& e : entries) out.push(e.row, e.col, e.coeff);
    return out;
}

DenseMatrix multiply_dense_po2(const DenseMatrix& dense, const Po2Matrix& sparse, ExecMode mode) {
    if (dense.cols() != sparse.rows())
        throw DimensionError("multiply_dense_po2: inner dimensions differ");
    const int n = dense.rows();
    const int k = sparse.cols();

    // Counting sort of entry indices by column; stays row-ordered inside a
    // column, so serial and parallel accumulate in the same order.
    std::vector<std::size_t> col_ptr(static_cast<std::size_t>(k) + 1, 0);
    for (const Po2Entry& e : sparse.entries()) ++col_ptr[e.col + 1];
    for (int j = 0; j < k; ++j) col_ptr[j + 1] += col_ptr[j];
    std::vector<std::uint32_t> by_col(sparse.nnz());
    {
        std::vector<std::size_t> cursor(col_ptr.begin(), col_ptr.end() - 1);
        for (std::uint32_t i = 0; i < sparse.nnz(); ++i)
            by_col[cursor[sparse.entries()[i].col]++] = i;
    }

    DenseMatrix out(n, k);
    auto fill_col = [&](int j) {
        for (std::size_t p = col_ptr[j]; p < col_ptr[j + 1]; ++p) {
            const Po2Entry& e = sparse.entries()[by_col[p]];
            const double c = e.value();
            const int src = static_cast<int>(e.row);
            for (int i = 0; i < n; ++i) out.at(i, j) += c * dense.at(i, src);
        }
    };
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < k; ++j) fill_col(j);
    } else {
        for (int j = 0; j < k; ++j) fill_col(j);
    }
    return out;
}

DenseMatrix Factorization::reconstruct() const {
    if (factors.empty()) throw DegenerateInputError("reconstruct: empty factorization");
    DenseMatrix product = factors.front().to_dense();
    for (std::size_t i = 1; i < factors.size(); ++i)
        product = multiply_dense_po2(product, factors[i]);
    return product;
}

Factorization factorize(const DenseMatrix& m, const FactorConfig& cfg, ExecMode mode) {
    if (m.rows() > m.cols())
        throw OrientationError("factorize: rows exceed columns, factorize the transpose instead");
    if (cfg.q < 1) throw InvalidInputError("factorize: q must be >= 1");
    validate_rate(cfg.rate);
    if (cfg.per_column_budget > m.cols())
        throw InvalidInputError("factorize: per-column budget exceeds column count");

    const std::size_t budget = total_nnz_budget(cfg, m.rows(), m.cols());

    Factorization fact;
    fact.rows = m.rows();
    fact.cols = m.cols();
    fact.config = cfg;

    Po2Matrix f1 = sparsify_po2(quantize_matrix(m, cfg.quantizer), m, budget);
    DenseMatrix product = f1.to_dense();
    fact.factors.push_back(std::move(f1));

    for (int q = 2; q <= cfg.q; ++q) {
        Po2Matrix fq = factor_step(product, m, cfg, mode);
        // Per-column budgets can overshoot the aggregate cap when R*N rounds
        // up; trim back to keep every factor within ceil(R*N*K).
        if (fq.nnz() > budget) fq = sparsify_po2(fq, budget);
        product = multiply_dense_po2(product, fq, mode);
        fact.factors.push_back(std::move(fq));
    }
    return fact;
}

} // namespace po2fact
