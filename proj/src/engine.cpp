#include "po2fact/engine.hpp"

#include <cmath>

namespace po2fact {

namespace {

AdditionLedger structural_cost(const Po2Matrix& f) {
    AdditionLedger ledger;
    ledger.shifts = f.nnz();
    std::uint64_t nonempty_rows = 0;
    std::uint32_t current_row = 0;
    bool any = false;
    for (const Po2Entry& e : f.entries()) {
        if (!any || e.row != current_row) {
            ++nonempty_rows;
            current_row = e.row;
            any = true;
        }
    }
    ledger.additions = f.nnz() - nonempty_rows;
    const double area = static_cast<double>(f.rows()) * static_cast<double>(f.cols());
    ledger.per_entry = static_cast<double>(ledger.additions) / area;
    return ledger;
}

} // namespace

ApplyResult apply_po2(const Po2Matrix& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.cols())
        throw DimensionError("apply_po2: vector length must equal matrix columns");

    ApplyResult res;
    res.y.assign(static_cast<std::size_t>(f.rows()), 0.0);
    // Every term is x_j scaled by an exact exponent shift; entries are
    // (row, col) sorted, so rows accumulate contiguously.
    for (const Po2Entry& e : f.entries()) {
        const double term = std::ldexp(x[e.col], e.coeff.exponent);
        if (e.coeff.sign > 0)
            res.y[e.row] += term;
        else
            res.y[e.row] -= term;
    }
    res.ledger = structural_cost(f);
    return res;
}

ApplyResult apply_factorization(const Factorization& fact, std::span<const double> x) {
    if (fact.factors.empty()) throw DegenerateInputError("apply_factorization: no factors");
    if (static_cast<int>(x.size()) != fact.cols)
        throw DimensionError("apply_factorization: vector length must equal original columns");

    // Right-to-left through the factor chain.
    std::vector<double> v(x.begin(), x.end());
    AdditionLedger total;
    for (auto it = fact.factors.rbegin(); it != fact.factors.rend(); ++it) {
        ApplyResult step = apply_po2(*it, v);
        v = std::move(step.y);
        total.additions += step.ledger.additions;
        total.shifts += step.ledger.shifts;
    }
    total.per_entry = static_cast<double>(total.additions) /
                      (static_cast<double>(fact.rows) * static_cast<double>(fact.cols));
    return {std::move(v), total};
}

AdditionLedger factorization_cost(const Factorization& fact) {
    AdditionLedger total;
    for (const Po2Matrix& f : fact.factors) {
        const AdditionLedger step = structural_cost(f);
        total.additions += step.additions;
        total.shifts += step.shifts;
    }
    total.per_entry = static_cast<double>(total.additions) /
                      (static_cast<double>(fact.rows) * static_cast<double>(fact.cols));
    return total;
}

} // namespace po2fact
