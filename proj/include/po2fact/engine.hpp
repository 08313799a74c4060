#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "po2fact/factorize.hpp"
#include "po2fact/types.hpp"

namespace po2fact {

/// Shift-and-add cost of applying a factor chain: one shift per nonzero
/// term, max(0, nnz-1) additions per output row, per_entry = additions
/// divided by the original matrix area.
struct AdditionLedger {
    std::uint64_t additions = 0;
    std::uint64_t shifts = 0;
    double per_entry = 0.0;

    friend bool operator==(const AdditionLedger&, const AdditionLedger&) = default;
};

struct ApplyResult {
    std::vector<double> y;
    AdditionLedger ledger;
};

/// y = F x computed term-by-term with exact exponent scaling (ldexp) instead
/// of multiplication.
ApplyResult apply_po2(const Po2Matrix& f, std::span<const double> x);

/// Applies the factors right-to-left (F_Q first). The ledger sums the factor
/// ledgers; per_entry is normalized by the original N*K.
ApplyResult apply_factorization(const Factorization& fact, std::span<const double> x);

/// Ledger of apply_factorization without applying anything; the counts
/// depend only on the sparsity structure.
AdditionLedger factorization_cost(const Factorization& fact);

} // namespace po2fact
