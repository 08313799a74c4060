#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "po2fact/errors.hpp"

namespace po2fact {

/// A nonzero value of the form sign * 2^exponent. Zero is never a ScalarPo2;
/// it is represented by the absence of an entry.
struct ScalarPo2 {
    std::int8_t sign = 1;        // +1 or -1
    std::int16_t exponent = 0;

    double value() const { return std::ldexp(static_cast<double>(sign), exponent); }

    friend bool operator==(const ScalarPo2&, const ScalarPo2&) = default;
};

/// Row-major dense real matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
        if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
    }

    DenseMatrix(int rows, int cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
        if (data_.size() != static_cast<std::size_t>(rows) * cols)
            throw DimensionError("entry count does not match rows*cols");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// Squared Frobenius norm.
    double frob_sq() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return s;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

struct Po2Entry {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    ScalarPo2 coeff;

    double value() const { return coeff.value(); }

    friend bool operator==(const Po2Entry&, const Po2Entry&) = default;
};

/// Sparse matrix whose nonzeros are all +/-2^e, stored as a (row, col)-sorted
/// entry list without duplicates.
class Po2Matrix {
public:
    Po2Matrix() = default;

    Po2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }

    const std::vector<Po2Entry>& entries() const { return entries_; }

    /// Appends an entry. Entries must be pushed in strictly increasing
    /// (row, col) order.
    void push(std::uint32_t row, std::uint32_t col, ScalarPo2 coeff) {
        if (row >= static_cast<std::uint32_t>(rows_) || col >= static_cast<std::uint32_t>(cols_))
            throw RangeError("entry index out of range");
        if (!entries_.empty()) {
            const Po2Entry& last = entries_.back();
            if (row < last.row || (row == last.row && col <= last.col))
                throw RangeError("entries must be pushed in strictly increasing (row, col) order");
        }
        entries_.push_back({row, col, coeff});
    }

    DenseMatrix to_dense() const {
        DenseMatrix out(rows_, cols_);
        for (const Po2Entry& e : entries_) out.at(static_cast<int>(e.row), static_cast<int>(e.col)) = e.value();
        return out;
    }

    friend bool operator==(const Po2Matrix&, const Po2Matrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Po2Entry> entries_;
};

/// Exponent clamp for the nearest power-of-two quantizer. The decision
/// boundary between 2^(e-1) and 2^e sits at (3/4)*2^e and ties round to the
/// larger exponent; magnitudes below zero_threshold() quantize to zero.
struct QuantizerConfig {
    int e_min = -126;
    int e_max = 127;

    double zero_threshold() const { return 0.75 * std::ldexp(1.0, e_min); }

    friend bool operator==(const QuantizerConfig&, const QuantizerConfig&) = default;
};

/// Exact rational, used for sparsification rates.
struct Rational {
    std::uint32_t num = 1;
    std::uint32_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
};

} // namespace po2fact
