#pragma once

#include <optional>

#include "po2fact/types.hpp"

namespace po2fact {

/// Quantizes v to the nearest power of two with the sign kept, or to zero
/// when |v| falls below cfg.zero_threshold(). The boundary between 2^(e-1)
/// and 2^e is their midpoint (3/4)*2^e; exact midpoints round to the larger
/// exponent. Exponents are clamped to [cfg.e_min, cfg.e_max].
std::optional<ScalarPo2> quantize_scalar(double v, const QuantizerConfig& cfg = {});

/// Entrywise quantize_scalar; zero results are omitted from the entry list.
Po2Matrix quantize_matrix(const DenseMatrix& m, const QuantizerConfig& cfg = {});

/// 10*log10(||M||_F^2 / ||M-A||_F^2). Returns +infinity when A == M exactly.
double snr_db(const DenseMatrix& m, const DenseMatrix& a);

} // namespace po2fact
