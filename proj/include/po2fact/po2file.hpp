#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "po2fact/factorize.hpp"

namespace po2fact {

/// PO2F container: magic "PO2F", a mode byte ('B' little-endian binary or
/// 'T' line-oriented text), version 1, header (N, K, Q, R numerator and
/// denominator, seed), then one record per factor (rows, cols, nnz, and the
/// sorted entry list as row, col, sign, exponent). Both modes carry exactly
/// the same fields.
enum class FileMode { Binary, Text };

std::string serialize(const Factorization& fact, FileMode mode = FileMode::Binary);

/// Inverse of serialize. Throws BadMagicError, VersionError, TruncatedError
/// or RangeError depending on what is wrong with the bytes.
Factorization deserialize(std::string_view bytes);

void save_po2f(const std::filesystem::path& path, const Factorization& fact,
               FileMode mode = FileMode::Binary);
Factorization load_po2f(const std::filesystem::path& path);

} // namespace po2fact
