#pragma once

#include <filesystem>
#include <iosfwd>

#include "po2fact/types.hpp"

namespace po2fact {

/// Text matrix format: first line "N K", then N rows of K whitespace
/// separated reals.
DenseMatrix read_matrix(std::istream& in);
DenseMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const DenseMatrix& m, std::ostream& out);

} // namespace po2fact
