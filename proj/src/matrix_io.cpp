#include "po2fact/matrix_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace po2fact {

DenseMatrix read_matrix(std::istream& in) {
    int n = 0, k = 0;
    if (!(in >> n >> k)) throw FormatError("matrix: expected \"N K\" on the first line");
    if (n <= 0 || k <= 0) throw FormatError("matrix: dimensions must be positive");
    DenseMatrix m(n, k);
    for (double& v : m.data())
        if (!(in >> v)) throw TruncatedError("matrix: fewer than N*K values");
    return m;
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    return read_matrix(in);
}

void write_matrix(const DenseMatrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << '\n';
    out.precision(17);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << m.at(r, c);
        }
        out << '\n';
    }
}

} // namespace po2fact
