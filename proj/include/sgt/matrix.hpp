#pragma once

#include <Eigen/Dense>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sgt/errors.hpp"

namespace sgt {

// All numeric state is carried as row-major 64-bit float matrices.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline bool is_finite(const Matrix& m) { return m.allFinite(); }
inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

inline void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

// Shortest decimal that round-trips a double (17 significant digits).
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Matrix text format: first line "rows cols", then one row per line of
// space-separated decimals.
inline void write_matrix(std::ostream& os, const Matrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << format_double(m(i, j));
        }
        os << '\n';
    }
}

inline void write_matrix(const std::string& path, const Matrix& m) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_matrix(os, m);
}

inline Matrix read_matrix(std::istream& is) {
    Index rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw FormatError("matrix header: expected 'rows cols'");
    if (rows < 0 || cols < 0) throw FormatError("matrix header: negative dimensions");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            if (!(is >> m(i, j))) {
                throw FormatError("matrix body: ran out of values at row " + std::to_string(i));
            }
        }
    }
    require_finite(m, "matrix file");
    return m;
}

inline Matrix read_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_matrix(is);
}

}  // namespace sgt
