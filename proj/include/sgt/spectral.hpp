#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

#include "sgt/matrix.hpp"

namespace sgt {

// Thin SVD: u is m x r, v is n x r, sigma descending, r = min(m, n).
struct SvdResult {
    Matrix u;
    Vector sigma;
    Matrix v;

    Index rank_dim() const { return sigma.size(); }
};

// Symmetric eigendecomposition, eigenvalues ascending; vectors.col(i)
// pairs with values[i].
struct EigResult {
    Vector values;
    Matrix vectors;
};

enum class ThresholdMode { hard, soft };

namespace detail {

// Fix the sign of each column so its largest-magnitude entry is positive.
// First occurrence wins on ties, which keeps the output deterministic.
inline void fix_column_signs(Matrix& primary, Matrix* paired = nullptr) {
    for (Index c = 0; c < primary.cols(); ++c) {
        Index arg = 0;
        primary.col(c).cwiseAbs().maxCoeff(&arg);
        if (primary(arg, c) < 0.0) {
            primary.col(c) = -primary.col(c);
            if (paired) paired->col(c) = -paired->col(c);
        }
    }
}

}  // namespace detail

inline SvdResult svd(const Matrix& m) {
    if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("svd: empty matrix");
    require_finite(m, "svd input");

    SvdResult out;
    // Jacobi is the accuracy workhorse at small sizes; divide-and-conquer
    // takes over once it would start to crawl.
    if (std::min(m.rows(), m.cols()) <= 16) {
        Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = solver.matrixU();
        out.sigma = solver.singularValues();
        out.v = solver.matrixV();
    } else {
        Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = solver.matrixU();
        out.sigma = solver.singularValues();
        out.v = solver.matrixV();
    }
    detail::fix_column_signs(out.u, &out.v);
    return out;
}

inline EigResult sym_eig(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("sym_eig: matrix not square");
    if (m.rows() < 1) throw std::invalid_argument("sym_eig: empty matrix");
    require_finite(m, "sym_eig input");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw std::invalid_argument("sym_eig: input not symmetric (max deviation " +
                                    format_double(asym) + ")");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eig: solver failed");
    EigResult out;
    out.values = solver.eigenvalues();  // ascending
    out.vectors = solver.eigenvectors();
    detail::fix_column_signs(out.vectors);
    return out;
}

// Best rank-k approximation: keep the k leading singular triplets.
inline Matrix truncate_rank(const SvdResult& s, Index k) {
    if (k < 1 || k > s.rank_dim()) {
        throw std::invalid_argument("truncate_rank: k out of range [1, " +
                                    std::to_string(s.rank_dim()) + "]");
    }
    return s.u.leftCols(k) * s.sigma.head(k).asDiagonal() * s.v.leftCols(k).transpose();
}

// Shrink (soft) or zero-out (hard) singular values below alpha, then
// reassemble the matrix from the modified spectrum.
inline Matrix sv_threshold(const Matrix& m, double alpha, ThresholdMode mode) {
    if (alpha < 0.0) throw std::invalid_argument("sv_threshold: negative alpha");
    SvdResult s = svd(m);
    Vector t(s.sigma.size());
    for (Index i = 0; i < s.sigma.size(); ++i) {
        const double sv = s.sigma[i];
        t[i] = (mode == ThresholdMode::soft) ? std::max(sv - alpha, 0.0)
                                             : (sv < alpha ? 0.0 : sv);
    }
    return s.u * t.asDiagonal() * s.v.transpose();
}

inline Vector top_singular_values(const Matrix& m, Index k) {
    const Index r = std::min(m.rows(), m.cols());
    if (k < 1 || k > r) throw std::invalid_argument("top_singular_values: k out of range");
    return svd(m).sigma.head(k);
}

inline double nuclear_norm(const Matrix& m) { return svd(m).sigma.sum(); }

}  // namespace sgt
