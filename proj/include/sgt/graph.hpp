#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgt/matrix.hpp"
#include "sgt/spectral.hpp"

namespace sgt {

struct WeightedEdge {
    int i = 0;
    int j = 0;
    double w = 0.0;
};

// Simple weighted graph, no self-loops, no duplicate pairs. Undirected
// graphs store each edge once with i < j (normalized on construction).
class WeightedGraph {
public:
    WeightedGraph(int n, bool directed, std::vector<WeightedEdge> edges = {})
        : n_(n), directed_(directed) {
        if (n < 0) throw std::invalid_argument("graph: negative vertex count");
        for (auto& e : edges) add_edge(e.i, e.j, e.w);
    }

    int vertex_count() const { return n_; }
    bool directed() const { return directed_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int i, int j) const {
        return keys_.count(key(i, j)) > 0;
    }

    void add_edge(int i, int j, double w) {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw std::invalid_argument("graph: vertex id out of range");
        if (i == j) throw std::invalid_argument("graph: self-loops not allowed");
        if (!std::isfinite(w)) throw std::invalid_argument("graph: non-finite weight");
        if (!directed_ && i > j) std::swap(i, j);
        if (!keys_.insert(key(i, j)).second)
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        edges_.push_back({i, j, w});
    }

private:
    std::pair<int, int> key(int i, int j) const {
        if (!directed_ && i > j) std::swap(i, j);
        return {i, j};
    }

    int n_;
    bool directed_;
    std::vector<WeightedEdge> edges_;
    std::set<std::pair<int, int>> keys_;
};

// Convention from the weighted-digraph definition: an edge i -> j of
// weight w contributes A[j][i] = w. Undirected edges fill both entries.
inline Matrix adjacency(const WeightedGraph& g) {
    Matrix a = Matrix::Zero(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) {
        if (g.directed()) {
            a(e.j, e.i) = e.w;
        } else {
            a(e.i, e.j) = e.w;
            a(e.j, e.i) = e.w;
        }
    }
    return a;
}

namespace detail {

inline Matrix laplacian_of_adjacency(const Matrix& a) {
    Matrix l = -a;
    for (Index i = 0; i < a.rows(); ++i) l(i, i) += a.row(i).sum();
    return l;
}

}  // namespace detail

// L = D - A with D the diagonal of row sums, so L * 1 = 0 exactly by
// construction modulo rounding.
inline Matrix laplacian(const WeightedGraph& g) {
    return detail::laplacian_of_adjacency(adjacency(g));
}

inline Matrix normalized_laplacian(const WeightedGraph& g) {
    Matrix a = adjacency(g);
    Matrix l = detail::laplacian_of_adjacency(a);
    Vector deg = a.rowwise().sum();
    for (Index i = 0; i < deg.size(); ++i) {
        if (!(deg[i] > 0.0)) {
            throw std::invalid_argument("normalized_laplacian: degenerate degree at vertex " +
                                        std::to_string(i));
        }
    }
    Vector dinv_sqrt = deg.cwiseSqrt().cwiseInverse();
    return dinv_sqrt.asDiagonal() * l * dinv_sqrt.asDiagonal();
}

struct IncidenceMatrix {
    Matrix h;                     // n x m, one column per edge: +1 at i, -1 at j
    std::vector<int> edge_order;  // column -> index into g.edges()
    Vector weights;               // length m
};

inline IncidenceMatrix incidence(const WeightedGraph& g) {
    if (g.directed()) throw std::invalid_argument("incidence: directed graphs unsupported");
    const int m = g.edge_count();
    IncidenceMatrix out;
    out.h = Matrix::Zero(g.vertex_count(), m);
    out.weights.resize(m);
    out.edge_order.resize(m);
    for (int l = 0; l < m; ++l) {
        const auto& e = g.edges()[l];
        out.h(e.i, l) = 1.0;
        out.h(e.j, l) = -1.0;
        out.weights[l] = e.w;
        out.edge_order[l] = l;
    }
    return out;
}

// Deterministic orthonormal basis of the subspace orthogonal to the all-ones
// vector: the trailing n-1 columns of the Householder reflection mapping
// e_1 to 1/sqrt(n).
inline Matrix complement_basis(int n) {
    if (n < 2) throw std::invalid_argument("complement_basis: need n >= 2");
    Vector ones_unit = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Vector v = ones_unit;
    v[0] -= 1.0;  // v = a - e_1
    const double vtv = v.squaredNorm();
    Matrix q = Matrix::Identity(n, n);
    if (vtv > 0.0) q -= (2.0 / vtv) * (v * v.transpose());
    return q.rightCols(n - 1);
}

enum class WeightPolicy { absolute, raw };

struct FiedlerResult {
    double lambda2 = 0.0;
    Vector vector;
};

namespace detail {

inline WeightedGraph abs_weights(const WeightedGraph& g) {
    std::vector<WeightedEdge> edges = g.edges();
    for (auto& e : edges) e.w = std::abs(e.w);
    return WeightedGraph(g.vertex_count(), g.directed(), std::move(edges));
}

}  // namespace detail

// Algebraic connectivity as the constrained Rayleigh minimum over the
// complement of the all-ones direction. Works for indefinite (signed)
// Laplacians as well, which is why it is not read off the full spectrum.
inline FiedlerResult fiedler(const WeightedGraph& g,
                             WeightPolicy policy = WeightPolicy::absolute) {
    if (g.directed()) throw std::invalid_argument("fiedler: directed graphs unsupported");
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("fiedler: need at least 2 vertices");

    Matrix l = policy == WeightPolicy::absolute ? laplacian(detail::abs_weights(g))
                                                : laplacian(g);
    Matrix basis = complement_basis(n);
    Matrix reduced = basis.transpose() * l * basis;
    reduced = 0.5 * (reduced + reduced.transpose());  // scrub rounding asymmetry
    EigResult eig = sym_eig(reduced);

    FiedlerResult out;
    out.lambda2 = eig.values[0];
    Matrix vec = basis * eig.vectors.col(0);
    detail::fix_column_signs(vec);
    out.vector = vec.col(0);
    return out;
}

// lambda_min of (1/2) U~^T (L + L^T) U~, the directed analogue of the
// Fiedler value.
inline double directed_algebraic_connectivity(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("directed_algebraic_connectivity: need n >= 2");
    Matrix l = laplacian(g);
    Matrix sym = 0.5 * (l + l.transpose());
    Matrix basis = complement_basis(n);
    Matrix reduced = basis.transpose() * sym * basis;
    reduced = 0.5 * (reduced + reduced.transpose());
    return sym_eig(reduced).values[0];
}

enum class WeightGraphMode { bipartite, square_symmetric };

// View a weight matrix as an undirected graph. The bipartite view (rows
// and columns as separate vertex sets) matches how layer maps are used;
// the square view is for matrices that already are adjacency-like.
// Entries with |w| <= threshold are dropped.
inline WeightedGraph weight_matrix_to_graph(const Matrix& w, double threshold = 0.0,
                                            WeightGraphMode mode = WeightGraphMode::bipartite) {
    if (threshold < 0.0) throw std::invalid_argument("weight_matrix_to_graph: negative threshold");
    require_finite(w, "weight_matrix_to_graph input");

    if (mode == WeightGraphMode::square_symmetric) {
        if (w.rows() != w.cols())
            throw std::invalid_argument("weight_matrix_to_graph: square mode needs square input");
        if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("weight_matrix_to_graph: square mode needs symmetry");
        WeightedGraph g(static_cast<int>(w.rows()), false);
        for (Index i = 0; i < w.rows(); ++i)
            for (Index j = i + 1; j < w.cols(); ++j)
                if (std::abs(w(i, j)) > threshold)
                    g.add_edge(static_cast<int>(i), static_cast<int>(j), w(i, j));
        return g;
    }

    const int rows = static_cast<int>(w.rows());
    WeightedGraph g(rows + static_cast<int>(w.cols()), false);
    for (Index i = 0; i < w.rows(); ++i)
        for (Index j = 0; j < w.cols(); ++j)
            if (std::abs(w(i, j)) > threshold)
                g.add_edge(static_cast<int>(i), rows + static_cast<int>(j), w(i, j));
    return g;
}

// Edge-list text format: first line "n directed(0|1)", then "i j w" lines.
inline void write_edge_list(std::ostream& os, const WeightedGraph& g) {
    os << g.vertex_count() << ' ' << (g.directed() ? 1 : 0) << '\n';
    for (const auto& e : g.edges())
        os << e.i << ' ' << e.j << ' ' << format_double(e.w) << '\n';
}

inline void write_edge_list(const std::string& path, const WeightedGraph& g) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_edge_list(os, g);
}

inline WeightedGraph read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("edge list header: expected 'n directed'");
    int n = 0, dir = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n >> dir)) throw FormatError("edge list header: expected 'n directed'");
    }
    if (dir != 0 && dir != 1) throw FormatError("edge list header: directed flag must be 0 or 1");
    WeightedGraph g(n, dir == 1);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        int i = 0, j = 0;
        double w = 0.0;
        if (!(ls >> i)) continue;  // blank line
        if (!(ls >> j >> w)) throw FormatError("edge list body: malformed line '" + line + "'");
        g.add_edge(i, j, w);
    }
    return g;
}

inline WeightedGraph read_edge_list(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_edge_list(is);
}

}  // namespace sgt
