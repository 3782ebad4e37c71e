#pragma once

#include <string>
#include <vector>

#include "sgt/matrix.hpp"
#include "sgt/spectral.hpp"

#include <nlohmann/json.hpp>

namespace sgt {

using MaskArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Smallest k whose leading singular values carry at least
// energy_threshold of the total squared spectrum. All-zero spectra
// report rank 1.
inline int estimate_rank(const Vector& sigma, double energy_threshold) {
    if (sigma.size() == 0) throw std::invalid_argument("estimate_rank: empty spectrum");
    if (!(energy_threshold > 0.0 && energy_threshold <= 1.0))
        throw std::invalid_argument("estimate_rank: threshold must be in (0, 1]");
    const double total = sigma.squaredNorm();
    if (total == 0.0) return 1;
    const double target = energy_threshold * total;
    double cum = 0.0;
    for (Index k = 0; k < sigma.size(); ++k) {
        cum += sigma[k] * sigma[k];
        if (cum >= target) return static_cast<int>(k + 1);
    }
    return static_cast<int>(sigma.size());
}

inline int estimate_rank(const std::vector<double>& sigma, double energy_threshold) {
    return estimate_rank(Eigen::Map<const Vector>(sigma.data(), sigma.size()), energy_threshold);
}

// Entry-sampling completion problem: minimize
//   0.5 * ||mask (.) (X - observed)||_F^2 + alpha * ||X||_*
struct CompletionProblem {
    Matrix observed;
    MaskArray mask;
    double alpha = 1e-3;
    double step = 1.0;
    int max_iters = 1000;
    double tol = 1e-8;

    void validate() const {
        if (observed.rows() != mask.rows() || observed.cols() != mask.cols())
            throw std::invalid_argument("completion: mask/observed shape mismatch");
        if (!mask.any()) throw std::invalid_argument("completion: no observed entries");
        if (!(alpha > 0.0)) throw std::invalid_argument("completion: alpha must be > 0");
        if (!(step > 0.0)) throw std::invalid_argument("completion: step must be > 0");
        if (max_iters < 1) throw std::invalid_argument("completion: max_iters must be >= 1");
        require_finite(observed, "completion observed");
    }
};

struct CompletionResult {
    Matrix x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective;  // value after each iterate
};

namespace detail {

inline double completion_objective(const CompletionProblem& p, const Matrix& x) {
    const Matrix residual = p.mask.select(x - p.observed, Matrix::Zero(x.rows(), x.cols()));
    return 0.5 * residual.squaredNorm() + p.alpha * nuclear_norm(x);
}

}  // namespace detail

// Proximal gradient with soft singular-value thresholding, started at
// zero. The data term has unit Lipschitz constant, so any step <= 1
// gives a monotone objective.
inline CompletionResult complete_matrix(const CompletionProblem& p) {
    p.validate();
    CompletionResult out;
    Matrix x = Matrix::Zero(p.observed.rows(), p.observed.cols());
    const Matrix zero = x;
    for (int it = 0; it < p.max_iters; ++it) {
        const Matrix grad = p.mask.select(x - p.observed, zero);
        Matrix next = sv_threshold(x - p.step * grad, p.step * p.alpha, ThresholdMode::soft);
        const double change = (next - x).norm();
        x = std::move(next);
        out.objective.push_back(detail::completion_objective(p, x));
        out.iterations = it + 1;
        if (change <= p.tol) {
            out.converged = true;
            break;
        }
    }
    out.x = std::move(x);
    return out;
}

// Per-layer width plan: raw rank estimates, then a running minimum so
// widths never grow with depth, floored at min_width.
struct WidthPlan {
    std::vector<int> widths;
    std::vector<int> source_ranks;
    double energy_threshold = 0.0;
};

inline WidthPlan plan_widths(const std::vector<Matrix>& activations, double energy_threshold,
                             int min_width) {
    if (activations.empty()) throw std::invalid_argument("plan_widths: no activations");
    if (min_width < 1) throw std::invalid_argument("plan_widths: min_width must be >= 1");

    WidthPlan plan;
    plan.energy_threshold = energy_threshold;
    for (const Matrix& a : activations)
        plan.source_ranks.push_back(estimate_rank(svd(a).sigma, energy_threshold));

    int running = plan.source_ranks.front();
    for (int r : plan.source_ranks) {
        running = std::min(running, r);
        plan.widths.push_back(std::max(running, min_width));
    }
    return plan;
}

inline nlohmann::json width_plan_to_json(const WidthPlan& plan) {
    return nlohmann::json{{"widths", plan.widths},
                          {"source_ranks", plan.source_ranks},
                          {"energy_threshold", plan.energy_threshold}};
}

inline WidthPlan width_plan_from_json(const nlohmann::json& j) {
    WidthPlan plan;
    plan.widths = j.at("widths").get<std::vector<int>>();
    plan.source_ranks = j.at("source_ranks").get<std::vector<int>>();
    plan.energy_threshold = j.at("energy_threshold").get<double>();
    return plan;
}

}  // namespace sgt
