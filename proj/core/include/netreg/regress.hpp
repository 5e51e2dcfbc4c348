#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netreg/barycenter.hpp"
#include "netreg/graph.hpp"
#include "netreg/metrics.hpp"

namespace netreg {

/// Ordered covariate-graph sample. Immutable after construction; the sample
/// mean, sample covariance (biased, 1/n) and Laplacians are cached.
class Dataset {
public:
    explicit Dataset(std::vector<std::pair<Eigen::VectorXd, Graph>> pairs);

    Eigen::Index size() const { return static_cast<Eigen::Index>(graphs_.size()); }
    Eigen::Index covariate_dim() const { return x_mean_.size(); }
    Eigen::Index node_count() const { return graphs_.front().node_count(); }

    const Eigen::VectorXd& x(Eigen::Index i) const { return xs_[static_cast<std::size_t>(i)]; }
    const Graph& graph(Eigen::Index i) const { return graphs_[static_cast<std::size_t>(i)]; }
    const SymMatrix& laplacian(Eigen::Index i) const {
        return laplacians_[static_cast<std::size_t>(i)];
    }

    const Eigen::VectorXd& x_mean() const { return x_mean_; }
    const Eigen::MatrixXd& x_cov() const { return x_cov_; }

    Dataset subset(const std::vector<Eigen::Index>& indices) const;

private:
    std::vector<Eigen::VectorXd> xs_;
    std::vector<Graph> graphs_;
    std::vector<SymMatrix> laplacians_;
    Eigen::VectorXd x_mean_;
    Eigen::MatrixXd x_cov_;
};

enum class KernelKind { gaussian, epanechnikov };

const char* kernel_name(KernelKind k);

/// Scalar kernel profile K(u); bandwidth scaling happens in the weight
/// computation (product kernel with per-dimension bandwidths).
double kernel_value(KernelKind k, double u);

struct WeightScheme {
    bool local = false;
    KernelKind kernel = KernelKind::gaussian;
    Eigen::VectorXd bandwidth; // empty -> rule of thumb n^{-1/5} * std per dim

    static WeightScheme global() { return WeightScheme{}; }
    static WeightScheme local_scheme(KernelKind k, Eigen::VectorXd h = {}) {
        return WeightScheme{true, k, std::move(h)};
    }
};

struct WeightReport {
    Eigen::VectorXd lambda; // effective weights, sum to 1
    std::vector<std::string> flags;
};

/// Effective global weights lambda_i = s_iG(X_i, x) / n with
/// s_iG = 1 + (X_i - X̄)ᵀ Σ̂⁻¹ (x - X̄). Falls back to the pseudo-inverse
/// with a flag when the covariate covariance is rank-deficient.
WeightReport global_weights(const Dataset& ds, const Eigen::VectorXd& x);

/// Effective local (kernel) weights lambda_i = s_iL / n from the
/// kernel-weighted moments; sums to 1 by construction.
WeightReport local_weights(const Dataset& ds, const Eigen::VectorXd& x, KernelKind kernel,
                           const Eigen::VectorXd& bandwidth);

Eigen::VectorXd rule_of_thumb_bandwidth(const Dataset& ds);

WeightReport effective_weights(const Dataset& ds, const Eigen::VectorXd& x,
                               const WeightScheme& scheme);

struct SolverConfig {
    BarycenterVariant variant = BarycenterVariant::shifted;
    double epsilon = 1e-5;
    double tol = 1e-8;
    int max_iter = 500;
    std::optional<SymMatrix> init; // warm start for the fixed-point iteration
};

struct RegressorSpec {
    MetricSpec metric;
    WeightScheme weights;
    SolverConfig solver; // ignored for the Frobenius metric
    bool projection = true;
};

struct PredictionReport {
    Eigen::VectorXd x;
    Eigen::VectorXd effective_weights;
    Graph graph;            // projected, always a valid graph
    SymMatrix laplacian;    // laplacian(graph)
    SymMatrix raw_laplacian; // pre-projection minimizer; rows sum to 0
    std::optional<SolveReport> solver_report;
    std::vector<std::string> flags;
};

/// Weighted mean in F_alpha space pulled back through F_{1/alpha}.
PredictionReport predict_frobenius(const Dataset& ds, const Eigen::VectorXd& x, double alpha,
                                   const WeightScheme& scheme, bool projection = true);

/// Weighted Bures-Wasserstein barycenter of the Gaussian representations;
/// the prediction Laplacian is the pseudo-inverse of the centered solution.
/// A non-converged solve is flagged, not fatal; the last iterate is used.
PredictionReport predict_wasserstein(const Dataset& ds, const Eigen::VectorXd& x,
                                     const SolverConfig& solver, const WeightScheme& scheme,
                                     bool projection = true);

PredictionReport predict(const Dataset& ds, const Eigen::VectorXd& x, const RegressorSpec& spec);

/// Pointwise predictions over a covariate grid, results in input order.
std::vector<PredictionReport> predict_grid(const Dataset& ds,
                                           const std::vector<Eigen::VectorXd>& xs,
                                           const RegressorSpec& spec);

} // namespace netreg
