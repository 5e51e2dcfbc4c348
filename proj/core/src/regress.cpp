#include "netreg/regress.hpp"

#include <cmath>
#include <string>

namespace netreg {

Dataset::Dataset(std::vector<std::pair<Eigen::VectorXd, Graph>> pairs) {
    if (pairs.empty()) throw InsufficientData("Dataset: no pairs");
    const Eigen::Index p = pairs.front().first.size();
    const Eigen::Index k = pairs.front().second.node_count();
    if (p < 1) throw InsufficientData("Dataset: covariates must have dimension >= 1");
    xs_.reserve(pairs.size());
    graphs_.reserve(pairs.size());
    laplacians_.reserve(pairs.size());
    for (auto& [x, g] : pairs) {
        if (x.size() != p) throw DimensionMismatch("Dataset: covariate dimensions differ");
        if (g.node_count() != k) throw DimensionMismatch("Dataset: node counts differ");
        laplacians_.push_back(netreg::laplacian(g));
        xs_.push_back(std::move(x));
        graphs_.push_back(std::move(g));
    }
    const double n = static_cast<double>(xs_.size());
    x_mean_ = Eigen::VectorXd::Zero(p);
    for (const auto& x : xs_) x_mean_ += x;
    x_mean_ /= n;
    x_cov_ = Eigen::MatrixXd::Zero(p, p);
    for (const auto& x : xs_) {
        const Eigen::VectorXd d = x - x_mean_;
        x_cov_ += d * d.transpose();
    }
    x_cov_ /= n;
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& indices) const {
    std::vector<std::pair<Eigen::VectorXd, Graph>> pairs;
    pairs.reserve(indices.size());
    for (Eigen::Index i : indices) pairs.emplace_back(x(i), graph(i));
    return Dataset(std::move(pairs));
}

const char* kernel_name(KernelKind k) {
    return k == KernelKind::gaussian ? "gaussian" : "epanechnikov";
}

double kernel_value(KernelKind k, double u) {
    switch (k) {
        case KernelKind::gaussian: return std::exp(-0.5 * u * u);
        case KernelKind::epanechnikov: return std::abs(u) >= 1.0 ? 0.0 : 0.75 * (1.0 - u * u);
    }
    return 0.0;
}

namespace {

void check_query(const Dataset& ds, const Eigen::VectorXd& x) {
    if (x.size() != ds.covariate_dim()) {
        throw DimensionMismatch("query covariate has dimension " + std::to_string(x.size()) +
                                ", dataset has " + std::to_string(ds.covariate_dim()));
    }
}

// Inverse of a PSD moment matrix, falling back to the pseudo-inverse for
// rank-deficient input (degenerate CV folds, constant covariates).
Eigen::MatrixXd psd_inverse(const Eigen::MatrixXd& m, bool* used_pinv) {
    const SymMatrix s{m};
    const EigenPair ep = eigh(s);
    const double max_eig = std::max(ep.values.maxCoeff(), 0.0);
    const double cut = default_rank_tol(m.rows()) * std::max(max_eig, 1e-300);
    *used_pinv = ep.values.minCoeff() <= cut;
    Eigen::VectorXd inv(ep.values.size());
    for (Eigen::Index i = 0; i < inv.size(); ++i) {
        inv[i] = ep.values[i] <= cut ? 0.0 : 1.0 / ep.values[i];
    }
    return ep.vectors * inv.asDiagonal() * ep.vectors.transpose();
}

} // namespace

WeightReport global_weights(const Dataset& ds, const Eigen::VectorXd& x) {
    check_query(ds, x);
    if (ds.size() < 2) throw InsufficientData("global_weights: need n >= 2");
    const double n = static_cast<double>(ds.size());
    bool used_pinv = false;
    const Eigen::MatrixXd cov_inv = psd_inverse(ds.x_cov(), &used_pinv);
    const Eigen::VectorXd q = cov_inv * (x - ds.x_mean());
    WeightReport report;
    report.lambda.resize(ds.size());
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        report.lambda[i] = (1.0 + (ds.x(i) - ds.x_mean()).dot(q)) / n;
    }
    if (used_pinv) report.flags.push_back("covariance_pinv_fallback");
    return report;
}

WeightReport local_weights(const Dataset& ds, const Eigen::VectorXd& x, KernelKind kernel,
                           const Eigen::VectorXd& bandwidth) {
    check_query(ds, x);
    if (ds.size() < 2) throw InsufficientData("local_weights: need n >= 2");
    const Eigen::Index p = ds.covariate_dim();
    if (bandwidth.size() != p || (bandwidth.array() <= 0).any()) {
        throw Error("local_weights: bandwidth must be positive, one entry per covariate");
    }
    const Eigen::Index n = ds.size();
    const double n_inv = 1.0 / static_cast<double>(n);

    // Product kernel K_h(u) = prod_j K(u_j / h_j) / h_j.
    Eigen::VectorXd kvals(n);
    Eigen::MatrixXd diffs(n, p);
    Eigen::Index support = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd d = ds.x(i) - x;
        double kv = 1.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            kv *= kernel_value(kernel, d[j] / bandwidth[j]) / bandwidth[j];
        }
        kvals[i] = kv;
        diffs.row(i) = d.transpose();
        if (kv > 0) ++support;
    }
    if (support < 2) {
        throw DegenerateKernelSupport("local_weights: fewer than two sample points carry kernel "
                                      "mass at the query point");
    }

    double mu0 = 0.0;
    Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(p);
    Eigen::MatrixXd mu2 = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        mu0 += kvals[i];
        mu1 += kvals[i] * diffs.row(i).transpose();
        mu2 += kvals[i] * diffs.row(i).transpose() * diffs.row(i);
    }
    mu0 *= n_inv;
    mu1 *= n_inv;
    mu2 *= n_inv;

    bool used_pinv = false;
    const Eigen::MatrixXd mu2_inv = psd_inverse(mu2, &used_pinv);
    const Eigen::VectorXd corr = mu2_inv * mu1;
    const double denom = mu0 - mu1.dot(corr);
    if (denom <= 1e-12) {
        throw DegenerateKernelSupport("local_weights: degenerate kernel-weighted moments "
                                      "(denominator " +
                                      std::to_string(denom) + ")");
    }
    WeightReport report;
    report.lambda.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        report.lambda[i] = kvals[i] * (1.0 - diffs.row(i).dot(corr)) / denom * n_inv;
    }
    if (used_pinv) report.flags.push_back("kernel_moment_pinv_fallback");
    return report;
}

Eigen::VectorXd rule_of_thumb_bandwidth(const Dataset& ds) {
    const double n = static_cast<double>(ds.size());
    Eigen::VectorXd h(ds.covariate_dim());
    for (Eigen::Index j = 0; j < h.size(); ++j) {
        const double sd = std::sqrt(ds.x_cov()(j, j));
        h[j] = std::pow(n, -0.2) * (sd > 0 ? sd : 1.0);
    }
    return h;
}

WeightReport effective_weights(const Dataset& ds, const Eigen::VectorXd& x,
                               const WeightScheme& scheme) {
    if (!scheme.local) return global_weights(ds, x);
    const Eigen::VectorXd h =
        scheme.bandwidth.size() ? scheme.bandwidth : rule_of_thumb_bandwidth(ds);
    return local_weights(ds, x, scheme.kernel, h);
}

namespace {

PredictionReport finish_prediction(const Eigen::VectorXd& x, WeightReport weights, SymMatrix raw,
                                   std::optional<SolveReport> solver, bool projection) {
    // The graph field always carries the projected (valid) graph: negative
    // edge weights clipped, diagonal rebuilt. Evaluation code reads
    // raw_laplacian instead, where the metric-space minimizer lives.
    Graph graph = weights_from_laplacian(raw, /*clip_negative=*/true);
    SymMatrix projected = laplacian(graph);
    if (!projection) weights.flags.push_back("projection_off");
    return PredictionReport{x,
                            std::move(weights.lambda),
                            std::move(graph),
                            std::move(projected),
                            std::move(raw),
                            std::move(solver),
                            std::move(weights.flags)};
}

} // namespace

PredictionReport predict_frobenius(const Dataset& ds, const Eigen::VectorXd& x, double alpha,
                                   const WeightScheme& scheme, bool projection) {
    if (!(alpha > 0)) throw Error("predict_frobenius: alpha must be positive");
    WeightReport weights = effective_weights(ds, x, scheme);
    const Eigen::Index k = ds.node_count();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
    if (alpha == 1.0) {
        for (Eigen::Index i = 0; i < ds.size(); ++i) {
            acc += weights.lambda[i] * ds.laplacian(i).mat();
        }
    } else {
        for (Eigen::Index i = 0; i < ds.size(); ++i) {
            acc += weights.lambda[i] * matrix_power(ds.laplacian(i), alpha).mat();
        }
    }
    SymMatrix mean = clip_psd(SymMatrix(std::move(acc)), 0.0);
    SymMatrix raw = alpha == 1.0 ? std::move(mean) : matrix_power(mean, 1.0 / alpha);
    return finish_prediction(x, std::move(weights), std::move(raw), std::nullopt, projection);
}

PredictionReport predict_wasserstein(const Dataset& ds, const Eigen::VectorXd& x,
                                     const SolverConfig& solver, const WeightScheme& scheme,
                                     bool projection) {
    WeightReport weights = effective_weights(ds, x, scheme);
    BarycenterProblem problem;
    problem.covariances.reserve(static_cast<std::size_t>(ds.size()));
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        problem.covariances.push_back(pinv_psd(ds.laplacian(i)));
    }
    problem.weights = weights.lambda;
    problem.variant = solver.variant;
    problem.epsilon = solver.epsilon;
    problem.tol = solver.tol;
    problem.max_iter = solver.max_iter;
    problem.init = solver.init;

    SolveReport report = solve(problem);
    if (!report.converged) weights.flags.push_back("solver_not_converged");
    const SymMatrix raw = pinv_psd(center(report.result));
    return finish_prediction(x, std::move(weights), raw, std::move(report), projection);
}

PredictionReport predict(const Dataset& ds, const Eigen::VectorXd& x, const RegressorSpec& spec) {
    if (spec.metric.kind == MetricSpec::Kind::wasserstein) {
        return predict_wasserstein(ds, x, spec.solver, spec.weights, spec.projection);
    }
    return predict_frobenius(ds, x, spec.metric.alpha, spec.weights, spec.projection);
}

std::vector<PredictionReport> predict_grid(const Dataset& ds,
                                           const std::vector<Eigen::VectorXd>& xs,
                                           const RegressorSpec& spec) {
    std::vector<PredictionReport> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(predict(ds, x, spec));
    return out;
}

} // namespace netreg
