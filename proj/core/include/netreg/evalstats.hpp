#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netreg/regress.hpp"

namespace netreg {

struct EvalConfig {
    RegressorSpec prediction;
    MetricSpec error_metric;
    int folds = 10;
    int reps = 100;
    std::uint64_t seed = 0;
};

struct EvalResult {
    double r_squared = 0.0;
    double frechet_variance = 0.0;
    double mspe_mean = 0.0;
    std::vector<double> mspe_per_rep;
    std::vector<std::string> flags;
};

/// Empirical Fréchet mean: uniform-weight minimizer of mean squared distance.
/// Frobenius metric -> arithmetic mean in F_alpha space; Wasserstein ->
/// uniform-weight barycenter.
Graph frechet_mean(const Dataset& ds, const MetricSpec& metric, const SolverConfig& solver = {});

/// Mean squared distance to the Fréchet mean (computed against the raw
/// metric-space minimizer, not the projected graph).
double frechet_variance(const Dataset& ds, const MetricSpec& metric,
                        const SolverConfig& solver = {});

/// Fréchet coefficient of determination, in-sample: predictions at each
/// training covariate, residuals and variance under config.error_metric.
/// Throws UndefinedRSquared when the Fréchet variance vanishes.
double r_squared(const Dataset& ds, const EvalConfig& config);

/// k-fold cross-validated mean squared prediction error, averaged over
/// config.reps repetitions. Repetition r re-shuffles fold assignment with
/// the sub-seed sub_seed(config.seed, r); results are fully deterministic
/// for a fixed seed. Degenerate folds (rank-deficient covariate covariance)
/// are flagged, not fatal.
EvalResult cv_mspe(const Dataset& ds, const EvalConfig& config);

/// r_squared + frechet_variance + cv_mspe in one result.
EvalResult evaluate(const Dataset& ds, const EvalConfig& config);

} // namespace netreg
