#include "netreg/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "netreg/rng.hpp"

namespace netreg {

namespace {

// Raw (unprojected) uniform-weight minimizer; the metric-space mean that
// variance and R² are measured against.
SymMatrix frechet_mean_raw(const Dataset& ds, const MetricSpec& metric,
                           const SolverConfig& solver) {
    const Eigen::Index n = ds.size();
    if (metric.kind == MetricSpec::Kind::frobenius_power) {
        const Eigen::Index k = ds.node_count();
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
        if (metric.alpha == 1.0) {
            for (Eigen::Index i = 0; i < n; ++i) acc += ds.laplacian(i).mat();
            return SymMatrix(acc / static_cast<double>(n));
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            acc += matrix_power(ds.laplacian(i), metric.alpha).mat();
        }
        return matrix_power(clip_psd(SymMatrix(acc / static_cast<double>(n)), 0.0),
                            1.0 / metric.alpha);
    }
    BarycenterProblem problem;
    problem.covariances.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) problem.covariances.push_back(pinv_psd(ds.laplacian(i)));
    problem.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    problem.variant = solver.variant;
    problem.epsilon = solver.epsilon;
    problem.tol = solver.tol;
    problem.max_iter = solver.max_iter;
    const SolveReport report = solve(problem);
    return pinv_psd(center(report.result));
}

} // namespace

Graph frechet_mean(const Dataset& ds, const MetricSpec& metric, const SolverConfig& solver) {
    return weights_from_laplacian(frechet_mean_raw(ds, metric, solver), /*clip_negative=*/true);
}

double frechet_variance(const Dataset& ds, const MetricSpec& metric, const SolverConfig& solver) {
    const SymMatrix mean = frechet_mean_raw(ds, metric, solver);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        acc += distance_sq(metric, ds.laplacian(i), mean);
    }
    return acc / static_cast<double>(ds.size());
}

double r_squared(const Dataset& ds, const EvalConfig& config) {
    const double variance =
        frechet_variance(ds, config.error_metric, config.prediction.solver);
    if (variance <= 1e-12) {
        throw UndefinedRSquared("r_squared: Fréchet variance is zero (identical responses)");
    }
    RegressorSpec spec = config.prediction;
    spec.projection = false; // errors are metric-space errors
    double resid = 0.0;
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        const PredictionReport report = predict(ds, ds.x(i), spec);
        resid += distance_sq(config.error_metric, report.raw_laplacian, ds.laplacian(i));
    }
    resid /= static_cast<double>(ds.size());
    return 1.0 - resid / variance;
}

EvalResult cv_mspe(const Dataset& ds, const EvalConfig& config) {
    const Eigen::Index n = ds.size();
    if (config.folds < 2) throw Error("cv_mspe: need folds >= 2");
    if (n < config.folds) {
        throw InsufficientData("cv_mspe: n = " + std::to_string(n) + " < folds = " +
                               std::to_string(config.folds));
    }
    if (config.reps < 1) throw Error("cv_mspe: need reps >= 1");

    RegressorSpec spec = config.prediction;
    spec.projection = false;

    EvalResult result;
    result.mspe_per_rep.reserve(static_cast<std::size_t>(config.reps));
    std::set<std::string> flags;

    for (int rep = 0; rep < config.reps; ++rep) {
        SplitMix64 rng(sub_seed(config.seed, static_cast<std::uint64_t>(rep)));
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        shuffle(order, rng);

        double total = 0.0;
        std::size_t cursor = 0;
        for (int fold = 0; fold < config.folds; ++fold) {
            const std::size_t fold_size = static_cast<std::size_t>(n) / config.folds +
                                          (fold < static_cast<int>(n % config.folds) ? 1u : 0u);
            std::vector<Eigen::Index> held(order.begin() + cursor,
                                           order.begin() + cursor + fold_size);
            cursor += fold_size;

            std::vector<Eigen::Index> train;
            train.reserve(static_cast<std::size_t>(n) - fold_size);
            std::vector<bool> is_held(static_cast<std::size_t>(n), false);
            for (Eigen::Index i : held) is_held[static_cast<std::size_t>(i)] = true;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!is_held[static_cast<std::size_t>(i)]) train.push_back(i);
            }

            const Dataset fit = ds.subset(train);
            for (Eigen::Index i : held) {
                const PredictionReport report = predict(fit, ds.x(i), spec);
                total += distance_sq(config.error_metric, report.raw_laplacian, ds.laplacian(i));
                for (const auto& f : report.flags) {
                    if (f != "projection_off") flags.insert(f);
                }
            }
        }
        result.mspe_per_rep.push_back(total / static_cast<double>(n));
    }

    double sum = 0.0;
    for (double v : result.mspe_per_rep) sum += v;
    result.mspe_mean = sum / static_cast<double>(result.mspe_per_rep.size());
    result.flags.assign(flags.begin(), flags.end());
    return result;
}

EvalResult evaluate(const Dataset& ds, const EvalConfig& config) {
    EvalResult result = cv_mspe(ds, config);
    result.frechet_variance =
        frechet_variance(ds, config.error_metric, config.prediction.solver);
    try {
        result.r_squared = r_squared(ds, config);
    } catch (const UndefinedRSquared&) {
        result.r_squared = std::numeric_limits<double>::quiet_NaN();
        result.flags.push_back("r_squared_undefined");
    }
    return result;
}

} // namespace netreg
