#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netreg/regress.hpp"

namespace netreg::tools {

/// Knobs shared by the experiment drivers; each driver reads the subset it
/// needs and echoes everything into its output manifest, which doubles as a
/// rerunnable --config file.
struct ExperimentOptions {
    std::string name;
    std::filesystem::path out_dir;
    std::uint64_t seed = 12345;

    double eps = 1e-5;
    double tol = 1e-8;
    int max_iter = 500;

    std::string scaling_topology = "cycle";
    std::vector<int> scaling_sizes = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};

    double grid_lo = 1.0;
    double grid_hi = 5.0;
    double grid_step = 0.1;

    int spectral_grid = 20;
    double spectral_lo = 1.0;
    double spectral_hi = 100.0;

    int er_train = 100;
    int er_targets = 9;

    int threads = 0; // 0 = hardware concurrency
};

/// Column-oriented numeric table; written as CSV with full precision.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_series_csv(const std::filesystem::path& path, const SeriesTable& table);

struct Fig1Result {
    PredictionReport global_frobenius;
    PredictionReport global_wasserstein;
    PredictionReport local_frobenius;
    PredictionReport local_wasserstein;
};

/// Triangle-family replication: writes the dataset directory, global and
/// local predictions at x = 5 under both metrics, and the manifest.
Fig1Result run_fig1_toy(const ExperimentOptions& options);

/// Error at x = 5 versus the ground-truth graph as the node count grows,
/// for the Frobenius, Wasserstein and entropic-Wasserstein regressors with
/// global and local weights. Columns per scheme prefix g_/l_:
/// frob_err, wass_err, ent_err, ent_rel_diff, wass_iters, wass_converged,
/// ent_converged.
SeriesTable run_scaling(const ExperimentOptions& options);

/// Named-topology interpolation: local regression over path/cycle/star/
/// wheel/complete with covariates 1..5, prediction error curves against
/// every topology. Columns: x, then per target f_<t> (Frobenius distance of
/// the Frobenius prediction), wb_<t> (squared Bures-Wasserstein distance
/// between predicted and target Laplacians), w2_<t> (squared Wasserstein
/// graph distance of the Wasserstein prediction).
SeriesTable run_interpolate(const ExperimentOptions& options);

/// Spectral-covariate regression over twelve named topologies with
/// x = (second, third smallest Laplacian eigenvalue) on a log-spaced grid;
/// emits one distance table per regressor plus a minima summary.
struct SpectralResult {
    SeriesTable frobenius;
    SeriesTable wasserstein;
    SeriesTable minima; // one row per (metric, target): argmin location
};
SpectralResult run_spectral(const ExperimentOptions& options);

/// Fiedler-value regression over seeded Erdős-Rényi graphs. Columns:
/// target, wasserstein_abs_err, frobenius_abs_err.
SeriesTable run_erdos_renyi(const ExperimentOptions& options);

/// Per-iteration objective traces for the shifted and entropic solvers on a
/// synthetic region-network dataset. Columns: query, iteration, objective,
/// residual.
struct ConvergenceResult {
    SeriesTable shifted;
    SeriesTable entropic;
};
ConvergenceResult run_convergence(const ExperimentOptions& options);

/// Dispatch by options.name; writes outputs and the manifest.
void run_experiment(const ExperimentOptions& options);

} // namespace netreg::tools
