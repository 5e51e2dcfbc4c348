#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netreg/sym_matrix.hpp"

namespace netreg {

enum class BarycenterVariant { plain, shifted, entropic };

const char* variant_name(BarycenterVariant v);

/// Weighted Bures-Wasserstein barycenter problem over PSD covariances with
/// affine weights: the weights must sum to one but individual entries may be
/// negative. Negative weights make this an open problem; the solvers iterate
/// anyway and report divergence instead of hiding it.
struct BarycenterProblem {
    std::vector<SymMatrix> covariances;
    Eigen::VectorXd weights;
    BarycenterVariant variant = BarycenterVariant::shifted;
    double epsilon = 1e-5; // entropic regularization strength
    double tol = 1e-8;
    int max_iter = 500;
    std::optional<SymMatrix> init;
    bool trace_objective = false; // record sum_i w_i BW²(S_t, Σ_i) per step

    /// Throws on violated invariants (empty input, dimension mismatch,
    /// |Σ weights - 1| >= 1e-12, non-PSD covariance).
    void validate() const;
};

struct SolveReport {
    SymMatrix result;
    int iterations = 0;
    std::vector<double> residuals; // one relative residual per step taken
    bool converged = false;
    BarycenterVariant variant_used = BarycenterVariant::shifted;
    double wall_time_sec = 0.0;
    std::vector<std::string> flags;
    std::vector<double> objective_trace; // filled when trace_objective is set
};

/// Relative step residual ||next - current||_F / max(1, ||current||_F).
double step_residual(const SymMatrix& current, const SymMatrix& next);

/// Solves the problem with its configured variant. The plain variant
/// requires at least one strictly positive definite covariance; when none
/// is, it reroutes to the shifted variant and flags the report. Exhausting
/// max_iter returns converged = false rather than throwing; a genuinely
/// negative iterate eigenvalue throws DivergedNegativeEigenvalue.
SolveReport solve(const BarycenterProblem& problem);

/// Plain fixed point on the covariances shifted by J/k (strictly positive
/// definite on the ones-direction for connected-graph inputs); the shift is
/// removed from the result by centering.
SolveReport solve_shifted(BarycenterProblem problem);

/// Entropy-regularized fixed point; iterates until the absolute step
/// ||S_{t+1} - S_t||_F falls to tol. Whether this iteration converges is an
/// open question, so NotConverged is an ordinary outcome.
SolveReport solve_entropic(BarycenterProblem problem);

/// Weighted objective sum_i w_i BW²(cov_i, s); used by convergence traces.
double barycenter_objective(const std::vector<SymMatrix>& covariances,
                            const Eigen::VectorXd& weights, const SymMatrix& s);

} // namespace netreg
