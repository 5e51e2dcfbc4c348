#include "netreg/barycenter.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "netreg/metrics.hpp"

namespace netreg {

const char* variant_name(BarycenterVariant v) {
    switch (v) {
        case BarycenterVariant::plain: return "plain";
        case BarycenterVariant::shifted: return "shifted";
        case BarycenterVariant::entropic: return "entropic";
    }
    return "unknown";
}

void BarycenterProblem::validate() const {
    if (covariances.empty()) throw InsufficientData("barycenter: no covariances");
    if (static_cast<Eigen::Index>(covariances.size()) != weights.size()) {
        throw DimensionMismatch("barycenter: " + std::to_string(covariances.size()) +
                                " covariances vs " + std::to_string(weights.size()) + " weights");
    }
    const Eigen::Index k = covariances.front().dim();
    for (const auto& c : covariances) {
        if (c.dim() != k) throw DimensionMismatch("barycenter: covariance dimensions differ");
    }
    const double sum = weights.sum();
    if (std::abs(sum - 1.0) >= 1e-12) {
        throw Error("barycenter: weights must sum to 1 (affine constraint), got " +
                    std::to_string(sum));
    }
    if (!(tol > 0) || max_iter < 1) throw Error("barycenter: tol and max_iter must be positive");
    if (variant == BarycenterVariant::entropic && !(epsilon > 0)) {
        throw Error("barycenter: entropic variant needs epsilon > 0");
    }
    for (std::size_t i = 0; i < covariances.size(); ++i) {
        const EigenPair ep = eigh(covariances[i]);
        const double max_eig = std::max(ep.values.maxCoeff(), 0.0);
        if (ep.values.minCoeff() < -default_rank_tol(k) * std::max(max_eig, 1.0)) {
            throw NotPsd("barycenter: covariance " + std::to_string(i) + " is not PSD");
        }
    }
    if (init && init->dim() != k) {
        throw DimensionMismatch("barycenter: init dimension differs from covariances");
    }
}

double step_residual(const SymMatrix& current, const SymMatrix& next) {
    return (next.mat() - current.mat()).norm() / std::max(1.0, current.frobenius_norm());
}

double barycenter_objective(const std::vector<SymMatrix>& covariances,
                            const Eigen::VectorXd& weights, const SymMatrix& s) {
    double obj = 0.0;
    for (std::size_t i = 0; i < covariances.size(); ++i) {
        obj += weights[static_cast<Eigen::Index>(i)] * bures_wasserstein_sq(covariances[i], s);
    }
    return obj;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SymMatrix default_init(const std::vector<SymMatrix>& covs, const Eigen::VectorXd& w) {
    // Normalized non-negative part of the weighted arithmetic mean; PD for
    // connected-graph shifted inputs and cheap.
    const Eigen::Index k = covs.front().dim();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
    double total = 0.0;
    for (std::size_t i = 0; i < covs.size(); ++i) {
        const double wi = w[static_cast<Eigen::Index>(i)];
        if (wi > 0) {
            acc += wi * covs[i].mat();
            total += wi;
        }
    }
    return clip_psd(SymMatrix(acc / total), 0.0);
}

// Eigenvalue guard for iterates and conjugated products: clamps rounding-level
// negatives at 0 and aborts on genuinely negative directions, which can arise
// only under affine (negative) weights.
Eigen::VectorXd guard_eigenvalues(const Eigen::VectorXd& values, double scale,
                                  const char* what) {
    const double threshold = -1e-6 * std::max(scale, 1e-300);
    Eigen::VectorXd out = values;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out[i] < threshold) {
            throw DivergedNegativeEigenvalue(
                std::string(what) + ": eigenvalue " + std::to_string(out[i]) +
                " below " + std::to_string(threshold));
        }
        if (out[i] < 0) out[i] = 0.0;
    }
    return out;
}

SymMatrix guarded_sqrt(const SymMatrix& s, double scale, const char* what) {
    const EigenPair ep = eigh(s);
    const Eigen::VectorXd w = guard_eigenvalues(ep.values, scale, what);
    return SymMatrix(ep.vectors * w.cwiseSqrt().asDiagonal() * ep.vectors.transpose());
}

// Final-iterate guard: the loop only eigendecomposes an iterate when taking
// the next step, so the returned matrix gets its own check. A converged-to
// indefinite fixed point must throw, not be quietly repaired.
SymMatrix guarded_clip(const SymMatrix& s, const char* what) {
    const EigenPair ep = eigh(s);
    const Eigen::VectorXd w = guard_eigenvalues(ep.values, s.frobenius_norm(), what);
    return SymMatrix(ep.vectors * w.asDiagonal() * ep.vectors.transpose());
}

struct IterationState {
    SymMatrix s;
    std::vector<double> residuals;
    std::vector<double> objective;
    bool converged = false;
    int iterations = 0;
};

template <typename StepFn, typename StopFn>
IterationState run_fixed_point(const BarycenterProblem& p, SymMatrix s0, StepFn&& step,
                               StopFn&& stop) {
    IterationState st{std::move(s0), {}, {}, false, 0};
    for (int t = 0; t < p.max_iter; ++t) {
        SymMatrix next = step(st.s);
        st.residuals.push_back(step_residual(st.s, next));
        const bool done = stop(st.s, next);
        st.s = std::move(next);
        st.iterations = t + 1;
        if (p.trace_objective) {
            st.objective.push_back(barycenter_objective(p.covariances, p.weights, st.s));
        }
        if (done) {
            st.converged = true;
            break;
        }
    }
    return st;
}

SolveReport solve_plain_impl(const BarycenterProblem& p, std::vector<std::string> flags) {
    const auto start = Clock::now();
    const Eigen::Index k = p.covariances.front().dim();

    SymMatrix s0 = p.init ? clip_psd(*p.init, 0.0) : default_init(p.covariances, p.weights);

    auto step = [&](const SymMatrix& s) -> SymMatrix {
        const double scale = s.frobenius_norm();
        const EigenPair ep = eigh(s);
        const Eigen::VectorXd vals = guard_eigenvalues(ep.values, scale, "plain iterate");
        const double cut = default_rank_tol(k) * std::max(vals.maxCoeff(), 1.0);
        Eigen::VectorXd root(vals.size()), inv_root(vals.size());
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
            root[i] = std::sqrt(vals[i]);
            inv_root[i] = vals[i] <= cut ? 0.0 : 1.0 / root[i];
        }
        const Eigen::MatrixXd sqrt_s = ep.vectors * root.asDiagonal() * ep.vectors.transpose();
        const Eigen::MatrixXd isqrt_s = ep.vectors * inv_root.asDiagonal() * ep.vectors.transpose();

        Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(k, k);
        for (std::size_t i = 0; i < p.covariances.size(); ++i) {
            const SymMatrix conj(sqrt_s * p.covariances[i].mat() * sqrt_s);
            mid += p.weights[static_cast<Eigen::Index>(i)] *
                   guarded_sqrt(conj, scale, "plain inner product").mat();
        }
        return SymMatrix(isqrt_s * mid * mid * isqrt_s);
    };
    auto stop = [&](const SymMatrix& cur, const SymMatrix& next) {
        return step_residual(cur, next) <= p.tol;
    };

    IterationState st = run_fixed_point(p, std::move(s0), step, stop);
    return SolveReport{guarded_clip(st.s, "plain result"),
                       st.iterations,
                       std::move(st.residuals),
                       st.converged,
                       BarycenterVariant::plain,
                       seconds_since(start),
                       std::move(flags),
                       std::move(st.objective)};
}

bool any_positive_definite(const std::vector<SymMatrix>& covs) {
    for (const auto& c : covs) {
        const EigenPair ep = eigh(c);
        const double max_eig = std::max(ep.values.maxCoeff(), 0.0);
        if (ep.values.minCoeff() > default_rank_tol(c.dim()) * std::max(max_eig, 1.0)) return true;
    }
    return false;
}

} // namespace

SolveReport solve_shifted(BarycenterProblem problem) {
    problem.variant = BarycenterVariant::shifted;
    problem.validate();
    const auto start = Clock::now();
    const Eigen::Index k = problem.covariances.front().dim();
    const Eigen::MatrixXd shift = Eigen::MatrixXd::Constant(k, k, 1.0 / static_cast<double>(k));

    BarycenterProblem shifted = problem;
    for (auto& c : shifted.covariances) c = SymMatrix(c.mat() + shift);
    if (shifted.init) shifted.init = SymMatrix(shifted.init->mat() + shift);

    SolveReport report = solve_plain_impl(shifted, {});
    report.variant_used = BarycenterVariant::shifted;
    // J/k and centered matrices commute, so the shift contributes exactly J/k
    // to the barycenter; centering removes it.
    report.result = clip_psd(center(report.result), 0.0);
    report.wall_time_sec = seconds_since(start);
    // Objective traces were computed against the shifted covariances; for
    // iterates with unit ones-component the shifted and unshifted objectives
    // coincide.
    return report;
}

SolveReport solve_entropic(BarycenterProblem problem) {
    problem.variant = BarycenterVariant::entropic;
    problem.validate();
    const auto start = Clock::now();
    const Eigen::Index k = problem.covariances.front().dim();
    const double eps = problem.epsilon;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k, k);

    SymMatrix s0 =
        problem.init ? clip_psd(*problem.init, 0.0) : default_init(problem.covariances, problem.weights);

    auto step = [&](const SymMatrix& s) -> SymMatrix {
        const double scale = s.frobenius_norm();
        const SymMatrix sqrt_s = guarded_sqrt(s, scale, "entropic iterate");
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
        for (std::size_t i = 0; i < problem.covariances.size(); ++i) {
            const SymMatrix conj(sqrt_s.mat() * problem.covariances[i].mat() * sqrt_s.mat());
            const SymMatrix inner(eye + (16.0 / (eps * eps)) *
                                            clip_psd(conj, 0.0).mat());
            acc += problem.weights[static_cast<Eigen::Index>(i)] *
                   (-eye + guarded_sqrt(inner, scale, "entropic inner product").mat());
        }
        return SymMatrix((eps / 4.0) * acc);
    };
    auto stop = [&](const SymMatrix& cur, const SymMatrix& next) {
        return (next.mat() - cur.mat()).norm() <= problem.tol;
    };

    IterationState st = run_fixed_point(problem, std::move(s0), step, stop);
    return SolveReport{guarded_clip(st.s, "entropic result"),
                       st.iterations,
                       std::move(st.residuals),
                       st.converged,
                       BarycenterVariant::entropic,
                       seconds_since(start),
                       {},
                       std::move(st.objective)};
}

SolveReport solve(const BarycenterProblem& problem) {
    problem.validate();
    switch (problem.variant) {
        case BarycenterVariant::shifted:
            return solve_shifted(problem);
        case BarycenterVariant::entropic:
            return solve_entropic(problem);
        case BarycenterVariant::plain: {
            if (!any_positive_definite(problem.covariances)) {
                // Theorem hypothesis fails for every covariance (e.g. all
                // graph-Laplacian pseudo-inverses); run the shifted variant
                // and say so instead of silently iterating outside it.
                SolveReport report = solve_shifted(problem);
                report.flags.push_back("rerouted_plain_to_shifted");
                return report;
            }
            return solve_plain_impl(problem, {});
        }
    }
    throw Error("solve: unknown variant");
}

} // namespace netreg
