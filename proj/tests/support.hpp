#pragma once

// Shared test fixtures: seeded random inputs and independent oracles. The
// oracles here must stay independent of the implementation paths they check
// (direct eigenvalue arithmetic, brute-force minimization, bisection).

#include <cmath>
#include <utility>
#include <vector>

#include "netreg/graph.hpp"
#include "netreg/regress.hpp"
#include "netreg/rng.hpp"
#include "netreg/sym_matrix.hpp"

namespace netreg::testing {

inline Eigen::MatrixXd random_matrix(SplitMix64& rng, Eigen::Index n, double lo = -1.0,
                                     double hi = 1.0) {
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = uniform_double(rng, lo, hi);
    return m;
}

inline SymMatrix random_symmetric(SplitMix64& rng, Eigen::Index n) {
    return SymMatrix(random_matrix(rng, n));
}

/// Random PSD matrix A Aᵀ + jitter I.
inline SymMatrix random_psd(SplitMix64& rng, Eigen::Index n, double jitter = 0.0) {
    const Eigen::MatrixXd a = random_matrix(rng, n);
    return SymMatrix(a * a.transpose() +
                     jitter * Eigen::MatrixXd::Identity(n, n));
}

/// Random orthogonal matrix via QR of a random matrix.
inline Eigen::MatrixXd random_orthogonal(SplitMix64& rng, Eigen::Index n) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, n));
    return qr.householderQ();
}

/// Connected weighted graph: random spanning tree plus random extra edges,
/// weights in [0.5, 2).
inline Graph random_connected_graph(SplitMix64& rng, int n, double extra_edge_prob = 0.4) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    shuffle(order, rng);
    for (int i = 1; i < n; ++i) {
        const int a = order[static_cast<std::size_t>(i)];
        const int b = order[uniform_below(rng, static_cast<std::uint64_t>(i))];
        w(a, b) = w(b, a) = uniform_double(rng, 0.5, 2.0);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (w(i, j) == 0.0 && uniform_double(rng) < extra_edge_prob) {
                w(i, j) = w(j, i) = uniform_double(rng, 0.5, 2.0);
            }
        }
    }
    return Graph(std::move(w));
}

/// The four-pair triangle dataset: covariates 2, 4, 6, 8 with edge weights
/// (1/x, 1/x, 2/x).
inline Dataset fig1_dataset() {
    std::vector<std::pair<Eigen::VectorXd, Graph>> pairs;
    for (auto& [x, g] : make_triangle_family({2.0, 4.0, 6.0, 8.0})) {
        Eigen::VectorXd xv(1);
        xv << x;
        pairs.emplace_back(xv, std::move(g));
    }
    return Dataset(std::move(pairs));
}

inline Eigen::VectorXd scalar(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

/// Brute-force 1-D Bures barycenter oracle: minimizes sum_i w_i (s - s_i)²
/// over the standard deviation s by golden-section search.
inline double one_dim_barycenter_sq(const std::vector<double>& variances,
                                    const std::vector<double>& weights) {
    auto objective = [&](double s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < variances.size(); ++i) {
            const double d = s - std::sqrt(variances[i]);
            acc += weights[i] * d * d;
        }
        return acc;
    };
    double lo = 0.0, hi = 0.0;
    for (double v : variances) hi = std::max(hi, std::sqrt(v));
    hi = 2.0 * hi + 1.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (objective(c) < objective(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    const double s = 0.5 * (a + b);
    return s * s;
}

/// Closed-form commuting-case barycenter (sum_i w_i Σ_i^{1/2})² evaluated by
/// direct eigenvalue powering in the common basis.
inline SymMatrix commuting_barycenter(const Eigen::MatrixXd& basis,
                                      const std::vector<Eigen::VectorXd>& spectra,
                                      const Eigen::VectorXd& weights) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(spectra.front().size());
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        acc += weights[static_cast<Eigen::Index>(i)] * spectra[i].cwiseSqrt();
    }
    const Eigen::VectorXd sq = acc.cwiseProduct(acc);
    return SymMatrix(basis * sq.asDiagonal() * basis.transpose());
}

/// Scalar entropic fixed point s = (eps/4) sum_i w_i (-1 + sqrt(1 + 16 s v_i / eps²))
/// found by bisection on f(s) = rhs(s) - s.
inline double entropic_scalar_fixed_point(const std::vector<double>& variances,
                                          const std::vector<double>& weights, double eps) {
    auto excess = [&](double s) {
        double rhs = 0.0;
        for (std::size_t i = 0; i < variances.size(); ++i) {
            rhs += weights[i] * (-1.0 + std::sqrt(1.0 + 16.0 * s * variances[i] / (eps * eps)));
        }
        return (eps / 4.0) * rhs - s;
    };
    double lo = 1e-300, hi = 1.0;
    while (excess(hi) > 0) hi *= 2.0;
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double max_abs_row_sum(const SymMatrix& m) {
    return m.mat().rowwise().sum().cwiseAbs().maxCoeff();
}

} // namespace netreg::testing
