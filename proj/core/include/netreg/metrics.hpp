#pragma once

#include "netreg/graph.hpp"
#include "netreg/sym_matrix.hpp"

namespace netreg {

/// Which graph metric a computation runs under.
struct MetricSpec {
    enum class Kind { frobenius_power, wasserstein };

    Kind kind = Kind::frobenius_power;
    double alpha = 1.0;     // frobenius_power only, > 0
    double rank_tol = -1.0; // < 0 -> default

    static MetricSpec frobenius(double alpha = 1.0) {
        return MetricSpec{Kind::frobenius_power, alpha, -1.0};
    }
    static MetricSpec wasserstein() { return MetricSpec{Kind::wasserstein, 1.0, -1.0}; }

    const char* name() const {
        return kind == Kind::wasserstein ? "wasserstein" : "frobenius";
    }
};

/// Squared Bures-Wasserstein distance between PSD matrices:
/// Tr(A) + Tr(B) - 2 Tr((A^{1/2} B A^{1/2})^{1/2}), clamped at 0.
/// The inner product is eigenvalue-clamped before the square root; it is PSD
/// analytically but accumulates rounding noise.
double bures_wasserstein_sq(const SymMatrix& a, const SymMatrix& b);

/// d_{F,alpha} on Laplacian matrices: ||F_alpha(L1) - F_alpha(L2)||_F.
double frobenius_power_distance(const SymMatrix& l1, const SymMatrix& l2, double alpha = 1.0);
double frobenius_power_distance(const Graph& g1, const Graph& g2, double alpha = 1.0);

/// Squared 2-Wasserstein distance between the Gaussian representations
/// N(0, L1†), N(0, L2†).
double wasserstein_distance_sq(const SymMatrix& l1, const SymMatrix& l2, double rank_tol = -1.0);
double wasserstein_distance_sq(const Graph& g1, const Graph& g2, double rank_tol = -1.0);

/// Metric dispatch. distance() is d_{F,alpha} or sqrt(W2²); distance_sq()
/// avoids the square root for squared-error accumulation.
double distance(const MetricSpec& spec, const Graph& g1, const Graph& g2);
double distance(const MetricSpec& spec, const SymMatrix& l1, const SymMatrix& l2);
double distance_sq(const MetricSpec& spec, const Graph& g1, const Graph& g2);
double distance_sq(const MetricSpec& spec, const SymMatrix& l1, const SymMatrix& l2);

} // namespace netreg
