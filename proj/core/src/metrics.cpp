#include "netreg/metrics.hpp"

#include <cmath>
#include <string>

namespace netreg {

namespace {

void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) +
                                " vs " + std::to_string(b) + " nodes");
    }
}

} // namespace

double bures_wasserstein_sq(const SymMatrix& a, const SymMatrix& b) {
    check_same_dim(a.dim(), b.dim(), "bures_wasserstein_sq");
    const SymMatrix root_a = psd_sqrt(clip_psd(a, 0.0));
    const SymMatrix conj = SymMatrix(root_a.mat() * b.mat() * root_a.mat());
    const SymMatrix inner = psd_sqrt(clip_psd(conj, 0.0));
    const double value = a.trace() + b.trace() - 2.0 * inner.trace();
    // Identical inputs must give exactly 0; the trace expression lands within
    // rounding of zero there.
    return value < 0.0 ? 0.0 : value;
}

double frobenius_power_distance(const SymMatrix& l1, const SymMatrix& l2, double alpha) {
    check_same_dim(l1.dim(), l2.dim(), "frobenius_power_distance");
    if (alpha == 1.0) return (l1.mat() - l2.mat()).norm();
    return (matrix_power(clip_psd(l1, 0.0), alpha).mat() -
            matrix_power(clip_psd(l2, 0.0), alpha).mat())
        .norm();
}

double frobenius_power_distance(const Graph& g1, const Graph& g2, double alpha) {
    check_same_dim(g1.node_count(), g2.node_count(), "frobenius_power_distance");
    return frobenius_power_distance(laplacian(g1), laplacian(g2), alpha);
}

double wasserstein_distance_sq(const SymMatrix& l1, const SymMatrix& l2, double rank_tol) {
    check_same_dim(l1.dim(), l2.dim(), "wasserstein_distance_sq");
    const SymMatrix c1 = pinv_psd(clip_psd(l1, 0.0), rank_tol);
    const SymMatrix c2 = pinv_psd(clip_psd(l2, 0.0), rank_tol);
    return bures_wasserstein_sq(c1, c2);
}

double wasserstein_distance_sq(const Graph& g1, const Graph& g2, double rank_tol) {
    check_same_dim(g1.node_count(), g2.node_count(), "wasserstein_distance_sq");
    return wasserstein_distance_sq(laplacian(g1), laplacian(g2), rank_tol);
}

double distance(const MetricSpec& spec, const SymMatrix& l1, const SymMatrix& l2) {
    if (spec.kind == MetricSpec::Kind::wasserstein) {
        return std::sqrt(wasserstein_distance_sq(l1, l2, spec.rank_tol));
    }
    return frobenius_power_distance(l1, l2, spec.alpha);
}

double distance(const MetricSpec& spec, const Graph& g1, const Graph& g2) {
    return distance(spec, laplacian(g1), laplacian(g2));
}

double distance_sq(const MetricSpec& spec, const SymMatrix& l1, const SymMatrix& l2) {
    if (spec.kind == MetricSpec::Kind::wasserstein) {
        return wasserstein_distance_sq(l1, l2, spec.rank_tol);
    }
    const double d = frobenius_power_distance(l1, l2, spec.alpha);
    return d * d;
}

double distance_sq(const MetricSpec& spec, const Graph& g1, const Graph& g2) {
    return distance_sq(spec, laplacian(g1), laplacian(g2));
}

} // namespace netreg
