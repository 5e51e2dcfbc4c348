#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "netreg/sym_matrix.hpp"

namespace netreg {

/// Weighted graph on a fixed node set: symmetric non-negative weight matrix
/// with zero diagonal. The regression response object.
class Graph {
public:
    /// Validates and adopts a weight matrix. Asymmetry beyond 1e-12,
    /// nonzero diagonal, negative or non-finite weights throw NotAGraph.
    explicit Graph(Eigen::MatrixXd weights);

    static Graph empty(Eigen::Index n);

    Eigen::Index node_count() const { return weights_.rows(); }
    const Eigen::MatrixXd& weights() const { return weights_; }
    double weight(Eigen::Index i, Eigen::Index j) const { return weights_(i, j); }

    /// Number of strictly positive edges (unordered pairs).
    std::size_t edge_count() const;

    /// Connectivity over strictly positive edges (union-find).
    bool is_connected() const;

private:
    Eigen::MatrixXd weights_;
};

/// L = D - W. PSD, zero row sums, non-positive off-diagonals; in bijection
/// with Graph.
SymMatrix laplacian(const Graph& g);

/// Inverse of `laplacian`: w_ij = -L_ij off the diagonal. With clip_negative,
/// invalid (negative) weights are clamped to 0; otherwise an off-diagonal
/// entry above 1e-9 throws NotAGraph. The diagonal is discarded.
Graph weights_from_laplacian(const SymMatrix& l, bool clip_negative = true);

/// Covariance of the Gaussian representation N(0, L†).
SymMatrix gaussian_covariance(const Graph& g, double rank_tol = -1.0);

enum class TopologyKind {
    path,
    cycle,
    star,
    wheel,
    complete,
    dumbbell,
    lollipop,
    pentagonal_prism,
    two_star,
    k_regular,
};

struct NamedTopology {
    TopologyKind kind = TopologyKind::path;
    int n = 0;
    double uniform_weight = 1.0;
    int k = 0; // degree, k_regular only
};

const char* topology_name(TopologyKind kind);

/// Connected unit-pattern generator; every present edge gets
/// t.uniform_weight. Incompatible (kind, n) throws UnsupportedTopology.
///
/// Splits not forced by the names: dumbbell(10) is two K4 blocks joined by a
/// two-node path; lollipop(10) is K5 plus a 5-node tail; two_star(10) is two
/// 5-node stars with their centers joined; pentagonal_prism is C5 x K2.
Graph make_named(const NamedTopology& t);

/// Family of graphs indexed by covariate x: the shape of `base` with every
/// edge weight edge_weight(x) (default 1/x). Returns (x, graph) pairs in
/// input order.
std::vector<std::pair<double, Graph>> make_scaled_family(
    const NamedTopology& base, const std::vector<double>& covariates,
    const std::function<double(double)>& edge_weight = {});

/// The three-node family with weights (1/x, 1/x, 2/x) on edges
/// (v1,v2), (v1,v3), (v2,v3).
std::vector<std::pair<double, Graph>> make_triangle_family(const std::vector<double>& covariates);

/// G(n, p) with unit edge weights; deterministic for a fixed seed.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Laplacian eigenvalues at the requested ranks (1-based, ascending order).
Eigen::VectorXd spectral_covariate(const Graph& g, const std::vector<int>& ranks);

/// Second-smallest Laplacian eigenvalue (algebraic connectivity).
double fiedler_value(const Graph& g);

/// Edge-list CSV: header "i,j,w", 0-based indices with i < j, one row per
/// strictly positive edge.
void write_edge_csv(std::ostream& out, const Graph& g);
Graph read_edge_csv(std::istream& in, Eigen::Index n, const std::string& context = "");

} // namespace netreg
