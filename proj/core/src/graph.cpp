#include "netreg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "netreg/rng.hpp"

namespace netreg {

Graph::Graph(Eigen::MatrixXd weights) {
    if (weights.rows() != weights.cols() || weights.rows() < 1) {
        throw NotAGraph("Graph: weight matrix must be square with n >= 1");
    }
    if (!weights.allFinite()) {
        throw NotAGraph("Graph: weight matrix contains non-finite entries");
    }
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        if (weights(i, i) != 0.0) {
            throw NotAGraph("Graph: diagonal must be exactly zero (node " + std::to_string(i) + ")");
        }
        for (Eigen::Index j = i + 1; j < weights.cols(); ++j) {
            if (std::abs(weights(i, j) - weights(j, i)) > 1e-12) {
                throw NotAGraph("Graph: weights not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
            }
            if (weights(i, j) < 0.0) {
                throw NotAGraph("Graph: negative weight at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
            }
        }
    }
    weights_ = 0.5 * (weights + weights.transpose()).eval();
    weights_.diagonal().setZero();
}

Graph Graph::empty(Eigen::Index n) {
    return Graph(Eigen::MatrixXd::Zero(n, n));
}

std::size_t Graph::edge_count() const {
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < node_count(); ++i)
        for (Eigen::Index j = i + 1; j < node_count(); ++j)
            if (weights_(i, j) > 0.0) ++count;
    return count;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

bool Graph::is_connected() const {
    const int n = static_cast<int>(node_count());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (weights_(i, j) > 0.0) uf.unite(i, j);
    const int root = uf.find(0);
    for (int i = 1; i < n; ++i)
        if (uf.find(i) != root) return false;
    return true;
}

SymMatrix laplacian(const Graph& g) {
    Eigen::MatrixXd l = -g.weights();
    l.diagonal() = g.weights().rowwise().sum();
    return SymMatrix(std::move(l));
}

Graph weights_from_laplacian(const SymMatrix& l, bool clip_negative) {
    const Eigen::Index n = l.dim();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double wij = -0.5 * (l(i, j) + l(j, i));
            if (wij < -1e-9) {
                if (!clip_negative) {
                    throw NotAGraph("weights_from_laplacian: entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") implies negative weight " +
                                    std::to_string(wij));
                }
                continue;
            }
            const double v = std::max(wij, 0.0);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return Graph(std::move(w));
}

SymMatrix gaussian_covariance(const Graph& g, double rank_tol) {
    return pinv_psd(laplacian(g), rank_tol);
}

const char* topology_name(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::path: return "path";
        case TopologyKind::cycle: return "cycle";
        case TopologyKind::star: return "star";
        case TopologyKind::wheel: return "wheel";
        case TopologyKind::complete: return "complete";
        case TopologyKind::dumbbell: return "dumbbell";
        case TopologyKind::lollipop: return "lollipop";
        case TopologyKind::pentagonal_prism: return "pentagonal_prism";
        case TopologyKind::two_star: return "two_star";
        case TopologyKind::k_regular: return "k_regular";
    }
    return "unknown";
}

namespace {

class EdgeBuilder {
public:
    EdgeBuilder(int n, double w) : w_(Eigen::MatrixXd::Zero(n, n)), weight_(w) {}
    void add(int i, int j) {
        w_(i, j) = weight_;
        w_(j, i) = weight_;
    }
    Graph build() { return Graph(std::move(w_)); }

private:
    Eigen::MatrixXd w_;
    double weight_;
};

void require(bool ok, const NamedTopology& t, const std::string& why) {
    if (!ok) {
        throw UnsupportedTopology(std::string(topology_name(t.kind)) + "(n=" + std::to_string(t.n) +
                                  "): " + why);
    }
}

} // namespace

Graph make_named(const NamedTopology& t) {
    require(t.n >= 1, t, "n must be positive");
    require(t.uniform_weight > 0, t, "uniform_weight must be positive");
    EdgeBuilder b(t.n, t.uniform_weight);
    switch (t.kind) {
        case TopologyKind::path:
            require(t.n >= 2, t, "needs n >= 2");
            for (int i = 0; i + 1 < t.n; ++i) b.add(i, i + 1);
            break;
        case TopologyKind::cycle:
            require(t.n >= 3, t, "needs n >= 3");
            for (int i = 0; i < t.n; ++i) b.add(i, (i + 1) % t.n);
            break;
        case TopologyKind::star:
            require(t.n >= 2, t, "needs n >= 2");
            for (int i = 1; i < t.n; ++i) b.add(0, i);
            break;
        case TopologyKind::wheel:
            require(t.n >= 4, t, "needs n >= 4");
            for (int i = 1; i < t.n; ++i) {
                b.add(0, i);
                b.add(i, i + 1 < t.n ? i + 1 : 1);
            }
            break;
        case TopologyKind::complete:
            require(t.n >= 2, t, "needs n >= 2");
            for (int i = 0; i < t.n; ++i)
                for (int j = i + 1; j < t.n; ++j) b.add(i, j);
            break;
        case TopologyKind::dumbbell: {
            // Two K4 blocks joined by a two-node path: 0-3 | 4,5 | 6-9.
            require(t.n == 10, t, "defined for n = 10");
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) b.add(i, j);
            for (int i = 6; i < 10; ++i)
                for (int j = i + 1; j < 10; ++j) b.add(i, j);
            b.add(3, 4);
            b.add(4, 5);
            b.add(5, 6);
            break;
        }
        case TopologyKind::lollipop: {
            // K5 on 0-4 plus a 5-node tail 5-9.
            require(t.n == 10, t, "defined for n = 10");
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) b.add(i, j);
            b.add(4, 5);
            for (int i = 5; i < 9; ++i) b.add(i, i + 1);
            break;
        }
        case TopologyKind::two_star: {
            // Two 5-node stars, centers 0 and 5 joined.
            require(t.n == 10, t, "defined for n = 10");
            for (int i = 1; i < 5; ++i) b.add(0, i);
            for (int i = 6; i < 10; ++i) b.add(5, i);
            b.add(0, 5);
            break;
        }
        case TopologyKind::pentagonal_prism: {
            // C5 x K2: outer cycle 0-4, inner cycle 5-9, spokes i..i+5.
            require(t.n == 10, t, "defined for n = 10");
            for (int i = 0; i < 5; ++i) {
                b.add(i, (i + 1) % 5);
                b.add(5 + i, 5 + (i + 1) % 5);
                b.add(i, 5 + i);
            }
            break;
        }
        case TopologyKind::k_regular: {
            require(t.k >= 1 && t.k < t.n, t, "needs 1 <= k < n");
            require(t.k * t.n % 2 == 0, t, "k*n must be even");
            require(t.k >= 2, t, "circulant construction needs k >= 2 for connectivity");
            // Circulant: offsets 1..k/2, plus the n/2 diameter when k is odd.
            for (int off = 1; off <= t.k / 2; ++off)
                for (int i = 0; i < t.n; ++i) b.add(i, (i + off) % t.n);
            if (t.k % 2 == 1)
                for (int i = 0; i < t.n / 2; ++i) b.add(i, i + t.n / 2);
            break;
        }
    }
    return b.build();
}

std::vector<std::pair<double, Graph>> make_scaled_family(
    const NamedTopology& base, const std::vector<double>& covariates,
    const std::function<double(double)>& edge_weight) {
    std::vector<std::pair<double, Graph>> out;
    out.reserve(covariates.size());
    for (double x : covariates) {
        if (!(x > 0)) throw Error("make_scaled_family: covariates must be positive");
        NamedTopology t = base;
        t.uniform_weight = edge_weight ? edge_weight(x) : 1.0 / x;
        out.emplace_back(x, make_named(t));
    }
    return out;
}

std::vector<std::pair<double, Graph>> make_triangle_family(const std::vector<double>& covariates) {
    std::vector<std::pair<double, Graph>> out;
    out.reserve(covariates.size());
    for (double x : covariates) {
        if (!(x > 0)) throw Error("make_triangle_family: covariates must be positive");
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 0) = 1.0 / x;
        w(0, 2) = w(2, 0) = 1.0 / x;
        w(1, 2) = w(2, 1) = 2.0 / x;
        out.emplace_back(x, Graph(std::move(w)));
    }
    return out;
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("erdos_renyi: p must be in [0, 1], got " + std::to_string(p));
    }
    if (n < 1) throw Error("erdos_renyi: n must be positive");
    SplitMix64 rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (uniform_double(rng) < p) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return Graph(std::move(w));
}

Eigen::VectorXd spectral_covariate(const Graph& g, const std::vector<int>& ranks) {
    const EigenPair ep = eigh(laplacian(g));
    Eigen::VectorXd out(static_cast<Eigen::Index>(ranks.size()));
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] < 1 || ranks[i] > g.node_count()) {
            throw Error("spectral_covariate: rank " + std::to_string(ranks[i]) +
                        " out of range for n = " + std::to_string(g.node_count()));
        }
        out[static_cast<Eigen::Index>(i)] = ep.values[ranks[i] - 1];
    }
    return out;
}

double fiedler_value(const Graph& g) {
    return spectral_covariate(g, {2})[0];
}

void write_edge_csv(std::ostream& out, const Graph& g) {
    out << "i,j,w\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < g.node_count(); ++i)
        for (Eigen::Index j = i + 1; j < g.node_count(); ++j)
            if (g.weight(i, j) > 0.0) out << i << ',' << j << ',' << g.weight(i, j) << '\n';
}

Graph read_edge_csv(std::istream& in, Eigen::Index n, const std::string& context) {
    const std::string where = context.empty() ? "edge csv" : context;
    std::string line;
    if (!std::getline(in, line) || (line != "i,j,w" && line != "i,j,w\r")) {
        throw LoadError(where + ":1: expected header \"i,j,w\"");
    }
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(n, n);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        long long i = -1, j = -1;
        double weight = 0.0;
        char c1 = 0, c2 = 0;
        if (!(row >> i >> c1 >> j >> c2 >> weight) || c1 != ',' || c2 != ',') {
            throw LoadError(where + ":" + std::to_string(lineno) + ": malformed edge row: " + line);
        }
        if (i < 0 || j < 0 || i >= n || j >= n || i >= j) {
            throw LoadError(where + ":" + std::to_string(lineno) +
                            ": edge indices must satisfy 0 <= i < j < n");
        }
        if (seen(i, j) != 0.0) {
            throw DuplicateEdge(where + ":" + std::to_string(lineno) + ": duplicate edge (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
        seen(i, j) = 1.0;
        w(i, j) = weight;
        w(j, i) = weight;
    }
    return Graph(std::move(w));
}

} // namespace netreg
