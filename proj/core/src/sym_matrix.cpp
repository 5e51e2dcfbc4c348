#include "netreg/sym_matrix.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace netreg {

SymMatrix::SymMatrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidMatrix("SymMatrix: input must be square with dim >= 1, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw InvalidMatrix("SymMatrix: input contains non-finite entries");
    }
    mat_ = 0.5 * (m + m.transpose()).eval();
}

SymMatrix SymMatrix::identity(Eigen::Index dim) {
    return SymMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymMatrix SymMatrix::zero(Eigen::Index dim) {
    return SymMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

EigenPair eigh(const SymMatrix& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.mat());
    if (solver.info() != Eigen::Success) {
        throw InvalidMatrix("eigh: eigendecomposition failed");
    }
    return EigenPair{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Shared scaffold: apply f to the eigenvalues and reconstruct.
template <typename Fn>
SymMatrix apply_spectral(const EigenPair& ep, Fn&& f) {
    Eigen::VectorXd w(ep.values.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = f(ep.values[i]);
    return SymMatrix(ep.vectors * w.asDiagonal() * ep.vectors.transpose());
}

double resolve_rank_tol(double rank_tol, Eigen::Index dim) {
    return rank_tol < 0 ? default_rank_tol(dim) : rank_tol;
}

} // namespace

SymMatrix matrix_power(const SymMatrix& s, double alpha, double rank_tol) {
    if (!(alpha > 0)) {
        throw Error("matrix_power: alpha must be positive, got " + std::to_string(alpha));
    }
    const EigenPair ep = eigh(s);
    const double max_eig = ep.values.size() ? std::max(ep.values.maxCoeff(), 0.0) : 0.0;
    const double tol = resolve_rank_tol(rank_tol, s.dim()) * std::max(max_eig, 1.0);
    if (ep.values.minCoeff() < -tol) {
        throw NotPsd("matrix_power: eigenvalue " + std::to_string(ep.values.minCoeff()) +
                     " below -" + std::to_string(tol));
    }
    return apply_spectral(ep, [alpha](double v) { return v <= 0.0 ? 0.0 : std::pow(v, alpha); });
}

SymMatrix psd_sqrt(const SymMatrix& s, double rank_tol) {
    return matrix_power(s, 0.5, rank_tol);
}

SymMatrix pinv_psd(const SymMatrix& s, double rank_tol) {
    const EigenPair ep = eigh(s);
    const double max_eig = std::max(ep.values.maxCoeff(), 0.0);
    const double rel = resolve_rank_tol(rank_tol, s.dim());
    const double tol = rel * std::max(max_eig, 1.0);
    if (ep.values.minCoeff() < -tol) {
        throw NotPsd("pinv_psd: eigenvalue " + std::to_string(ep.values.minCoeff()) +
                     " below -" + std::to_string(tol));
    }
    const double cut = rel * max_eig;
    return apply_spectral(ep, [cut](double v) { return v <= cut ? 0.0 : 1.0 / v; });
}

SymMatrix center(const SymMatrix& s) {
    const Eigen::MatrixXd& m = s.mat();
    const Eigen::VectorXd row_means = m.rowwise().mean();
    const double grand_mean = m.mean();
    Eigen::MatrixXd out = m;
    out.colwise() -= row_means;
    out.rowwise() -= row_means.transpose();
    out.array() += grand_mean;
    return SymMatrix(std::move(out));
}

SymMatrix clip_psd(const SymMatrix& s, double floor) {
    const EigenPair ep = eigh(s);
    if (ep.values.minCoeff() >= floor) return s;
    return apply_spectral(ep, [floor](double v) { return std::max(v, floor); });
}

void write_matrix_text(std::ostream& out, const SymMatrix& s) {
    out << s.dim() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        for (Eigen::Index j = 0; j < s.dim(); ++j) {
            if (j) out << ' ';
            out << s(i, j);
        }
        out << '\n';
    }
}

SymMatrix read_matrix_text(std::istream& in) {
    Eigen::Index dim = 0;
    if (!(in >> dim) || dim < 1) {
        throw LoadError("matrix text: expected a positive dimension on the first line");
    }
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (!(in >> m(i, j))) {
                throw LoadError("matrix text: truncated at row " + std::to_string(i));
            }
        }
    }
    return SymMatrix(std::move(m));
}

} // namespace netreg
