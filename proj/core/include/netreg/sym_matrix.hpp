#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "netreg/errors.hpp"

namespace netreg {

/// Dense real symmetric matrix. Symmetrized on construction so that
/// entries(i,j) == entries(j,i) holds exactly; non-finite input throws
/// InvalidMatrix.
class SymMatrix {
public:
    explicit SymMatrix(Eigen::MatrixXd m);

    static SymMatrix identity(Eigen::Index dim);
    static SymMatrix zero(Eigen::Index dim);

    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXd& mat() const { return mat_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

    double frobenius_norm() const { return mat_.norm(); }
    double trace() const { return mat_.trace(); }

private:
    Eigen::MatrixXd mat_;
};

/// Eigendecomposition S = U diag(values) Uᵀ with values ascending and U
/// orthogonal, columns aligned with values.
struct EigenPair {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Relative rank tolerance used by the PSD operations when none is given:
/// eigenvalues within rank_tol(dim) · max|eigenvalue| of zero are treated as
/// zero. Connected-graph Laplacians have exactly one zero eigenvalue to
/// suppress, and a relative threshold survives the 1/x edge-weight scaling
/// used by the experiment generators.
inline double default_rank_tol(Eigen::Index dim) {
    return 1e-10 * static_cast<double>(dim);
}

/// Deterministic symmetric eigendecomposition, eigenvalues ascending.
EigenPair eigh(const SymMatrix& s);

/// F_alpha: applies the power alpha > 0 to the eigenvalues. Eigenvalues that
/// are negative within the rank tolerance are clamped to 0 before powering;
/// below that, throws NotPsd. Pass rank_tol < 0 for the default.
SymMatrix matrix_power(const SymMatrix& s, double alpha, double rank_tol = -1.0);

/// matrix_power with alpha = 1/2.
SymMatrix psd_sqrt(const SymMatrix& s, double rank_tol = -1.0);

/// Moore-Penrose pseudo-inverse of a PSD matrix. Eigenvalues at or below
/// rank_tol · max eigenvalue are treated as exact zeros.
SymMatrix pinv_psd(const SymMatrix& s, double rank_tol = -1.0);

/// P S P with P = I - J/dim (J all ones): projects onto the subspace
/// orthogonal to the all-ones vector, so rows of the result sum to zero.
/// Laplacians are fixed points.
SymMatrix center(const SymMatrix& s);

/// Clamps all eigenvalues up to at least `floor`. Returns the input
/// unchanged (bit-exact) when it already satisfies the bound.
SymMatrix clip_psd(const SymMatrix& s, double floor);

/// Dense matrix text format used by CLI debug dumps: first line the
/// dimension, then dim whitespace-separated rows in decimal notation.
void write_matrix_text(std::ostream& out, const SymMatrix& s);
SymMatrix read_matrix_text(std::istream& in);

} // namespace netreg
