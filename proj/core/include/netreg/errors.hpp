#pragma once

#include <stdexcept>
#include <string>

namespace netreg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix input contains non-finite entries or is not square.
class InvalidMatrix : public Error {
public:
    using Error::Error;
};

/// Matrix has an eigenvalue below the allowed negative tolerance.
class NotPsd : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Weight matrix violates the graph invariants (negative weight, nonzero
/// diagonal, asymmetry).
class NotAGraph : public Error {
public:
    using Error::Error;
};

class UnsupportedTopology : public Error {
public:
    using Error::Error;
};

/// A barycenter iterate developed a genuinely negative eigenvalue
/// (below the noise-repair threshold); happens only with affine
/// (negative) weights, whose convergence is not guaranteed.
class DivergedNegativeEigenvalue : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Kernel-weighted moment matrix is degenerate at the query point.
class DegenerateKernelSupport : public Error {
public:
    using Error::Error;
};

/// Fréchet variance is (numerically) zero, so R² is undefined.
class UndefinedRSquared : public Error {
public:
    using Error::Error;
};

/// File parsing or dataset-directory validation failure. The message
/// carries file and line context.
class LoadError : public Error {
public:
    using Error::Error;
};

class DuplicateEdge : public LoadError {
public:
    using LoadError::LoadError;
};

/// Covariate join failure; message lists the offending dates.
class JoinError : public Error {
public:
    using Error::Error;
};

} // namespace netreg
