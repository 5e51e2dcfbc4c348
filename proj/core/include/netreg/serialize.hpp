#pragma once

#include <iosfwd>
#include <string>

#include "netreg/evalstats.hpp"
#include "netreg/regress.hpp"

namespace netreg {

/// PredictionReport as JSON: {x, weights, edges: [{i,j,w}], laplacian (dense
/// rows), raw_laplacian, solver: {variant, iterations, converged, residuals},
/// flags}.
std::string to_json(const PredictionReport& report, int indent = 2);

/// EvalResult as JSON: {r_squared, frechet_variance, mspe_mean, mspe_per_rep,
/// flags}.
std::string to_json(const EvalResult& result, int indent = 2);

/// One CSV row per rep: "rep,mspe".
void write_mspe_csv(std::ostream& out, const EvalResult& result);

} // namespace netreg
