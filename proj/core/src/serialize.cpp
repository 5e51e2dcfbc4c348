#include "netreg/serialize.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace netreg {

namespace {

nlohmann::json dense_rows(const SymMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json solver_json(const SolveReport& report) {
    nlohmann::json j;
    j["variant"] = variant_name(report.variant_used);
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    j["residuals"] = report.residuals;
    j["wall_time_sec"] = report.wall_time_sec;
    if (!report.flags.empty()) j["flags"] = report.flags;
    if (!report.objective_trace.empty()) j["objective_trace"] = report.objective_trace;
    return j;
}

} // namespace

std::string to_json(const PredictionReport& report, int indent) {
    nlohmann::json j;
    j["x"] = std::vector<double>(report.x.data(), report.x.data() + report.x.size());
    j["weights"] = std::vector<double>(report.effective_weights.data(),
                                       report.effective_weights.data() +
                                           report.effective_weights.size());
    nlohmann::json edges = nlohmann::json::array();
    const Graph& g = report.graph;
    for (Eigen::Index i = 0; i < g.node_count(); ++i) {
        for (Eigen::Index jx = i + 1; jx < g.node_count(); ++jx) {
            if (g.weight(i, jx) > 0.0) {
                edges.push_back({{"i", i}, {"j", jx}, {"w", g.weight(i, jx)}});
            }
        }
    }
    j["edges"] = std::move(edges);
    j["laplacian"] = dense_rows(report.laplacian);
    j["raw_laplacian"] = dense_rows(report.raw_laplacian);
    if (report.solver_report) j["solver"] = solver_json(*report.solver_report);
    j["flags"] = report.flags;
    return j.dump(indent);
}

std::string to_json(const EvalResult& result, int indent) {
    nlohmann::json j;
    if (std::isnan(result.r_squared)) {
        j["r_squared"] = nullptr;
    } else {
        j["r_squared"] = result.r_squared;
    }
    j["frechet_variance"] = result.frechet_variance;
    j["mspe_mean"] = result.mspe_mean;
    j["mspe_per_rep"] = result.mspe_per_rep;
    j["flags"] = result.flags;
    return j.dump(indent);
}

void write_mspe_csv(std::ostream& out, const EvalResult& result) {
    out << "rep,mspe\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t r = 0; r < result.mspe_per_rep.size(); ++r) {
        out << r << ',' << result.mspe_per_rep[r] << '\n';
    }
}

} // namespace netreg
