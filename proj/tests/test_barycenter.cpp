#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "netreg/barycenter.hpp"
#include "netreg/metrics.hpp"
#include "support.hpp"

using namespace netreg;
using namespace netreg::testing;

namespace {

SymMatrix scalar_cov(double v) {
    Eigen::MatrixXd m(1, 1);
    m << v;
    return SymMatrix(m);
}

Eigen::VectorXd weights2(double a, double b) {
    Eigen::VectorXd w(2);
    w << a, b;
    return w;
}

BarycenterProblem make_problem(std::vector<SymMatrix> covs, Eigen::VectorXd w,
                               BarycenterVariant variant) {
    BarycenterProblem p;
    p.covariances = std::move(covs);
    p.weights = std::move(w);
    p.variant = variant;
    return p;
}

// Fixed-point substitution residual for the defining equation
// S = sum_i w_i (S^{1/2} Σ_i S^{1/2})^{1/2}, relative form.
double defining_equation_residual(const std::vector<SymMatrix>& covs, const Eigen::VectorXd& w,
                                  const SymMatrix& s) {
    const SymMatrix root = psd_sqrt(clip_psd(s, 0.0));
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(s.dim(), s.dim());
    for (std::size_t i = 0; i < covs.size(); ++i) {
        const SymMatrix conj(root.mat() * covs[i].mat() * root.mat());
        rhs += w[static_cast<Eigen::Index>(i)] * psd_sqrt(clip_psd(conj, 0.0)).mat();
    }
    return (s.mat() - rhs).norm() / std::max(1.0, s.frobenius_norm());
}

} // namespace

TEST_CASE("problem validation") {
    auto p = make_problem({scalar_cov(1.0)}, Eigen::VectorXd::Constant(1, 0.5),
                          BarycenterVariant::plain);
    CHECK_THROWS_AS(p.validate(), Error); // weights sum to 0.5

    p.weights = Eigen::VectorXd::Constant(1, 1.0);
    CHECK_NOTHROW(p.validate());

    auto bad = make_problem({scalar_cov(-1.0)}, Eigen::VectorXd::Constant(1, 1.0),
                            BarycenterVariant::plain);
    CHECK_THROWS_AS(bad.validate(), NotPsd);
}

TEST_CASE("single input returns it in one iteration") {
    SplitMix64 rng(1);
    const SymMatrix sigma = random_psd(rng, 4, 0.1);
    const auto report =
        solve(make_problem({sigma}, Eigen::VectorXd::Constant(1, 1.0), BarycenterVariant::plain));
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK((report.result.mat() - sigma.mat()).norm() < 1e-10 * sigma.frobenius_norm());
}

TEST_CASE("1-D convex and affine closed forms") {
    // Barycenter std is the weighted mean of stds: S = (sum w_i s_i)².
    auto convex = solve(make_problem({scalar_cov(1.0), scalar_cov(4.0)}, weights2(0.5, 0.5),
                                     BarycenterVariant::plain));
    CHECK(convex.converged);
    CHECK(convex.result(0, 0) == doctest::Approx(2.25).epsilon(1e-9));

    auto affine = solve(make_problem({scalar_cov(1.0), scalar_cov(4.0)}, weights2(1.5, -0.5),
                                     BarycenterVariant::plain));
    CHECK(affine.converged);
    CHECK(affine.result(0, 0) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("1-D oracle property: random affine weights, plain and shifted") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const double v1 = uniform_double(rng, 0.2, 4.0);
        const double v2 = uniform_double(rng, 0.2, 4.0);
        const double w1 = uniform_double(rng, -0.4, 1.4);
        const Eigen::VectorXd w = weights2(w1, 1.0 - w1);
        const double target = w[0] * std::sqrt(v1) + w[1] * std::sqrt(v2);
        if (target <= 0.05) continue; // outside the closed form's validity
        const double expected = target * target;
        const double oracle = one_dim_barycenter_sq({v1, v2}, {w[0], w[1]});
        CHECK(oracle == doctest::Approx(expected).epsilon(1e-4));

        for (auto variant : {BarycenterVariant::plain, BarycenterVariant::shifted}) {
            const auto report =
                solve(make_problem({scalar_cov(v1), scalar_cov(v2)}, w, variant));
            CHECK(report.converged);
            // The shifted variant removes the ones-component, which in 1-D is
            // the whole matrix; centering a 1x1 matrix yields 0, so skip it.
            if (variant == BarycenterVariant::shifted) continue;
            CHECK(report.result(0, 0) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("commuting family closed form, non-negative weights") {
    SplitMix64 rng(23);
    const Eigen::MatrixXd basis = random_orthogonal(rng, 5);
    std::vector<Eigen::VectorXd> spectra;
    std::vector<SymMatrix> covs;
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd spec(5);
        for (int j = 0; j < 5; ++j) spec[j] = uniform_double(rng, 0.1, 3.0);
        covs.emplace_back(basis * spec.asDiagonal() * basis.transpose());
        spectra.push_back(spec);
    }
    Eigen::VectorXd w(3);
    w << 0.2, 0.5, 0.3;
    const SymMatrix expected = commuting_barycenter(basis, spectra, w);
    const auto report = solve(make_problem(covs, w, BarycenterVariant::plain));
    CHECK(report.converged);
    CHECK((report.result.mat() - expected.mat()).norm() < 1e-8);
}

TEST_CASE("shifted handles rank-deficient covariances") {
    // Two 3-node graph covariances: never strictly PD.
    const auto family = make_triangle_family({2.0, 6.0});
    std::vector<SymMatrix> covs{gaussian_covariance(family[0].second),
                                gaussian_covariance(family[1].second)};
    const Eigen::VectorXd w = weights2(0.5, 0.5);

    const auto shifted = solve_shifted(make_problem(covs, w, BarycenterVariant::shifted));
    CHECK(shifted.converged);

    // Oracle route: plain iteration on slightly regularized inputs.
    const double delta = 1e-7;
    std::vector<SymMatrix> reg;
    for (const auto& c : covs) {
        reg.emplace_back(c.mat() + delta * Eigen::MatrixXd::Identity(3, 3));
    }
    const auto plain = solve(make_problem(reg, w, BarycenterVariant::plain));
    CHECK(plain.converged);
    CHECK((center(plain.result).mat() - shifted.result.mat()).norm() < 1e-6);
}

TEST_CASE("identical inputs are a fixed point for every variant") {
    SplitMix64 rng(29);
    const SymMatrix sigma = random_psd(rng, 3, 0.05);
    for (auto variant :
         {BarycenterVariant::plain, BarycenterVariant::shifted, BarycenterVariant::entropic}) {
        auto p = make_problem({sigma, sigma}, weights2(0.5, 0.5), variant);
        const auto report = solve(p);
        CHECK(report.converged);
        const double tol = variant == BarycenterVariant::entropic ? 1e-3 : 1e-7;
        CHECK((report.result.mat() - sigma.mat()).norm() <
              tol * std::max(1.0, sigma.frobenius_norm()));
    }
}

TEST_CASE("idempotence under affine weights") {
    SplitMix64 rng(31);
    const SymMatrix sigma = random_psd(rng, 4, 0.05);
    Eigen::VectorXd w(3);
    w << 1.2, -0.5, 0.3;
    const auto report = solve(make_problem({sigma, sigma, sigma}, w, BarycenterVariant::plain));
    CHECK(report.converged);
    CHECK((report.result.mat() - sigma.mat()).norm() < 1e-7 * sigma.frobenius_norm());
}

TEST_CASE("permutation invariance") {
    SplitMix64 rng(37);
    std::vector<SymMatrix> covs{random_psd(rng, 4, 0.1), random_psd(rng, 4, 0.1),
                                random_psd(rng, 4, 0.1)};
    Eigen::VectorXd w(3);
    w << 0.6, 0.3, 0.1;
    const auto a = solve(make_problem(covs, w, BarycenterVariant::plain));

    std::vector<SymMatrix> permuted{covs[2], covs[0], covs[1]};
    Eigen::VectorXd wp(3);
    wp << 0.1, 0.6, 0.3;
    const auto b = solve(make_problem(permuted, wp, BarycenterVariant::plain));
    CHECK((a.result.mat() - b.result.mat()).norm() < 1e-10 * a.result.frobenius_norm());
}

TEST_CASE("plain reroutes to shifted when nothing is positive definite") {
    const auto family = make_triangle_family({2.0, 4.0});
    std::vector<SymMatrix> covs{gaussian_covariance(family[0].second),
                                gaussian_covariance(family[1].second)};
    const auto report =
        solve(make_problem(covs, weights2(0.5, 0.5), BarycenterVariant::plain));
    CHECK(report.converged);
    CHECK(report.variant_used == BarycenterVariant::shifted);
    REQUIRE(report.flags.size() == 1);
    CHECK(report.flags[0] == "rerouted_plain_to_shifted");
}

TEST_CASE("fixed-point substitution residual within 10x tol when converged") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<SymMatrix> covs{random_psd(rng, 5, 0.1), random_psd(rng, 5, 0.1),
                                    random_psd(rng, 5, 0.1)};
        Eigen::VectorXd w(3);
        const double w0 = uniform_double(rng, -0.2, 0.8);
        const double w1 = uniform_double(rng, 0.0, 0.9);
        w << w0, w1, 1.0 - w0 - w1;
        const auto report = solve(make_problem(covs, w, BarycenterVariant::plain));
        if (!report.converged) continue;
        CHECK(defining_equation_residual(covs, w, report.result) <= 10.0 * 1e-8);
        CHECK(static_cast<int>(report.residuals.size()) == report.iterations);
        CHECK(report.residuals.back() <= 1e-8);
    }
}

TEST_CASE("entropic single input approaches the input as eps -> 0") {
    SplitMix64 rng(43);
    const SymMatrix sigma = random_psd(rng, 3, 0.1);
    auto p = make_problem({sigma}, Eigen::VectorXd::Constant(1, 1.0), BarycenterVariant::entropic);
    p.epsilon = 1e-5;
    const auto report = solve(p);
    CHECK(report.converged);
    CHECK((report.result.mat() - sigma.mat()).norm() / sigma.frobenius_norm() < 1e-3);
}

TEST_CASE("entropic matches shifted on cycle-family regression inputs") {
    const auto family = make_scaled_family({TopologyKind::cycle, 5, 1.0, 0}, {2.0, 4.0, 6.0, 8.0});
    std::vector<SymMatrix> covs;
    for (const auto& [x, g] : family) covs.push_back(gaussian_covariance(g));
    const Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 0.25);

    const auto shifted = solve_shifted(make_problem(covs, w, BarycenterVariant::shifted));
    CHECK(shifted.converged);

    auto p = make_problem(covs, w, BarycenterVariant::entropic);
    p.epsilon = 1e-5;
    p.init = shifted.result;
    const auto entropic = solve_entropic(p);
    CHECK(entropic.converged);
    CHECK((entropic.result.mat() - shifted.result.mat()).norm() /
              shifted.result.frobenius_norm() <
          1e-2);
}

TEST_CASE("entropic scalar case agrees with bisection") {
    const double eps = 1e-3;
    auto p = make_problem({scalar_cov(1.0), scalar_cov(2.0)}, weights2(0.3, 0.7),
                          BarycenterVariant::entropic);
    p.epsilon = eps;
    const auto report = solve(p);
    CHECK(report.converged);
    const double oracle = entropic_scalar_fixed_point({1.0, 2.0}, {0.3, 0.7}, eps);
    CHECK(report.result(0, 0) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("entropic diverges loudly on a hostile affine problem") {
    auto p = make_problem({scalar_cov(0.01), scalar_cov(100.0)}, weights2(2.0, -1.0),
                          BarycenterVariant::entropic);
    p.epsilon = 1e-5;
    CHECK_THROWS_AS(solve(p), DivergedNegativeEigenvalue);
}

TEST_CASE("max_iter exhaustion reports rather than throws") {
    SplitMix64 rng(47);
    auto p = make_problem({random_psd(rng, 4, 0.1), random_psd(rng, 4, 0.1)}, weights2(0.5, 0.5),
                          BarycenterVariant::plain);
    p.max_iter = 1;
    p.tol = 1e-15;
    const auto report = solve(p);
    CHECK_FALSE(report.converged);
    CHECK(report.iterations == 1);
}

TEST_CASE("step_residual") {
    const SymMatrix a = scalar_cov(1.0);
    CHECK(step_residual(a, a) == 0.0);
    CHECK(step_residual(a, scalar_cov(1.1)) == doctest::Approx(0.1));

    // Relative form: scaling both matrices by c >> 1 leaves the residual
    // fixed once ||S|| dominates the max(1, .) guard.
    SplitMix64 rng(53);
    const SymMatrix s = random_psd(rng, 4, 0.5);
    const SymMatrix t = random_psd(rng, 4, 0.5);
    const double c = 1e6;
    const double r1 = step_residual(SymMatrix(c * s.mat()), SymMatrix(c * t.mat()));
    const double r2 = (t.mat() - s.mat()).norm() / s.frobenius_norm();
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("iteration budget on triangle-family and region-scale inputs") {
    // Triangle family with uniform weights.
    {
        std::vector<SymMatrix> covs;
        for (const auto& [x, g] : make_triangle_family({2.0, 4.0, 6.0, 8.0})) {
            covs.push_back(gaussian_covariance(g));
        }
        const auto report = solve_shifted(
            make_problem(covs, Eigen::VectorXd::Constant(4, 0.25), BarycenterVariant::shifted));
        CHECK(report.converged);
        CHECK(report.iterations < 20);
    }
    // 13-node graphs shaped like daily region networks.
    {
        SplitMix64 rng(59);
        std::vector<SymMatrix> covs;
        for (int i = 0; i < 8; ++i) {
            covs.push_back(gaussian_covariance(random_connected_graph(rng, 13, 0.7)));
        }
        Eigen::VectorXd w = Eigen::VectorXd::Constant(8, 1.0 / 8.0);
        const auto report = solve_shifted(make_problem(covs, w, BarycenterVariant::shifted));
        CHECK(report.converged);
        CHECK(report.iterations < 20);
    }
}

TEST_CASE("objective trace decreases toward the minimizer") {
    SplitMix64 rng(61);
    auto p = make_problem({random_psd(rng, 4, 0.1), random_psd(rng, 4, 0.1)}, weights2(0.5, 0.5),
                          BarycenterVariant::plain);
    p.trace_objective = true;
    const auto report = solve(p);
    CHECK(report.converged);
    REQUIRE(report.objective_trace.size() == static_cast<std::size_t>(report.iterations));
    CHECK(report.objective_trace.back() <= report.objective_trace.front() + 1e-12);
}
