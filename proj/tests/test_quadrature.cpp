#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigenbound/moments.hpp"
#include "eigenbound/presets.hpp"
#include "eigenbound/quadrature.hpp"

using namespace eigenbound;

TEST_CASE("gauss-jacobi rules integrate weighted monomials exactly") {
    // int_0^1 t^m (1-t)^alpha dt = m! alpha! / (m+alpha+1)!
    for (int alpha = 0; alpha <= 2; ++alpha) {
        for (int k : {3, 4}) {
            Eigen::VectorXd nodes, weights;
            gauss_jacobi_01(k, alpha, nodes, weights);
            for (int m = 0; m <= 2 * k - 1; ++m) {
                double got = 0;
                for (int i = 0; i < k; ++i) got += weights[i] * std::pow(nodes[i], m);
                double exact = 1;
                for (int i = 1; i <= m; ++i) exact *= i;
                for (int i = 1; i <= alpha; ++i) exact *= i;
                double denom = 1;
                for (int i = 1; i <= m + alpha + 1; ++i) denom *= i;
                exact /= denom;
                INFO("alpha=", alpha, " k=", k, " m=", m);
                CHECK(got == doctest::Approx(exact).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("simplex rules are exact to their degree and have positive weights") {
    for (int dim = 1; dim <= 3; ++dim) {
        for (int k : {3, 4}) {
            const SimplexRule rule = simplex_rule(dim, k);
            CHECK(rule.weights.minCoeff() > 0);
            // compare against the Dirichlet formula on the standard simplex
            for (const auto& alpha : multiindices_up_to(dim, rule.degree)) {
                double got = 0;
                for (int node = 0; node < rule.points.rows(); ++node) {
                    double term = rule.weights[node];
                    for (int j = 0; j < dim; ++j)
                        term *= std::pow(rule.points(node, j), alpha[j]);
                    got += term;
                }
                Rational num = 1;
                for (int a : alpha)
                    for (int i = 2; i <= a; ++i) num *= i;
                Rational den = 1;
                for (int i = 2; i <= multiindex_degree(alpha) + dim; ++i) den *= i;
                const double exact = to_double(num / den);
                INFO("dim=", dim, " k=", k);
                CHECK(got == doctest::Approx(exact).epsilon(1e-12));
            }
        }
    }
}

namespace {

MatrixIntegrand scalar_integrand(const std::function<double(const Eigen::VectorXd&)>& f) {
    return [f](const Eigen::VectorXd& x, Eigen::MatrixXd& out) { out(0, 0) = f(x); };
}

}  // namespace

TEST_CASE("adaptive integrator reproduces exact polynomial moments") {
    for (const std::string name : {"cp2", "dp6", "threefold"}) {
        const Polytope P = polytope_preset(name);
        const auto tri = triangulate(P);
        QuadratureOptions opt;
        opt.tol = 1e-9;
        for (const auto& alpha : multiindices_up_to(P.dim(), 4)) {
            QuadratureReport rep;
            const auto integrand = scalar_integrand([&](const Eigen::VectorXd& x) {
                double g = 1;
                for (int j = 0; j < P.dim(); ++j) g *= std::pow(x[j], alpha[j]);
                return g;
            });
            const Eigen::MatrixXd got = integrate_adaptive_serial(tri, 1, integrand, opt, rep);
            const double exact = to_double(monomial_moment(P, alpha));
            CHECK(std::abs(got(0, 0) - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("adaptive integrator handles a boundary-flat non-polynomial integrand") {
    // product of facet distances: vanishing near the boundary like the
    // inverse metric Hessian does
    const Polytope P = polytope_preset("dp6");
    const auto tri = triangulate(P);
    const auto integrand = scalar_integrand([&](const Eigen::VectorXd& x) {
        double g = 1;
        for (const auto& f : P.facets()) g *= f.value_d(x);
        return std::sqrt(g);
    });
    QuadratureOptions opt;
    opt.tol = 1e-7;
    QuadratureReport rep_serial, rep_low;
    const double fine =
        integrate_adaptive_serial(tri, 1, integrand, opt, rep_serial)(0, 0);
    QuadratureOptions coarse;
    coarse.tol = 1e-4;
    const double rough = integrate_adaptive_serial(tri, 1, integrand, coarse, rep_low)(0, 0);
    CHECK(std::abs(fine - rough) < 1e-3);
    CHECK(rep_serial.evaluations > rep_low.evaluations);
}

TEST_CASE("parallel integration agrees with the serial reference") {
    const Polytope P = polytope_preset("dp6");
    const auto tri = triangulate(P);
    const auto integrand = scalar_integrand([&](const Eigen::VectorXd& x) {
        return 1.0 / (3.0 + x[0] + 0.5 * x[1] * x[1]);
    });
    QuadratureOptions serial_opt;
    serial_opt.tol = 1e-8;
    QuadratureOptions par_opt = serial_opt;
    par_opt.threads = 2;

    QuadratureReport r1, r2, r3;
    const double serial = integrate_adaptive_serial(tri, 1, integrand, serial_opt, r1)(0, 0);
    const double parallel = integrate_adaptive_parallel(tri, 1, integrand, par_opt, r2)(0, 0);
    CHECK(std::abs(serial - parallel) <= 1e-8 * std::abs(serial) + 1e-12);

    // thread count must not change the parallel result at all
    QuadratureOptions par_opt4 = serial_opt;
    par_opt4.threads = 4;
    const double parallel4 = integrate_adaptive_parallel(tri, 1, integrand, par_opt4, r3)(0, 0);
    CHECK(parallel == parallel4);
}

TEST_CASE("depth cap is reported") {
    const Polytope P = polytope_preset("cp1");
    const auto tri = triangulate(P);
    // a needle the rule pair cannot resolve at shallow depth
    const auto integrand = scalar_integrand(
        [](const Eigen::VectorXd& x) { return 1.0 / (1e-6 + x[0] * x[0]); });
    QuadratureOptions opt;
    opt.tol = 1e-12;
    opt.max_depth = 3;
    QuadratureReport rep;
    integrate_adaptive_serial(tri, 1, integrand, opt, rep);
    CHECK(rep.depth_cap_hits > 0);
    CHECK(!rep.warnings.empty());
    CHECK(rep.max_depth_reached == 3);
}
