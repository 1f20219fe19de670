#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eigenbound/moments.hpp"
#include "eigenbound/presets.hpp"
#include "oracles.hpp"

using namespace eigenbound;

namespace {

RatVector point(std::vector<Rational> xs) {
    RatVector p(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<Eigen::Index>(i)] = xs[i];
    return p;
}

Simplex simplex(std::vector<std::vector<Rational>> pts) {
    Simplex S;
    for (auto& p : pts) S.vertices.push_back(point(p));
    return S;
}

}  // namespace

TEST_CASE("simplex monomial integrals: Dirichlet values") {
    const Simplex std2 = simplex({{0, 0}, {1, 0}, {0, 1}});
    CHECK(simplex_monomial_integral(std2, {0, 0}) == Rational(1, 2));
    CHECK(simplex_monomial_integral(std2, {1, 1}) == Rational(1, 24));

    const Simplex cp2 = simplex({{-1, -1}, {2, -1}, {-1, 2}});
    CHECK(simplex_monomial_integral(cp2, {2, 0}) == Rational(9, 4));
}

TEST_CASE("monomial moments of the presets") {
    const Polytope hexagon = polytope_preset("dp6");
    CHECK(monomial_moment(hexagon, {0, 0}) == Rational(3));
    CHECK(monomial_moment(hexagon, {2, 0}) == Rational(5, 6));

    const Polytope square = polytope_preset("cp1xcp1");
    CHECK(monomial_moment(square, {2, 0}) == Rational(4, 3));
}

TEST_CASE("integrate_polynomial examples") {
    const Polytope square = polytope_preset("cp1xcp1");
    MultiPoly f(2);
    f.add_term({2, 0}, 1);
    f.add_term({0, 2}, 1);
    CHECK(integrate_polynomial(square, f) == Rational(8, 3));

    CHECK(integrate_polynomial(polytope_preset("dp6"), MultiPoly::constant(2, 1)) == Rational(3));

    // (3x^2-1)^2/4 over the segment
    MultiPoly g(1);
    g.add_term({4}, Rational(9, 4));
    g.add_term({2}, Rational(-6, 4));
    g.add_term({0}, Rational(1, 4));
    CHECK(integrate_polynomial(polytope_preset("cp1"), g) == Rational(2, 5));
}

TEST_CASE("moment tensors: segment") {
    const MomentTensor M = moment_tensors(polytope_preset("cp1"));
    CHECK(M.vol == Rational(2));
    CHECK(M.m1[0] == 0);
    CHECK(M.gram(0, 0) == Rational(2, 3));
    CHECK(M.t3(0, 0, 0) == 0);
    CHECK(M.t4(0, 0, 0, 0) == Rational(2, 5));
}

TEST_CASE("moment tensors: square") {
    const MomentTensor M = moment_tensors(polytope_preset("cp1xcp1"));
    CHECK(M.vol == Rational(4));
    CHECK(M.gram(0, 0) == Rational(4, 3));
    CHECK(M.gram(1, 1) == Rational(4, 3));
    CHECK(M.gram(0, 1) == 0);
    CHECK(M.t4(0, 0, 1, 1) == Rational(4, 9));
}

TEST_CASE("moment tensors: cp2 triangle") {
    const MomentTensor M = moment_tensors(polytope_preset("cp2"));
    CHECK(M.vol == Rational(9, 2));
    CHECK(M.m1[0] == 0);
    CHECK(M.m1[1] == 0);
    CHECK(M.gram(0, 0) == Rational(9, 4));
    CHECK(M.gram(0, 1) == Rational(-9, 8));
}

TEST_CASE("triangulation volume equals the volume moment") {
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        Rational total = 0;
        for (const auto& S : triangulate(P)) total += S.volume();
        CHECK(total == monomial_moment(P, MultiIndex(P.dim(), 0)));
    }
}

TEST_CASE("integration is exactly linear") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> coeff(-6, 6);
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        const auto alphas = multiindices_up_to(P.dim(), 3);
        MultiPoly f(P.dim()), g(P.dim());
        for (const auto& a : alphas) {
            f.add_term(a, Rational(coeff(rng), 7));
            g.add_term(a, Rational(coeff(rng), 5));
        }
        CHECK(integrate_polynomial(P, f + g) ==
              integrate_polynomial(P, f) + integrate_polynomial(P, g));
    }
}

TEST_CASE("hexagon moments transport under its order-6 lattice symmetry") {
    const Polytope hexagon = polytope_preset("dp6");
    // sigma(x1,x2) = (-x2, x1+x2) permutes the six vertices cyclically
    RatMatrix R(2, 2);
    R(0, 0) = 0;
    R(0, 1) = -1;
    R(1, 0) = 1;
    R(1, 1) = 1;
    for (const auto& alpha : multiindices_up_to(2, 4)) {
        const MultiPoly mono = MultiPoly::monomial(alpha, Rational(1));
        const MultiPoly transformed = mono.substitute_affine(R, RatVector::Zero(2));
        CHECK(monomial_moment(hexagon, alpha) == integrate_polynomial(hexagon, transformed));
    }
}

TEST_CASE("odd moments vanish on centrally symmetric presets") {
    for (const std::string name : {"cp1xcp1", "dp6"}) {
        const MomentTensor M = moment_tensors(polytope_preset(name));
        for (int i = 0; i < M.dim; ++i) {
            CHECK(M.m1[i] == 0);
            for (int j = 0; j < M.dim; ++j)
                for (int k = 0; k < M.dim; ++k) CHECK(M.t3(i, j, k) == 0);
        }
    }
}

TEST_CASE("exact moments agree with Monte Carlo rejection sampling to 5 sigma") {
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        const auto alphas = multiindices_up_to(P.dim(), 4);
        const auto estimates = oracles::monte_carlo_moments(P, alphas, 1000000, 0xC0FFEE);
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            const double exact = to_double(monomial_moment(P, alphas[a]));
            const double diff = std::abs(exact - estimates[a].value);
            INFO("preset ", name, " alpha index ", a);
            CHECK(diff <= 5.0 * estimates[a].stderr_ + 1e-12);
        }
    }
}
