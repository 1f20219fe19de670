#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eigenbound/errors.hpp"
#include "eigenbound/json_io.hpp"
#include "eigenbound/polytope.hpp"
#include "eigenbound/presets.hpp"

using namespace eigenbound;

namespace {

Facet facet(std::vector<int> v, const Rational& c) {
    Facet f;
    f.normal = Eigen::VectorXi(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) f.normal[static_cast<Eigen::Index>(i)] = v[i];
    f.constant = c;
    return f;
}

RatVector point(std::vector<Rational> xs) {
    RatVector p(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<Eigen::Index>(i)] = xs[i];
    return p;
}

}  // namespace

TEST_CASE("parse: segment document") {
    const Polytope P = parse_polytope(R"({"dimension":1,"facets":[{"v":[1],"c":1},{"v":[-1],"c":1}]})");
    REQUIRE(P.vertices().size() == 2);
    CHECK(P.vertices()[0][0] == Rational(-1));
    CHECK(P.vertices()[1][0] == Rational(1));
}

TEST_CASE("parse: hexagon document has six vertices") {
    const Polytope P = parse_polytope(R"({
        "name": "hexagon",
        "dimension": 2,
        "facets": [{"v":[1,0],"c":1},{"v":[0,1],"c":1},{"v":[-1,0],"c":1},
                   {"v":[0,-1],"c":1},{"v":[-1,-1],"c":1},{"v":[1,1],"c":1}]})");
    CHECK(P.vertices().size() == 6);
    // (1,0) and (0,1) are among them
    bool has10 = false, has01 = false;
    for (const auto& v : P.vertices()) {
        if (v[0] == 1 && v[1] == 0) has10 = true;
        if (v[0] == 0 && v[1] == 1) has01 = true;
    }
    CHECK(has10);
    CHECK(has01);
}

TEST_CASE("parse: inconsistent halfspaces rejected") {
    CHECK_THROWS_AS(
        parse_polytope(R"({"dimension":2,"facets":[{"v":[1,0],"c":1},{"v":[-1,0],"c":-2}]})"),
        ValidationError);
}

TEST_CASE("parse: malformed documents and non-primitive normals") {
    CHECK_THROWS_AS(parse_polytope("not json"), InputError);
    CHECK_THROWS_AS(parse_polytope(R"({"dimension":1})"), InputError);
    CHECK_THROWS_AS(
        parse_polytope(R"({"dimension":2,"facets":[{"v":[2,0],"c":1},{"v":[-1,0],"c":1},
                          {"v":[0,1],"c":1},{"v":[0,-1],"c":1}]})"),
        ValidationError);
    // rational constants as "p/q" strings parse exactly
    const Polytope P =
        parse_polytope(R"({"dimension":1,"facets":[{"v":[1],"c":"1/2"},{"v":[-1],"c":"1/2"}]})");
    CHECK(P.vertices()[1][0] == Rational(1, 2));
}

TEST_CASE("vertices: cp2 triangle") {
    const Polytope P = polytope_preset("cp2");
    REQUIRE(P.vertices().size() == 3);
    CHECK(P.vertices()[0] == point({-1, -1}));
    CHECK(P.vertices()[1] == point({-1, 2}));
    CHECK(P.vertices()[2] == point({2, -1}));
}

TEST_CASE("vertices: square corners") {
    const Polytope P = polytope_preset("cp1xcp1");
    REQUIRE(P.vertices().size() == 4);
    for (const auto& v : P.vertices()) {
        CHECK((v[0] == 1 || v[0] == -1));
        CHECK((v[1] == 1 || v[1] == -1));
    }
}

TEST_CASE("vertices: threefold has 8, cross-checked by float enumeration") {
    const Polytope P = polytope_preset("threefold");
    CHECK(P.vertices().size() == 8);

    // independent oracle: brute force over all C(6,3) facet triples in floats
    const auto& facets = P.facets();
    std::vector<Eigen::Vector3d> found;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                Eigen::Matrix3d A;
                Eigen::Vector3d rhs;
                A.row(0) = facets[a].normal.cast<double>().transpose();
                A.row(1) = facets[b].normal.cast<double>().transpose();
                A.row(2) = facets[c].normal.cast<double>().transpose();
                rhs << -to_double(facets[a].constant), -to_double(facets[b].constant),
                    -to_double(facets[c].constant);
                if (std::abs(A.determinant()) < 1e-9) continue;
                const Eigen::Vector3d x = A.fullPivLu().solve(rhs);
                bool feasible = true;
                for (const auto& f : facets)
                    if (f.normal.cast<double>().dot(x) + to_double(f.constant) < -1e-9)
                        feasible = false;
                if (!feasible) continue;
                bool duplicate = false;
                for (const auto& y : found)
                    if ((x - y).norm() < 1e-9) duplicate = true;
                if (!duplicate) found.push_back(x);
            }
    CHECK(found.size() == 8);
}

TEST_CASE("vertices satisfy all inequalities with at least dim of them tight") {
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        for (const auto& v : P.vertices()) {
            int tight = 0;
            for (const auto& f : P.facets()) {
                const Rational val = f.value(v);
                CHECK(val >= 0);
                if (val == 0) ++tight;
            }
            CHECK(tight >= P.dim());
        }
    }
}

TEST_CASE("triangulate: segment stays one simplex") {
    const auto tri = triangulate(polytope_preset("cp1"));
    REQUIRE(tri.size() == 1);
    CHECK(tri[0].volume() == Rational(2));
}

TEST_CASE("triangulate: square fans into 4 triangles of total area 4") {
    const auto tri = triangulate(polytope_preset("cp1xcp1"));
    CHECK(tri.size() == 4);
    Rational total = 0;
    for (const auto& S : tri) total += S.volume();
    CHECK(total == Rational(4));
}

TEST_CASE("triangulate: hexagon fans into 6 triangles of total area 3") {
    const auto tri = triangulate(polytope_preset("dp6"));
    CHECK(tri.size() == 6);
    Rational total = 0;
    for (const auto& S : tri) total += S.volume();
    CHECK(total == Rational(3));  // shoelace area of the six vertices
}

TEST_CASE("triangulate: threefold decomposes exactly") {
    const auto tri = triangulate(polytope_preset("threefold"));
    Rational total = 0;
    for (const auto& S : tri) total += S.volume();
    CHECK(total == Rational(22, 3));
}

TEST_CASE("barycenter examples") {
    CHECK(barycenter(polytope_preset("cp2")) == point({0, 0}));
    CHECK(barycenter(polytope_preset("dp6")) == point({0, 0}));
    const Polytope T(2, {facet({1, 0}, 0), facet({0, 1}, 0), facet({-1, -1}, 1)}, "corner");
    CHECK(barycenter(T) == point({Rational(1, 3), Rational(1, 3)}));
}

TEST_CASE("barycenter is translation-equivariant") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> num(-5, 5);
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        RatVector t(P.dim());
        for (int j = 0; j < P.dim(); ++j) t[j] = Rational(num(rng), 3);
        const Polytope Q = translate(P, t);
        const RatVector expected = barycenter(P) + t;
        const RatVector got = barycenter(Q);
        for (int j = 0; j < P.dim(); ++j) CHECK(got[j] == expected[j]);
    }
}

TEST_CASE("fano check: hexagon passes") {
    const FanoReport rep = check_fano_normalized(polytope_preset("dp6"));
    CHECK(rep.constants_equal_one);
    CHECK(rep.barycenter_zero);
    CHECK(rep.delzant);
    CHECK(rep.pass);
}

TEST_CASE("fano check: scaled square warns, shifted segment fails") {
    const Polytope scaled(2, {facet({1, 0}, 2), facet({0, 1}, 2), facet({-1, 0}, 2),
                              facet({0, -1}, 2)});
    const FanoReport r1 = check_fano_normalized(scaled);
    CHECK(r1.constants_all_equal);
    CHECK_FALSE(r1.constants_equal_one);
    CHECK(r1.barycenter_zero);
    CHECK_FALSE(r1.pass);

    const Polytope shifted(1, {facet({1}, 0), facet({-1}, 2)});  // [0,2]
    const FanoReport r2 = check_fano_normalized(shifted);
    CHECK_FALSE(r2.barycenter_zero);
    CHECK_FALSE(r2.pass);
}

TEST_CASE("degenerate vertex reported as warning, not error") {
    // square pyramid: apex (0,0,1) has four active facets
    const Polytope pyramid(3,
                           {facet({0, 0, 1}, 0), facet({-1, 0, -1}, 1), facet({1, 0, -1}, 1),
                            facet({0, -1, -1}, 1), facet({0, 1, -1}, 1)},
                           "pyramid");
    CHECK(pyramid.vertices().size() == 5);
    CHECK_FALSE(pyramid.warnings().empty());
    const FanoReport rep = check_fano_normalized(pyramid);
    CHECK_FALSE(rep.delzant);
}

TEST_CASE("redundant facet rejected") {
    CHECK_THROWS_AS(Polytope(2, {facet({1, 0}, 1), facet({0, 1}, 1), facet({-1, 0}, 1),
                                 facet({0, -1}, 1), facet({-1, -1}, 2)}),
                    ValidationError);
}

TEST_CASE("unbounded systems rejected") {
    CHECK_THROWS_AS(Polytope(2, {facet({1, 0}, 1), facet({0, 1}, 1)}), ValidationError);
    CHECK_THROWS_AS(Polytope(1, {facet({1}, 1)}), ValidationError);
}

TEST_CASE("polytope JSON round-trips exactly") {
    for (const auto& name : polytope_preset_names()) {
        const Polytope P = polytope_preset(name);
        const Polytope Q = parse_polytope(polytope_to_json(P).dump());
        REQUIRE(Q.dim() == P.dim());
        REQUIRE(Q.facets().size() == P.facets().size());
        for (std::size_t k = 0; k < P.facets().size(); ++k) {
            CHECK(Q.facets()[k].normal == P.facets()[k].normal);
            CHECK(Q.facets()[k].constant == P.facets()[k].constant);
        }
        CHECK(Q.name() == P.name());
    }
}
