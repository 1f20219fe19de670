#include "eigenbound/presets.hpp"

#include "eigenbound/errors.hpp"

namespace eigenbound {

namespace {

Facet make_facet(std::initializer_list<int> v, int c) {
    Facet f;
    f.normal = Eigen::VectorXi(static_cast<Eigen::Index>(v.size()));
    int i = 0;
    for (int x : v) f.normal[i++] = x;
    f.constant = c;
    return f;
}

}  // namespace

const std::vector<std::string>& polytope_preset_names() {
    static const std::vector<std::string> names = {"cp1", "cp2", "cp1xcp1", "dp6", "threefold"};
    return names;
}

bool has_polytope_preset(const std::string& name) {
    for (const auto& n : polytope_preset_names())
        if (n == name) return true;
    return false;
}

Polytope polytope_preset(const std::string& name) {
    if (name == "cp1")
        return Polytope(1, {make_facet({1}, 1), make_facet({-1}, 1)}, "cp1");
    if (name == "cp2")
        return Polytope(2, {make_facet({1, 0}, 1), make_facet({0, 1}, 1), make_facet({-1, -1}, 1)},
                        "cp2");
    if (name == "cp1xcp1")
        return Polytope(2,
                        {make_facet({1, 0}, 1), make_facet({0, 1}, 1), make_facet({-1, 0}, 1),
                         make_facet({0, -1}, 1)},
                        "cp1xcp1");
    if (name == "dp6")
        return Polytope(2,
                        {make_facet({1, 0}, 1), make_facet({0, 1}, 1), make_facet({-1, 0}, 1),
                         make_facet({0, -1}, 1), make_facet({-1, -1}, 1), make_facet({1, 1}, 1)},
                        "dp6");
    if (name == "threefold")
        return Polytope(3,
                        {make_facet({1, 0, 0}, 1), make_facet({0, 1, 0}, 1),
                         make_facet({0, 0, 1}, 1), make_facet({-1, 0, 0}, 1),
                         make_facet({-1, -1, 0}, 1), make_facet({1, 0, -1}, 1)},
                        "threefold");
    throw InputError("unknown polytope preset '" + name + "'");
}

MomentTensor disc_moments() {
    MomentTensor M;
    M.dim = 2;
    M.vol = 1;  // pi, with pi factored out of every moment
    M.m1 = RatVector::Zero(2);
    M.gram = RatMatrix::Zero(2, 2);
    M.gram(0, 0) = Rational(1, 4);
    M.gram(1, 1) = Rational(1, 4);
    M.t3 = SymTensor3<Rational>(2);
    M.t4 = SymTensor4<Rational>(2);
    M.t4(0, 0, 0, 0) = Rational(1, 8);
    M.t4(1, 1, 1, 1) = Rational(1, 8);
    for (int i : {0, 1}) {
        const int j = 1 - i;
        M.t4(i, i, j, j) = Rational(1, 24);
        M.t4(i, j, i, j) = Rational(1, 24);
        M.t4(i, j, j, i) = Rational(1, 24);
    }
    return M;
}

const std::vector<std::string>& moment_preset_names() {
    static const std::vector<std::string> names = {"disc"};
    return names;
}

bool has_moment_preset(const std::string& name) { return name == "disc"; }

MomentTensor moment_preset(const std::string& name) {
    if (name == "disc") return disc_moments();
    throw InputError("unknown moment preset '" + name + "'");
}

}  // namespace eigenbound
