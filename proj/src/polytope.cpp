#include "eigenbound/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "eigenbound/errors.hpp"

namespace eigenbound {

namespace {

bool rat_vec_less(const RatVector& a, const RatVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

bool rat_vec_eq(const RatVector& a, const RatVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

// Enumerate all k-subsets of {0,...,m-1} in lexicographic order.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > m) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Exact Fourier-Motzkin feasibility of {x : row·(x,1) >= 0 for all rows}.
// Each row stores (a_1,...,a_n, c) meaning a·x + c >= 0.
bool fourier_motzkin_feasible(std::vector<RatVector> rows, int nvars) {
    for (int var = nvars - 1; var >= 0; --var) {
        std::vector<RatVector> lower, upper, rest;
        for (auto& r : rows) {
            if (r[var] > 0) lower.push_back(std::move(r));
            else if (r[var] < 0) upper.push_back(std::move(r));
            else rest.push_back(std::move(r));
        }
        for (const auto& l : lower) {
            for (const auto& u : upper) {
                // combine so the var coefficient cancels; result stays >= 0
                RatVector c = l * (-u[var]) + u * l[var];
                c[var] = 0;
                rest.push_back(std::move(c));
            }
        }
        rows = std::move(rest);
    }
    for (const auto& r : rows)
        if (r[nvars] < 0) return false;
    return true;
}

RatMatrix normals_matrix(const std::vector<Facet>& facets, int dim) {
    RatMatrix V(static_cast<Eigen::Index>(facets.size()), dim);
    for (std::size_t k = 0; k < facets.size(); ++k)
        for (int j = 0; j < dim; ++j) V(static_cast<Eigen::Index>(k), j) = facets[k].normal[j];
    return V;
}

bool ray_in_recession_cone(const std::vector<Facet>& facets, const RatVector& d) {
    for (const auto& f : facets) {
        Rational dot = 0;
        for (Eigen::Index j = 0; j < d.size(); ++j) dot += f.normal[j] * d[j];
        if (dot < 0) return false;
    }
    return true;
}

int affine_rank(const std::vector<RatVector>& pts, int dim) {
    if (pts.size() <= 1) return 0;
    RatMatrix M(static_cast<Eigen::Index>(pts.size()) - 1, dim);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (int j = 0; j < dim; ++j) M(static_cast<Eigen::Index>(i - 1), j) = pts[i][j] - pts[0][j];
    return rank(M);
}

}  // namespace

Rational Facet::value(const RatVector& x) const {
    Rational v = constant;
    for (Eigen::Index j = 0; j < x.size(); ++j) v += normal[j] * x[j];
    return v;
}

double Facet::value_d(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    double v = to_double(constant);
    for (Eigen::Index j = 0; j < x.size(); ++j) v += normal[j] * x[j];
    return v;
}

Rational Simplex::volume() const {
    const int n = dim();
    RatMatrix E(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) E(i, j) = vertices[j + 1][i] - vertices[0][i];
    Rational d = determinant(E);
    if (d < 0) d = -d;
    Rational fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    return d / fact;
}

Polytope::Polytope(int dim, std::vector<Facet> facets, std::string name)
    : dim_(dim), facets_(std::move(facets)), name_(std::move(name)) {
    if (dim_ < 1) throw ValidationError("polytope dimension must be positive");
    if (facets_.empty()) throw ValidationError("polytope needs at least one facet");

    for (std::size_t k = 0; k < facets_.size(); ++k) {
        const auto& v = facets_[k].normal;
        if (v.size() != dim_)
            throw ValidationError("facet " + std::to_string(k) + ": normal has wrong length");
        int g = 0;
        for (int j = 0; j < dim_; ++j) g = std::gcd(g, std::abs(v[j]));
        if (g == 0) throw ValidationError("facet " + std::to_string(k) + ": zero normal");
        if (g != 1)
            throw ValidationError("facet " + std::to_string(k) +
                                  ": normal is not primitive (gcd " + std::to_string(g) + ")");
    }

    // emptiness before boundedness, so inconsistent systems get the right error
    std::vector<RatVector> rows;
    for (const auto& f : facets_) {
        RatVector r(dim_ + 1);
        for (int j = 0; j < dim_; ++j) r[j] = f.normal[j];
        r[dim_] = f.constant;
        rows.push_back(std::move(r));
    }
    if (!fourier_motzkin_feasible(rows, dim_))
        throw ValidationError("empty polytope: the halfspace system is inconsistent");

    // bounded iff the recession cone {d : v_k·d >= 0} is trivial
    if (rank(normals_matrix(facets_, dim_)) < dim_)
        throw ValidationError("unbounded polytope: facet normals do not span space");
    const int m = static_cast<int>(facets_.size());
    bool unbounded = false;
    for_each_subset(m, dim_ - 1, [&](const std::vector<int>& idx) {
        if (unbounded) return;
        RatMatrix M(dim_ - 1, dim_);
        for (int r = 0; r < dim_ - 1; ++r)
            for (int j = 0; j < dim_; ++j) M(r, j) = facets_[idx[r]].normal[j];
        const auto basis = nullspace(M);
        if (basis.size() != 1) return;
        if (ray_in_recession_cone(facets_, basis[0]) ||
            ray_in_recession_cone(facets_, RatVector(-basis[0])))
            unbounded = true;
    });
    if (unbounded) throw ValidationError("unbounded polytope: recession cone has an extreme ray");

    // brute-force vertex enumeration over facet n-subsets
    for_each_subset(m, dim_, [&](const std::vector<int>& idx) {
        RatMatrix A(dim_, dim_);
        RatVector b(dim_);
        for (int r = 0; r < dim_; ++r) {
            for (int j = 0; j < dim_; ++j) A(r, j) = facets_[idx[r]].normal[j];
            b[r] = -facets_[idx[r]].constant;
        }
        RatVector x;
        if (!solve_linear(A, b, x)) return;
        if (!contains(x)) return;
        for (const auto& v : vertices_)
            if (rat_vec_eq(v, x)) return;
        vertices_.push_back(std::move(x));
    });
    std::sort(vertices_.begin(), vertices_.end(), rat_vec_less);
    if (vertices_.empty())
        throw ValidationError("empty polytope: no vertex satisfies all inequalities");

    // full-dimensionality: the mean of all vertices lies in the relative
    // interior, so strict feasibility there is equivalent to interior != {}
    RatVector centroid = RatVector::Zero(dim_);
    for (const auto& v : vertices_) centroid += v;
    centroid /= Rational(static_cast<int>(vertices_.size()));
    if (!strictly_contains(centroid))
        throw ValidationError("polytope has empty interior (not full-dimensional)");

    // irredundancy: every facet must carry an (n-1)-dimensional face
    for (std::size_t k = 0; k < facets_.size(); ++k) {
        std::vector<RatVector> on;
        for (const auto& v : vertices_)
            if (facets_[k].value(v) == 0) on.push_back(v);
        if (affine_rank(on, dim_) != dim_ - 1)
            throw ValidationError("facet " + std::to_string(k) +
                                  " is redundant: it does not support a face of dimension " +
                                  std::to_string(dim_ - 1));
    }

    for (const auto& v : vertices_) {
        int active = 0;
        for (const auto& f : facets_)
            if (f.value(v) == 0) ++active;
        if (active > dim_) {
            std::string s = "vertex (";
            for (int j = 0; j < dim_; ++j)
                s += rational_to_string(v[j]) + (j + 1 < dim_ ? "," : "");
            s += ") has " + std::to_string(active) + " active facets (non-simple, Delzant violated)";
            warnings_.push_back(s);
        }
    }
}

bool Polytope::contains(const RatVector& x) const {
    for (const auto& f : facets_)
        if (f.value(x) < 0) return false;
    return true;
}

bool Polytope::strictly_contains(const RatVector& x) const {
    for (const auto& f : facets_)
        if (f.value(x) <= 0) return false;
    return true;
}

namespace {

struct RatVecLess {
    bool operator()(const RatVector& a, const RatVector& b) const { return rat_vec_less(a, b); }
};

// Recursive "pulling" triangulation of a k-dimensional face given by its
// vertex set: cone the lexicographically smallest vertex over the
// triangulated (k-1)-subfaces that do not contain it.
void triangulate_face(const Polytope& P, const std::vector<RatVector>& face_vertices, int k,
                      std::vector<std::vector<RatVector>>& out) {
    if (static_cast<int>(face_vertices.size()) == k + 1) {
        out.push_back(face_vertices);
        return;
    }
    const RatVector& apex = face_vertices.front();  // callers keep lists sorted
    std::vector<std::vector<RatVector>> subfaces;
    for (const auto& f : P.facets()) {
        std::vector<RatVector> sub;
        for (const auto& v : face_vertices)
            if (f.value(v) == 0) sub.push_back(v);
        if (sub.size() < static_cast<std::size_t>(k)) continue;
        if (sub.size() == face_vertices.size()) continue;
        bool has_apex = false;
        for (const auto& v : sub)
            if (rat_vec_eq(v, apex)) { has_apex = true; break; }
        if (has_apex) continue;
        if (affine_rank(sub, P.dim()) != k - 1) continue;
        if (std::find_if(subfaces.begin(), subfaces.end(), [&](const auto& s) {
                if (s.size() != sub.size()) return false;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (!rat_vec_eq(s[i], sub[i])) return false;
                return true;
            }) != subfaces.end())
            continue;
        subfaces.push_back(std::move(sub));
    }
    for (const auto& sub : subfaces) {
        std::vector<std::vector<RatVector>> pieces;
        triangulate_face(P, sub, k - 1, pieces);
        for (auto& piece : pieces) {
            piece.push_back(apex);
            std::sort(piece.begin(), piece.end(), rat_vec_less);
            out.push_back(std::move(piece));
        }
    }
}

}  // namespace

std::vector<Simplex> triangulate(const Polytope& P) {
    const int n = P.dim();
    const auto& verts = P.vertices();
    std::vector<std::vector<RatVector>> cells;

    if (static_cast<int>(verts.size()) == n + 1) {
        cells.push_back(verts);  // already a simplex
    } else {
        RatVector apex = RatVector::Zero(n);
        for (const auto& v : verts) apex += v;
        apex /= Rational(static_cast<int>(verts.size()));

        for (const auto& f : P.facets()) {
            std::vector<RatVector> on;
            for (const auto& v : verts)
                if (f.value(v) == 0) on.push_back(v);
            std::vector<std::vector<RatVector>> pieces;
            triangulate_face(P, on, n - 1, pieces);
            for (auto& piece : pieces) {
                piece.push_back(apex);
                std::sort(piece.begin(), piece.end(), rat_vec_less);
                cells.push_back(std::move(piece));
            }
        }
    }

    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (rat_vec_less(a[i], b[i])) return true;
            if (rat_vec_less(b[i], a[i])) return false;
        }
        return false;
    });

    std::vector<Simplex> out;
    out.reserve(cells.size());
    for (auto& c : cells) out.push_back(Simplex{std::move(c)});
    return out;
}

RatVector barycenter(const Polytope& P) {
    const int n = P.dim();
    Rational total_volume = 0;
    RatVector weighted = RatVector::Zero(n);
    for (const auto& S : triangulate(P)) {
        const Rational vol = S.volume();
        RatVector c = RatVector::Zero(n);
        for (const auto& v : S.vertices) c += v;
        c /= Rational(n + 1);
        weighted += c * vol;
        total_volume += vol;
    }
    return weighted / total_volume;
}

Polytope translate(const Polytope& P, const RatVector& t) {
    std::vector<Facet> facets = P.facets();
    for (auto& f : facets) {
        Rational dot = 0;
        for (int j = 0; j < P.dim(); ++j) dot += f.normal[j] * t[j];
        f.constant -= dot;
    }
    return Polytope(P.dim(), std::move(facets), P.name());
}

FanoReport check_fano_normalized(const Polytope& P) {
    FanoReport rep;
    rep.constants_all_equal = true;
    rep.constant_value = P.facets().front().constant;
    for (const auto& f : P.facets())
        if (f.constant != rep.constant_value) rep.constants_all_equal = false;
    rep.constants_equal_one = rep.constants_all_equal && rep.constant_value == 1;
    if (rep.constants_all_equal && !rep.constants_equal_one)
        rep.notes.push_back("facet constants are equal but not 1 (value " +
                            rational_to_string(rep.constant_value) + ")");
    if (!rep.constants_all_equal) rep.notes.push_back("facet constants differ");

    rep.barycenter = barycenter(P);
    rep.barycenter_zero = true;
    for (int j = 0; j < P.dim(); ++j)
        if (rep.barycenter[j] != 0) rep.barycenter_zero = false;
    if (!rep.barycenter_zero) rep.notes.push_back("barycenter is not the origin");

    rep.delzant = true;
    for (const auto& v : P.vertices()) {
        std::vector<int> active;
        for (std::size_t k = 0; k < P.facets().size(); ++k)
            if (P.facets()[k].value(v) == 0) active.push_back(static_cast<int>(k));
        if (static_cast<int>(active.size()) != P.dim()) {
            rep.delzant = false;
            rep.notes.push_back("non-simple vertex (" + std::to_string(active.size()) +
                                " active facets)");
            continue;
        }
        RatMatrix M(P.dim(), P.dim());
        for (int r = 0; r < P.dim(); ++r)
            for (int j = 0; j < P.dim(); ++j) M(r, j) = P.facets()[active[r]].normal[j];
        Rational d = determinant(M);
        if (d < 0) d = -d;
        if (d != 1) {
            rep.delzant = false;
            rep.notes.push_back("vertex normals are not a lattice basis (|det| = " +
                                rational_to_string(d) + ")");
        }
    }

    rep.pass = rep.constants_equal_one && rep.barycenter_zero;
    return rep;
}

}  // namespace eigenbound
