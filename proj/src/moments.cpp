#include "eigenbound/moments.hpp"

#include <algorithm>

#include "eigenbound/errors.hpp"

namespace eigenbound {

namespace {

Rational factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// integral of y^beta over the standard simplex {y >= 0, sum y <= 1}
Rational dirichlet(const MultiIndex& beta, int n) {
    Rational num = 1;
    for (int b : beta) num *= factorial(b);
    return num / factorial(multiindex_degree(beta) + n);
}

}  // namespace

Rational simplex_monomial_integral(const Simplex& S, const MultiIndex& alpha) {
    const int n = S.dim();
    if (static_cast<int>(alpha.size()) != n)
        throw InputError("simplex_monomial_integral: multi-index length mismatch");

    RatMatrix E(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) E(i, j) = S.vertices[j + 1][i] - S.vertices[0][i];
    Rational jac = determinant(E);
    if (jac == 0) throw ValidationError("simplex_monomial_integral: degenerate simplex");
    if (jac < 0) jac = -jac;

    const MultiPoly pulled =
        MultiPoly::monomial(alpha, Rational(1)).substitute_affine(E, S.vertices[0]);
    Rational total = 0;
    for (const auto& [beta, c] : pulled.terms()) total += c * dirichlet(beta, n);
    return total * jac;
}

Rational monomial_moment(const std::vector<Simplex>& triangulation, const MultiIndex& alpha) {
    Rational total = 0;
    for (const auto& S : triangulation) total += simplex_monomial_integral(S, alpha);
    return total;
}

Rational monomial_moment(const Polytope& P, const MultiIndex& alpha) {
    return monomial_moment(triangulate(P), alpha);
}

Rational integrate_polynomial(const std::vector<Simplex>& triangulation, const MultiPoly& f) {
    Rational total = 0;
    for (const auto& [alpha, c] : f.terms()) total += c * monomial_moment(triangulation, alpha);
    return total;
}

Rational integrate_polynomial(const Polytope& P, const MultiPoly& f) {
    return integrate_polynomial(triangulate(P), f);
}

MomentTensor moment_tensors(const Polytope& P) {
    const int n = P.dim();
    const auto tri = triangulate(P);

    MomentTensor M;
    M.dim = n;
    M.m1 = RatVector::Zero(n);
    M.gram = RatMatrix::Zero(n, n);
    M.t3 = SymTensor3<Rational>(n);
    M.t4 = SymTensor4<Rational>(n);

    M.vol = monomial_moment(tri, MultiIndex(n, 0));
    for (int i = 0; i < n; ++i) {
        MultiIndex a(n, 0);
        a[i] = 1;
        M.m1[i] = monomial_moment(tri, a);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            MultiIndex a(n, 0);
            ++a[i], ++a[j];
            const Rational v = monomial_moment(tri, a);
            M.gram(i, j) = v;
            M.gram(j, i) = v;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                MultiIndex a(n, 0);
                ++a[i], ++a[j], ++a[k];
                const Rational v = monomial_moment(tri, a);
                int idx[3] = {i, j, k};
                std::sort(idx, idx + 3);
                do {
                    M.t3(idx[0], idx[1], idx[2]) = v;
                } while (std::next_permutation(idx, idx + 3));
            }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    MultiIndex a(n, 0);
                    ++a[i], ++a[j], ++a[k], ++a[l];
                    const Rational v = monomial_moment(tri, a);
                    int idx[4] = {i, j, k, l};
                    std::sort(idx, idx + 4);
                    do {
                        M.t4(idx[0], idx[1], idx[2], idx[3]) = v;
                    } while (std::next_permutation(idx, idx + 4));
                }

    if (M.vol <= 0) throw ValidationError("moment_tensors: nonpositive volume");
    return M;
}

}  // namespace eigenbound
