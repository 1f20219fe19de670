#ifndef EIGENBOUND_MOMENTS_HPP
#define EIGENBOUND_MOMENTS_HPP

#include <vector>

#include "eigenbound/multipoly.hpp"
#include "eigenbound/polytope.hpp"

namespace eigenbound {

/**
 * Dense symmetric rank-3 tensor, filled for every index permutation.
 * Dimensions here are tiny (n <= 3 in practice) so no packed storage.
 */
template <typename T>
struct SymTensor3 {
    int n = 0;
    std::vector<T> data;

    SymTensor3() = default;
    explicit SymTensor3(int dim) : n(dim), data(static_cast<std::size_t>(dim) * dim * dim, T(0)) {}
    T& operator()(int i, int j, int k) { return data[(static_cast<std::size_t>(i) * n + j) * n + k]; }
    const T& operator()(int i, int j, int k) const {
        return data[(static_cast<std::size_t>(i) * n + j) * n + k];
    }
};

template <typename T>
struct SymTensor4 {
    int n = 0;
    std::vector<T> data;

    SymTensor4() = default;
    explicit SymTensor4(int dim)
        : n(dim), data(static_cast<std::size_t>(dim) * dim * dim * dim, T(0)) {}
    T& operator()(int i, int j, int k, int l) {
        return data[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
    const T& operator()(int i, int j, int k, int l) const {
        return data[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
};

/**
 * All exact moments of a region up to total degree 4: volume, first moments,
 * Gram matrix of the coordinates, and the full degree-3/4 moment tensors.
 */
struct MomentTensor {
    int dim = 0;
    Rational vol;
    RatVector m1;
    RatMatrix gram;
    SymTensor3<Rational> t3;
    SymTensor4<Rational> t4;
};

// Exact integral of x^alpha over a simplex, by affine pullback to the
// standard simplex and the Dirichlet formula.
Rational simplex_monomial_integral(const Simplex& S, const MultiIndex& alpha);

// Exact integral of x^alpha over the polytope (sum over a triangulation).
Rational monomial_moment(const Polytope& P, const MultiIndex& alpha);
Rational monomial_moment(const std::vector<Simplex>& triangulation, const MultiIndex& alpha);

Rational integrate_polynomial(const Polytope& P, const MultiPoly& f);
Rational integrate_polynomial(const std::vector<Simplex>& triangulation, const MultiPoly& f);

MomentTensor moment_tensors(const Polytope& P);

}  // namespace eigenbound

#endif
