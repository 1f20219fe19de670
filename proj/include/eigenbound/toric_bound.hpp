#ifndef EIGENBOUND_TORIC_BOUND_HPP
#define EIGENBOUND_TORIC_BOUND_HPP

#include "eigenbound/bound_result.hpp"
#include "eigenbound/moments.hpp"

namespace eigenbound {

/**
 * Coordinate change x~ = L x making the coordinates an orthonormal, mean-zero
 * family in L^2 of the region: L^T G L = I for the Gram matrix G. L is the
 * symmetric inverse square root of G, so the choice is basis-free up to the
 * orthogonal freedom the subsequent minimization absorbs.
 */
struct WhitenedBasis {
    Eigen::MatrixXd transform;
    MomentTensor provenance;
};

/**
 * The whitened degree-3 and degree-4 moment tensors plus the volume: all the
 * data the quadratic-test-function bound depends on.
 */
struct QuarticForms {
    int n = 0;
    double vol = 0.0;
    SymTensor3<double> t3w;
    SymTensor4<double> t4w;
};

/**
 * Whitening. Requires the first moments to vanish: exactly for polytope
 * moments (m1_tolerance = 0), or within m1_tolerance * vol^((n+1)/n) for
 * externally supplied moments.
 */
WhitenedBasis whiten(const MomentTensor& M, double m1_tolerance = 0.0);

QuarticForms quartic_forms(const MomentTensor& M, const WhitenedBasis& W);

/**
 * The closed-form bound at direction a (any nonzero vector; the expression is
 * scale-invariant): with c_i = T_ijk a_j a_k and phi4 = Q_ijkl a_i a_j a_k a_l,
 *
 *   bound = 8L/3 + (2L/3) (sum_i c_i^2 + 4 |a|^4 / vol) / ||Phi||^2,
 *   ||Phi||^2 = phi4 - sum_i c_i^2 - |a|^4 / vol.
 *
 * Throws ValidationError when ||Phi||^2 is not positive (the quadratic lies
 * in the span of the coordinates and constants).
 */
double bound_at(const QuarticForms& F, double lambda, const Eigen::VectorXd& a);

/**
 * The same bound written as the Rayleigh quotient of the projected quadratic,
 *   ( (8L/3) phi4 - 2L sum_i c_i^2 ) / ||Phi||^2 .
 * Algebraically identical to bound_at; kept as an independent route and
 * asserted equal in the tests.
 */
double bound_at_gradient_form(const QuarticForms& F, double lambda, const Eigen::VectorXd& a);

// Minimizes bound_at over the unit sphere: multi-start projected gradient
// descent from a deterministic set of 2n^2+8 directions.
BoundResult minimize_over_forms(const QuarticForms& F, double lambda);

/**
 * Full pipeline for exact polytope moments: whiten, minimize, and attempt an
 * exact rational evaluation of the bound at a snapped rational direction
 * (every direction gives a valid upper bound, so snapping is sound; the
 * rational value is reported only when it matches the optimizer minimum).
 */
BoundResult minimize_bound(const MomentTensor& M, const Rational& lambda);

// Same pipeline for externally supplied moments (barycenter tolerance
// 1e-12 * vol^((n+1)/n) instead of exact zero).
BoundResult bound_from_raw_moments(const MomentTensor& M, const Rational& lambda);

/**
 * Exact rational bound at a rational direction given in the *original*
 * coordinates (the quadratic is (b.x)^2). Uses G^{-1} in place of the
 * whitening square root, which is where the exactness comes from:
 *   sum_i <x~_i, phi^2>^2 = u^T G^{-1} u  with  u_j = t3(j,k,l) b_k b_l.
 */
Rational bound_rational_at(const MomentTensor& M, const Rational& lambda, const RatVector& b);

}  // namespace eigenbound

#endif
