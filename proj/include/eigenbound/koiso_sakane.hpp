#ifndef EIGENBOUND_KOISO_SAKANE_HPP
#define EIGENBOUND_KOISO_SAKANE_HPP

#include <vector>

#include "eigenbound/bound_result.hpp"
#include "eigenbound/rational.hpp"

namespace eigenbound {

/**
 * Data of a Koiso-Sakane manifold: r Fano factors with complex dimensions
 * n_i, Chern indices p_i and nonzero Euler-class coefficients q_i. The
 * relevant interval is [-(n_1+1), n_r+1]; factors with n_i = 0 contribute
 * nothing to the weight but fix the interval endpoints.
 */
struct KSData {
    std::vector<int> n;
    std::vector<int> p;
    std::vector<int> q;
    Rational lambda = 1;

    int factors() const { return static_cast<int>(n.size()); }
    Rational interval_lo() const { return Rational(-(n.front() + 1)); }
    Rational interval_hi() const { return Rational(n.back() + 1); }

    // Throws on structural problems (q_i = 0, length mismatch); returns
    // warnings for the geometric hypothesis inequalities, which concern
    // validity of the manifold rather than of the integrals.
    std::vector<std::string> validate() const;
};

struct KSIntegrals {
    Rational I0, I2, I3, I4;
    std::vector<Rational> breakpoints;  // weight kinks p_i/q_i inside the interval
};

/**
 * Exact I_k = integral of x^k * prod_i |p_i/q_i - x|^{n_i} over the interval.
 * The integrand is piecewise polynomial; pieces between the breakpoints are
 * expanded with the absolute values resolved by sign and integrated exactly.
 * Supported for k <= 8.
 */
Rational ks_integral(const KSData& D, int k);

KSIntegrals ks_integrals(const KSData& D);

/**
 * The signed obstruction integral of x * prod_i (x - p_i/q_i)^{n_i} (no
 * absolute values). Zero certifies the existence hypothesis and makes the
 * coordinate the first non-constant eigenfunction.
 */
Rational futaki_integral(const KSData& D);

/**
 * The bound 8L/3 + (2L/3) (I3^2/I2^2 + 4/I0) / (I4/I2^2 - I3^2/I2^2 - 1/I0),
 * assembled in exact rational arithmetic. Warns (does not abort) when the
 * obstruction integral is nonzero; throws ValidationError when the
 * denominator is not positive.
 */
BoundResult ks_bound(const KSData& D);

/**
 * The W_{q,-q} family over a product of two N-dimensional projective spaces:
 * r = 4 with n = (0, N, N, 0), p = (0, N+1, N+1, 0), q-tuple (1, q, -q, 1).
 * Requires 0 < q < N+1.
 */
KSData ks_family_wq(int N, int q);

struct KSTableRow {
    int N = 0;
    int q = 0;
    Rational bound;
};

// The five (N, q) combinations with 2 <= N <= 3, 1 <= q <= N.
std::vector<KSTableRow> ks_family_table();

}  // namespace eigenbound

#endif
