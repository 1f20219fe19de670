#ifndef EIGENBOUND_RATIONAL_HPP
#define EIGENBOUND_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace eigenbound {

// All exact arithmetic in the project runs on GMP rationals. Floating point
// enters only in the optimizer, the quadrature engine and the eigensolvers.
using Rational = boost::multiprecision::mpq_rational;

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

double to_double(const Rational& r);

// "p" for integers, "p/q" otherwise.
std::string rational_to_string(const Rational& r);

/**
 * Parse "p/q", an integer, or a plain decimal such as "-0.22412" into an
 * exact rational. Decimals are read digit-by-digit, not through a double.
 */
Rational parse_rational(const std::string& text);

// Nearest rational to x with denominator at most max_den (continued fractions).
Rational rationalize(double x, long max_den);

Eigen::VectorXd to_double_vector(const RatVector& v);
Eigen::MatrixXd to_double_matrix(const RatMatrix& m);

// --- exact dense linear algebra -------------------------------------------
//
// Plain Gaussian elimination over the rationals: pivots are exact, so no
// threshold heuristics are involved and results are deterministic.

// Solves A x = b. Returns false if A is singular (no unique solution).
bool solve_linear(RatMatrix A, RatVector b, RatVector& x);

int rank(RatMatrix A);

Rational determinant(RatMatrix A);

// Throws ValidationError if A is singular.
RatMatrix inverse(const RatMatrix& A);

// Basis of the right null space of A (columns of the returned matrices).
std::vector<RatVector> nullspace(RatMatrix A);

}  // namespace eigenbound

#endif
