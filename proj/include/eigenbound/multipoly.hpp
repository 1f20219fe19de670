#ifndef EIGENBOUND_MULTIPOLY_HPP
#define EIGENBOUND_MULTIPOLY_HPP

#include <map>
#include <vector>

#include "eigenbound/rational.hpp"

namespace eigenbound {

// Exponent vector, one entry per variable.
using MultiIndex = std::vector<int>;

int multiindex_degree(const MultiIndex& alpha);

// All multi-indices with nvars entries and total degree <= max_degree,
// in graded lexicographic order.
std::vector<MultiIndex> multiindices_up_to(int nvars, int max_degree);

/**
 * Multivariate polynomial with exact rational coefficients.
 *
 * Terms are kept in a map keyed by multi-index; zero coefficients are never
 * stored, so the zero polynomial has an empty term map.
 */
class MultiPoly {
  public:
    explicit MultiPoly(int nvars);

    static MultiPoly constant(int nvars, const Rational& c);
    static MultiPoly monomial(const MultiIndex& alpha, const Rational& c);
    static MultiPoly variable(int nvars, int i);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    Rational coefficient(const MultiIndex& alpha) const;
    void add_term(const MultiIndex& alpha, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator*(const Rational& scalar) const;
    MultiPoly pow(int k) const;

    MultiPoly derivative(int var) const;

    Rational evaluate(const RatVector& x) const;
    double evaluate(const Eigen::VectorXd& x) const;

    // Substitutes x_i = shift_i + sum_j map(i,j) y_j and expands in y.
    MultiPoly substitute_affine(const RatMatrix& map, const RatVector& shift) const;

  private:
    int nvars_;
    std::map<MultiIndex, Rational> terms_;
};

}  // namespace eigenbound

#endif
