#ifndef EIGENBOUND_POLYTOPE_HPP
#define EIGENBOUND_POLYTOPE_HPP

#include <string>
#include <vector>

#include "eigenbound/rational.hpp"

namespace eigenbound {

/**
 * One defining halfspace l(x) = v·x + c >= 0 of a moment polytope.
 * The normal v is a primitive integer lattice vector.
 */
struct Facet {
    Eigen::VectorXi normal;
    Rational constant;

    Rational value(const RatVector& x) const;
    double value_d(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/**
 * Simplex with exact rational vertices, the carrier of all exact integration.
 */
struct Simplex {
    std::vector<RatVector> vertices;  // n+1 affinely independent points

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    Rational volume() const;
};

/**
 * A bounded, full-dimensional polytope given by facet inequalities.
 *
 * Construction validates the halfspace system: primitive normals, nonempty
 * interior, boundedness, and no redundant facets. Vertices are enumerated by
 * brute force over all n-subsets of facets (the polytopes of interest have a
 * handful of facets; for large facet counts in high dimension this is the
 * documented O(C(m,n)) cost).
 */
class Polytope {
  public:
    Polytope(int dim, std::vector<Facet> facets, std::string name = "");

    int dim() const { return dim_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::string& name() const { return name_; }

    // Extreme points, deduplicated and sorted lexicographically.
    const std::vector<RatVector>& vertices() const { return vertices_; }

    // Non-fatal findings from construction (e.g. vertices with more than
    // dim() active facets).
    const std::vector<std::string>& warnings() const { return warnings_; }

    bool contains(const RatVector& x) const;
    bool strictly_contains(const RatVector& x) const;

  private:
    int dim_;
    std::vector<Facet> facets_;
    std::string name_;
    std::vector<RatVector> vertices_;
    std::vector<std::string> warnings_;
};

/**
 * Decomposes P into simplices with disjoint interiors whose union is P:
 * a fan from the vertex centroid over the recursively triangulated boundary,
 * except that a P which is already a simplex is returned as-is. Simplices are
 * reported in canonical (lexicographic) order.
 */
std::vector<Simplex> triangulate(const Polytope& P);

// Exact center of mass (integral of x over P divided by the volume).
RatVector barycenter(const Polytope& P);

// P shifted by t (facet constants become c - v·t ... the polytope moves by +t).
Polytope translate(const Polytope& P, const RatVector& t);

/**
 * Diagnostic for the Fano normalization convention: all facet constants
 * equal (and equal to one) and barycenter at the origin. Also reports the
 * Delzant unimodularity check at each vertex; failures are informational.
 */
struct FanoReport {
    bool constants_all_equal = false;
    Rational constant_value = 0;   // meaningful when constants_all_equal
    bool constants_equal_one = false;
    RatVector barycenter;
    bool barycenter_zero = false;
    bool delzant = false;
    std::vector<std::string> notes;
    bool pass = false;  // constants all one and barycenter zero
};

FanoReport check_fano_normalized(const Polytope& P);

}  // namespace eigenbound

#endif
