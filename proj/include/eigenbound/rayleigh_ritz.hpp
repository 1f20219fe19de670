#ifndef EIGENBOUND_RAYLEIGH_RITZ_HPP
#define EIGENBOUND_RAYLEIGH_RITZ_HPP

#include <string>
#include <vector>

#include "eigenbound/moments.hpp"
#include "eigenbound/multipoly.hpp"
#include "eigenbound/polytope.hpp"
#include "eigenbound/quadrature.hpp"

namespace eigenbound {

// One term coeff * l(x) log l(x) with l(x) = direction·x + offset.
struct LogTerm {
    Eigen::VectorXd direction;
    double offset = 0.0;
    double coeff = 0.0;
};

/**
 * Symplectic potential: the canonical part sum_k l_k log l_k implied by the
 * facets of the polytope it is used with, plus a polynomial correction h(x)
 * and optional additional l log l terms. The metric on torus-invariant
 * functions enters only through the Hessian of the total potential.
 */
struct SymplecticPotential {
    MultiPoly poly_correction;
    std::vector<LogTerm> log_terms;

    explicit SymplecticPotential(int dim) : poly_correction(dim) {}
};

// Hessian of the canonical potential: sum_k v_k v_k^T / l_k(x).
// x must be strictly interior.
Eigen::MatrixXd canonical_hessian(const Polytope& P, const Eigen::VectorXd& x);

// Canonical Hessian plus the exact symbolic Hessian of the polynomial
// correction plus sum of coeff * a a^T / (a·x + b) over the log terms.
// Throws ValidationError when the result is not positive definite.
Eigen::MatrixXd potential_hessian(const SymplecticPotential& S, const Polytope& P,
                                  const Eigen::VectorXd& x);

struct AssembledMatrices {
    Eigen::MatrixXd A;  // stiffness: <grad f_i, grad f_j> in the metric pairing
    Eigen::MatrixXd B;  // mass: <f_i, f_j>, assembled exactly from moments
    QuadratureReport report;
};

/**
 * A_ij = integral of (grad f_i)^T H(x)^{-1} (grad f_j) over P by adaptive
 * quadrature; B_ij exactly from the moment engine. For torus-invariant test
 * functions the gradient pairing is the inverse Hessian and the volume
 * element is Lebesgue measure on P (the torus factor cancels in B^{-1}A).
 */
AssembledMatrices assemble_matrices(const Polytope& P, const SymplecticPotential& S,
                                    const std::vector<MultiPoly>& basis,
                                    const QuadratureOptions& opt = {});

// Eigenvalues of B^{-1}A in ascending order, via Cholesky reduction of the
// symmetric-definite pencil to a standard symmetric problem. Throws
// ValidationError when B is not positive definite.
std::vector<double> generalized_eigenvalues(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

struct SpectrumResult {
    std::vector<double> eigenvalues;       // ascending
    std::vector<MultiIndex> basis;         // monomial exponents used
    QuadratureReport quadrature_report;
};

// Rayleigh-Ritz with all monomials of total degree <= degree (degree <= 4).
SpectrumResult rayleigh_ritz_spectrum(const Polytope& P, const SymplecticPotential& S, int degree,
                                      const QuadratureOptions& opt = {});

// The published approximate Einstein potential on the hexagon: the canonical
// part rescaled to (1/2) sum l_k log l_k via log terms, plus the invariant
// polynomial corrections on U = x1^2 + x1 x2 + x2^2 and
// V = x1^2 x2^2 (x1+x2)^2.
SymplecticPotential doran_dp6_potential();

const std::vector<std::string>& potential_preset_names();
bool has_potential_preset(const std::string& name);
SymplecticPotential potential_preset(const std::string& name);

}  // namespace eigenbound

#endif
