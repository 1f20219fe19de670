#ifndef EIGENBOUND_QUADRATURE_HPP
#define EIGENBOUND_QUADRATURE_HPP

#include <functional>
#include <string>
#include <vector>

#include "eigenbound/polytope.hpp"

namespace eigenbound {

/**
 * Quadrature rule on the standard simplex {y >= 0, sum y <= 1}: conical
 * product of Gauss-Jacobi rules, k points per axis, exact for polynomials of
 * total degree <= 2k-1. All weights are positive, so every node contributes
 * a positive-semidefinite term to Gram-type integrands.
 */
struct SimplexRule {
    Eigen::MatrixXd points;   // one node per row
    Eigen::VectorXd weights;  // sum to 1/dim!
    int degree = 0;
};

SimplexRule simplex_rule(int dim, int points_per_axis);

// Gauss-Jacobi nodes/weights on [0,1] with weight (1-t)^alpha (Golub-Welsch).
void gauss_jacobi_01(int k, double alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

struct QuadratureOptions {
    double tol = 1e-6;   // absolute error budget per matrix entry
    int max_depth = 12;  // bisection depth cap, with a warning when hit
    int threads = 1;     // 1 = serial reference path
};

struct QuadratureReport {
    long long evaluations = 0;   // integrand evaluations (nodes)
    int max_depth_reached = 0;
    int depth_cap_hits = 0;
    double est_error = 0.0;      // sum of accepted per-cell error estimates
    std::vector<std::string> warnings;
};

// Evaluates the matrix-valued integrand at x into `out` (preallocated).
using MatrixIntegrand = std::function<void(const Eigen::VectorXd& x, Eigen::MatrixXd& out)>;

/**
 * Adaptive integration of a matrix-valued integrand over a triangulated
 * region: per cell a degree-7 conical rule is compared against its degree-5
 * companion, and cells failing the volume-proportional share of the error
 * budget are bisected along their longest edge.
 *
 * The serial routine is the reference implementation; the parallel one
 * pre-splits the root simplices to a fixed depth and distributes the pieces
 * over OpenMP threads, reducing in deterministic order so results do not
 * depend on the thread count.
 */
Eigen::MatrixXd integrate_adaptive_serial(const std::vector<Simplex>& triangulation, int size,
                                          const MatrixIntegrand& f, const QuadratureOptions& opt,
                                          QuadratureReport& report);

Eigen::MatrixXd integrate_adaptive_parallel(const std::vector<Simplex>& triangulation, int size,
                                            const MatrixIntegrand& f, const QuadratureOptions& opt,
                                            QuadratureReport& report);

// Dispatches on opt.threads.
Eigen::MatrixXd integrate_adaptive(const std::vector<Simplex>& triangulation, int size,
                                   const MatrixIntegrand& f, const QuadratureOptions& opt,
                                   QuadratureReport& report);

}  // namespace eigenbound

#endif
