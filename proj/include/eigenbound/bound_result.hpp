#ifndef EIGENBOUND_BOUND_RESULT_HPP
#define EIGENBOUND_BOUND_RESULT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eigenbound/rational.hpp"

namespace eigenbound {

struct OptimizerTrace {
    int starts = 0;
    int skipped_degenerate = 0;
    long long evaluations = 0;
    int iterations_best = 0;
};

struct BoundResult {
    double bound = 0.0;                     // floating-point value of the bound
    std::optional<Rational> bound_exact;    // set when assembled exactly
    Eigen::VectorXd argmin;                 // optimal direction (empty when not applicable)
    Rational lambda = 1;                    // Einstein constant used
    double numerator = 0.0;                 // correction-term numerator at the argmin
    double denominator = 0.0;               // ||Phi||^2 at the argmin
    OptimizerTrace trace;
    std::map<std::string, std::string> extras;  // e.g. the exact I_k integrals
    std::vector<std::string> notes;
};

}  // namespace eigenbound

#endif
