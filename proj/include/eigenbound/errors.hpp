#ifndef EIGENBOUND_ERRORS_HPP
#define EIGENBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eigenbound {

// Malformed input: bad JSON, bad flags, unreadable files. CLI exit code 1.
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Mathematically invalid data: empty polytope, nonzero barycenter without
// recentering, non-positive-definite Hessian. CLI exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: quadrature or optimizer did not converge. CLI exit code 3.
class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eigenbound

#endif
