// Restarted GMRES for complex linear operators given as callables.
#ifndef SHEARSCAT_GMRES_HPP
#define SHEARSCAT_GMRES_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shearscat/grid.hpp"

namespace shearscat {

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual(residual), iterations(iterations) {}
    double residual;
    int iterations;
};

struct GmresOptions {
    double tol = 1e-8;
    int restart = 50;
    int maxiter = 500; // total operator applications
};

struct GmresResult {
    std::vector<Complex> x;
    double relative_residual = 0.0;
    int iterations = 0;
};

using LinearMap = std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>;

// Solves A x = b to ||Ax-b|| <= tol ||b|| using Arnoldi with modified
// Gram-Schmidt and Givens rotations. Throws SolverError (carrying the final
// residual) when maxiter is exhausted. An exact-solution breakdown returns
// the current iterate.
GmresResult gmres(const LinearMap& apply, const std::vector<Complex>& b,
                  const GmresOptions& options = {},
                  const std::vector<Complex>* initial = nullptr);

} // namespace shearscat

#endif
