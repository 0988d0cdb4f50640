// Lippmann-Schwinger solves for the acoustic (Helmholtz) medium problem.
#ifndef SHEARSCAT_SCATTERING_HPP
#define SHEARSCAT_SCATTERING_HPP

#include "shearscat/gmres.hpp"
#include "shearscat/green.hpp"

namespace shearscat {

struct ScatterOptions {
    double tol = 1e-8;
    int restart = 50;
    int maxiter = 500;

    GmresOptions gmres() const { return {tol, restart, maxiter}; }
};

// Solve (I + k0^2 V M_f) x = b, the discrete Lippmann-Schwinger system.
ComplexField solve_forward_system(const GreenKernel& kernel, const ComplexField& f,
                                  const ComplexField& b, double k0,
                                  const ScatterOptions& options = {},
                                  const ComplexField* initial = nullptr);

// Solve the transposed system (I + k0^2 M_f V) x = b; conjugating data and
// solution around this call performs the conjugate-transposed solve used by
// the measurement adjoint.
ComplexField solve_transposed_system(const GreenKernel& kernel, const ComplexField& f,
                                     const ComplexField& b, double k0,
                                     const ScatterOptions& options = {},
                                     const ComplexField* initial = nullptr);

// Scattered wave u^s with (I + k0^2 V M_f) u^s = -k0^2 V(f u_inc).
// The total wave is u^s + u_inc.
ComplexField solve_scattered(const GreenKernel& kernel, const ComplexField& f,
                             const ComplexField& u_inc, double k0,
                             const ScatterOptions& options = {},
                             const ComplexField* initial = nullptr);

} // namespace shearscat

#endif
