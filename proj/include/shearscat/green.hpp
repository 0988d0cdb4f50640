// Outgoing 2D Helmholtz Green function G_t(x,y) = (i/4) H0^(1)(t|x-y|),
// its FFT-based volume potential, and point-source incident fields.
#ifndef SHEARSCAT_GREEN_HPP
#define SHEARSCAT_GREEN_HPP

#include <vector>

#include "shearscat/grid.hpp"

namespace shearscat {

class GreenKernel {
public:
    GreenKernel(const Grid2D& grid, double wavenumber);

    const Grid2D& grid() const { return grid_; }
    double wavenumber() const { return wavenumber_; }
    // Kernel value substituted on the singular diagonal cell: the analytic
    // mean of (i/4) H0^(1)(t r) over a disk of area h^2.
    Complex self_cell() const { return self_cell_; }

    // V(g)(x_ij) = h^2 sum G(x_ij, x_kl) g_kl with the self term replaced
    // by self_cell * g_ij. Computed as exact aperiodic convolution on the
    // zero-padded 2n x 2n grid. Thread safe (const state only).
    ComplexField volume_potential(const ComplexField& g) const;

private:
    Grid2D grid_;
    double wavenumber_;
    Complex self_cell_;
    std::vector<Complex> fourier_kernel_; // 2n x 2n, includes h^2 weight
};

// Field y -> G_t(y, x0) for a source outside the scatterer support.
ComplexField point_source(const GreenKernel& kernel, Point x0);

// Plane wave e^{i k <x,d>} with |d| normalized internally.
ComplexField plane_wave(const Grid2D& grid, Point direction, double k);

} // namespace shearscat

#endif
