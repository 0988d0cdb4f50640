#include "shearscat/green.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shearscat/fft.hpp"
#include "shearscat/phantom.hpp"
#include "shearscat/special.hpp"

namespace shearscat {

namespace {

constexpr double euler_gamma = 0.57721566490153286060;

} // namespace

GreenKernel::GreenKernel(const Grid2D& grid, double wavenumber)
    : grid_(grid), wavenumber_(wavenumber) {
    if (!(wavenumber > 0.0))
        throw std::invalid_argument("GreenKernel: wavenumber must be positive");

    const int n = grid.n();
    const int m = 2 * n;
    const double h = grid.h();

    // Mean of H0^(1)(t r) over a disk of the cell area h^2 (radius h/sqrt(pi)),
    // integrated analytically with H0^(1)(z) ~ 1 + (2i/pi)(log(z/2) + gamma).
    const double rh = h / std::sqrt(std::numbers::pi);
    const Complex mean =
        1.0 + (Complex(0.0, 2.0) / std::numbers::pi) *
                  (std::log(wavenumber * rh / 2.0) + euler_gamma - 0.5);
    self_cell_ = Complex(0.0, 0.25) * mean;

    // Offsets p,q in [-n+1, n-1] embedded circularly in the 2n grid; the
    // zero padding makes the circular convolution agree with the aperiodic
    // sum for all source/target pairs inside the n x n grid.
    std::vector<Complex> kernel(static_cast<std::size_t>(m) * m, Complex(0.0, 0.0));
    for (int p = -n + 1; p < n; ++p) {
        const int ip = (p + m) % m;
        for (int q = -n + 1; q < n; ++q) {
            const int iq = (q + m) % m;
            Complex value;
            if (p == 0 && q == 0) {
                value = self_cell_;
            } else {
                const double r = h * std::hypot(p, q);
                value = Complex(0.0, 0.25) * hankel0_1(wavenumber * r);
            }
            kernel[static_cast<std::size_t>(ip) * m + iq] = h * h * value;
        }
    }
    fourier_kernel_.resize(kernel.size());
    fft::forward_2d(m, m, kernel.data(), fourier_kernel_.data());
}

ComplexField GreenKernel::volume_potential(const ComplexField& g) const {
    if (!(g.grid() == grid_))
        throw std::invalid_argument("volume_potential: grid mismatch");
    const int n = grid_.n();
    const int m = 2 * n;
    std::vector<Complex> pad(static_cast<std::size_t>(m) * m, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pad[static_cast<std::size_t>(i) * m + j] = g(i, j);
    std::vector<Complex> hat(pad.size());
    fft::forward_2d(m, m, pad.data(), hat.data());
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= fourier_kernel_[k];
    fft::inverse_2d(m, m, hat.data(), pad.data());
    ComplexField out(grid_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = pad[static_cast<std::size_t>(i) * m + j];
    return out;
}

ComplexField point_source(const GreenKernel& kernel, Point x0) {
    if (std::hypot(x0.x, x0.y) <= support_radius)
        throw std::invalid_argument("point_source: source must lie outside the support ball");
    const Grid2D& grid = kernel.grid();
    const double t = kernel.wavenumber();
    ComplexField f(grid);
    for (int i = 0; i < grid.n(); ++i) {
        const double dx = grid.coord(i) - x0.x;
        for (int j = 0; j < grid.n(); ++j) {
            const double r = std::hypot(dx, grid.coord(j) - x0.y);
            f(i, j) = Complex(0.0, 0.25) * hankel0_1(t * r);
        }
    }
    return f;
}

ComplexField plane_wave(const Grid2D& grid, Point direction, double k) {
    const double norm = std::hypot(direction.x, direction.y);
    if (norm == 0.0) throw std::invalid_argument("plane_wave: zero direction");
    const double dx = direction.x / norm, dy = direction.y / norm;
    ComplexField f(grid);
    for (int i = 0; i < grid.n(); ++i) {
        const double x = grid.coord(i);
        for (int j = 0; j < grid.n(); ++j) {
            const double phase = k * (dx * x + dy * grid.coord(j));
            f(i, j) = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return f;
}

} // namespace shearscat
