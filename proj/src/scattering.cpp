#include "shearscat/scattering.hpp"

namespace shearscat {

namespace {

ComplexField run_gmres(const GreenKernel& kernel, const LinearMap& apply, const ComplexField& b,
                       const ScatterOptions& options, const ComplexField* initial) {
    std::vector<Complex> rhs(b.values().begin(), b.values().end());
    std::vector<Complex> guess;
    const std::vector<Complex>* guess_ptr = nullptr;
    if (initial) {
        guess.assign(initial->values().begin(), initial->values().end());
        guess_ptr = &guess;
    }
    GmresResult res = gmres(apply, rhs, options.gmres(), guess_ptr);
    return ComplexField(kernel.grid(), std::move(res.x));
}

} // namespace

ComplexField solve_forward_system(const GreenKernel& kernel, const ComplexField& f,
                                  const ComplexField& b, double k0,
                                  const ScatterOptions& options, const ComplexField* initial) {
    const Grid2D& grid = kernel.grid();
    if (!(f.grid() == grid) || !(b.grid() == grid))
        throw std::invalid_argument("solve_forward_system: grid mismatch");
    const double k2 = k0 * k0;
    LinearMap apply = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        ComplexField xf(grid, x);
        for (std::size_t k = 0; k < xf.size(); ++k) xf[k] *= f[k];
        ComplexField v = kernel.volume_potential(xf);
        y.resize(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + k2 * v[k];
    };
    return run_gmres(kernel, apply, b, options, initial);
}

ComplexField solve_transposed_system(const GreenKernel& kernel, const ComplexField& f,
                                     const ComplexField& b, double k0,
                                     const ScatterOptions& options, const ComplexField* initial) {
    const Grid2D& grid = kernel.grid();
    if (!(f.grid() == grid) || !(b.grid() == grid))
        throw std::invalid_argument("solve_transposed_system: grid mismatch");
    const double k2 = k0 * k0;
    LinearMap apply = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        ComplexField v = kernel.volume_potential(ComplexField(grid, x));
        y.resize(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + k2 * f[k] * v[k];
    };
    return run_gmres(kernel, apply, b, options, initial);
}

ComplexField solve_scattered(const GreenKernel& kernel, const ComplexField& f,
                             const ComplexField& u_inc, double k0,
                             const ScatterOptions& options, const ComplexField* initial) {
    const Grid2D& grid = kernel.grid();
    if (!(u_inc.grid() == grid))
        throw std::invalid_argument("solve_scattered: grid mismatch");
    ComplexField fu(grid);
    for (std::size_t k = 0; k < fu.size(); ++k) fu[k] = f[k] * u_inc[k];
    ComplexField b = Complex(-k0 * k0, 0.0) * kernel.volume_potential(fu);
    return solve_forward_system(kernel, f, b, k0, options, initial);
}

} // namespace shearscat
