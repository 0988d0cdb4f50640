// Schrodinger scattering: discrete backscattering amplitudes on a square
// frequency lattice, the inverse Born reconstruction, shearlet sparsity
// decay reports, and ISTA recovery from partial Fourier samples.
//
// Lattice convention: amplitude index (l,m), |l|,|m| <= q, probes the
// incident frequency vector omega = (pi/2)(l,m). Backscattering doubles the
// frequency, so in the weak-contrast limit A(l,m) is the Fourier-series
// coefficient of the contrast at pi(l,m) on [-1,1]^2. That makes the
// inverse transform an exact band-limited projection on the grid and fixes
// the otherwise free frequency unit of the experiment.
#ifndef SHEARSCAT_BORN_HPP
#define SHEARSCAT_BORN_HPP

#include <cstdint>
#include <vector>

#include "shearscat/scattering.hpp"
#include "shearscat/shearlet.hpp"

namespace shearscat {

class BackscatterGrid {
public:
    explicit BackscatterGrid(int q);

    int q() const { return q_; }
    int side() const { return 2 * q_ + 1; }
    // Physical frequency of index (l,m): (pi/2) * (l,m).
    static constexpr double frequency_step = 1.5707963267948966; // pi/2

    Complex& operator()(int l, int m) { return amplitudes_[offset(l, m)]; }
    Complex operator()(int l, int m) const { return amplitudes_[offset(l, m)]; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    std::vector<Complex>& amplitudes() { return amplitudes_; }

    int failures = 0; // per-frequency solver failures recorded by the driver

private:
    std::size_t offset(int l, int m) const {
        if (l < -q_ || l > q_ || m < -q_ || m > q_)
            throw std::out_of_range("BackscatterGrid: index out of range");
        return static_cast<std::size_t>(l + q_) * side() + (m + q_);
    }
    int q_;
    std::vector<Complex> amplitudes_;
};

// Total field u for the potential scattering problem
// u = u_inc + V_k(f u) with u_inc = e^{i k <x,d>}.
ComplexField schrodinger_scatter(const ComplexField& f, Point direction, double k,
                                 const ScatterOptions& options = {});
// Same but reusing a prebuilt kernel at wavenumber k.
ComplexField schrodinger_scatter(const GreenKernel& kernel, const ComplexField& f,
                                 Point direction, const ScatterOptions& options = {});

// A(l,m) = h^2 sum e^{i <omega_lm, y>} f(y) u_lm(y) over the grid, with
// u_lm the total field for incidence direction (l,m)/|(l,m)| and wavenumber
// |omega_lm|; A(0,0) uses u = 1 (the zero-energy limit). Frequencies are
// solved independently (in parallel); more than 1% failures aborts.
BackscatterGrid backscatter_amplitude(const ComplexField& f, int q,
                                      const ScatterOptions& options = {});

// Real part of the band-limited Fourier synthesis of the amplitudes on the
// target grid. Requires 2q < grid.n so no lattice mode aliases.
ComplexField inverse_born(const BackscatterGrid& amplitudes, const Grid2D& grid);
// Diagnostic: L2 norm of the imaginary part discarded by inverse_born.
double inverse_born_imaginary_norm(const BackscatterGrid& amplitudes, const Grid2D& grid);

// Exact lattice analysis/synthesis used by inverse_born and the ISTA
// operator: values F(l,m) = h^2 sum_j e^{i pi <(l,m), y_j>} f_j.
std::vector<Complex> lattice_transform(const ComplexField& f, int q);
// Adjoint of lattice_transform w.r.t. plain unweighted inner products.
ComplexField lattice_transform_adjoint(const std::vector<Complex>& values, int q,
                                       const Grid2D& grid);

struct DecayRow {
    std::size_t terms = 0;
    double err_f = 0.0;
    double err_f_sq = 0.0;
    double err_fb = 0.0;
    double err_fb_sq = 0.0;
};

struct DecayReport {
    std::vector<DecayRow> rows;
    // Log-log slope of the relative error fitted over the top window
    // N in [2^(L-8), 2^(L-2)], L = floor(log2(total coefficient count)).
    double slope_f = 0.0;
    double slope_fb = 0.0;
};

// N-term approximation errors of f and f_B at N = 2^5 .. 2^(L-2).
DecayReport sparsity_decay_report(const ShearletSystemPtr& system, const ComplexField& f,
                                  const ComplexField& f_born);
void save_decay_csv(const std::string& path, const DecayReport& report);

struct FourierSample {
    int l = 0;
    int m = 0;
    Complex value;
};

// Uniformly random fraction of the (2q+1)^2 lattice positions of `amps`.
std::vector<FourierSample> sample_lattice(const BackscatterGrid& amps, double fraction,
                                          std::uint64_t seed);

struct IstaOptions {
    double lambda = 1e-4;  // l1 weight on the shearlet coefficients
    int iterations = 100;
    int power_iterations = 20; // for the stepsize 1/||K||^2
    std::uint64_t power_seed = 0x157aUL;
};

struct IstaResult {
    ComplexField f;
    std::vector<double> objective; // ||Kc - A||^2 + 2 lambda ||c||_1 per iteration
};

// Iterative soft thresholding on shearlet coefficients fitting the sampled
// lattice values; aborts if the objective increases five times in a row.
IstaResult partial_data_reconstruct(const std::vector<FourierSample>& samples,
                                    const ShearletSystemPtr& system, int q,
                                    const IstaOptions& options = {});

} // namespace shearscat

#endif
