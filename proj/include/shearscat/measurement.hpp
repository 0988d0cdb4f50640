// Multistatic measurement operator: contrast -> matrix of receiver samples
// per transmitter, plus its Frechet derivative, the exact discrete adjoint,
// and noise injection.
#ifndef SHEARSCAT_MEASUREMENT_HPP
#define SHEARSCAT_MEASUREMENT_HPP

#include <utility>
#include <vector>

#include "shearscat/scattering.hpp"

namespace shearscat {

// T transmitter/receiver pairs equidistributed on a circle of radius 0.9,
// coincident incidence and measurement curves.
struct Array2DConfig {
    int transmitter_count = 8;
    double radius = 0.9;

    Array2DConfig() = default;
    explicit Array2DConfig(int T, double rho = 0.9);

    Point position(int t) const;
    // Arc length per device; both HS inner-product factors carry it.
    double arc_weight() const;
};

// Row = receiver, column = transmitter. Carries the arc weight so the
// Hilbert-Schmidt norm is self-contained.
class MeasurementMatrix {
public:
    MeasurementMatrix(int T, double arc_weight)
        : size_(T), weight_(arc_weight), entries_(static_cast<std::size_t>(T) * T) {}

    int size() const { return size_; }
    double arc_weight() const { return weight_; }
    Complex& operator()(int r, int t) { return entries_[static_cast<std::size_t>(r) * size_ + t]; }
    Complex operator()(int r, int t) const { return entries_[static_cast<std::size_t>(r) * size_ + t]; }
    std::vector<Complex>& entries() { return entries_; }
    const std::vector<Complex>& entries() const { return entries_; }

private:
    int size_;
    double weight_;
    std::vector<Complex> entries_;
};

double hs_norm(const MeasurementMatrix& m);
Complex hs_dot(const MeasurementMatrix& a, const MeasurementMatrix& b);
MeasurementMatrix operator-(const MeasurementMatrix& a, const MeasurementMatrix& b);

struct ForwardMeasurement {
    MeasurementMatrix matrix;
    // Total fields u_t = u^inc_t + u^s_t, cached for derivative/adjoint.
    std::vector<ComplexField> total_fields;
};

// Immutable context bundling the Green kernel, array geometry and the
// point-source incident fields; safe to share across threads.
class MultistaticOperator {
public:
    MultistaticOperator(const Grid2D& grid, const Array2DConfig& config, double k0);

    const Grid2D& grid() const { return kernel_.grid(); }
    const Array2DConfig& config() const { return config_; }
    const GreenKernel& kernel() const { return kernel_; }
    double wavenumber() const { return k0_; }
    const ComplexField& source(int t) const { return sources_[static_cast<std::size_t>(t)]; }

    // Entry (r,t) = -k0^2 h^2 sum_j G(x_r, y_j) f_j u_j with u the total
    // field for transmitter t. Per-transmitter solves run in parallel.
    ForwardMeasurement forward(const ComplexField& f, const ScatterOptions& options = {},
                               const std::vector<ComplexField>* warm_start = nullptr) const;

    // Measurement of the linearized scattered field in direction eta.
    MeasurementMatrix derivative(const ComplexField& f, const ComplexField& eta,
                                 const std::vector<ComplexField>& total_fields,
                                 const ScatterOptions& options = {}) const;

    // Exact adjoint of `derivative` with respect to the arc-weighted HS
    // inner product and the h^2-weighted field inner product; one
    // conjugate-transposed solve per receiver.
    ComplexField adjoint(const ComplexField& f, const MeasurementMatrix& residual,
                         const std::vector<ComplexField>& total_fields,
                         const ScatterOptions& options = {}) const;

private:
    Array2DConfig config_;
    double k0_;
    GreenKernel kernel_;
    std::vector<ComplexField> sources_;
};

// Adds iid complex Gaussian noise scaled so hs_norm(E) = rel_level * hs_norm(m).
// Returns the noisy matrix and the absolute noise level epsilon. The draw
// depends on the seed only; rel_level enters through the scaling.
std::pair<MeasurementMatrix, double> add_noise(const MeasurementMatrix& m, double rel_level,
                                               std::uint64_t seed);

// CSV with header carrying T, rho, k0, epsilon and rows receiver,transmitter,re,im.
void save_measurement_csv(const std::string& path, const MeasurementMatrix& m,
                          const Array2DConfig& config, double k0, double epsilon);

} // namespace shearscat

#endif
