#include "shearscat/measurement.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "shearscat/phantom.hpp"

namespace shearscat {

Array2DConfig::Array2DConfig(int T, double rho) : transmitter_count(T), radius(rho) {
    if (T < 1) throw std::invalid_argument("Array2DConfig: need at least one transmitter");
    if (!(rho > support_radius))
        throw std::invalid_argument("Array2DConfig: devices must lie outside the support ball");
}

Point Array2DConfig::position(int t) const {
    const double angle = 2.0 * std::numbers::pi * t / transmitter_count;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double Array2DConfig::arc_weight() const {
    return 2.0 * std::numbers::pi * radius / transmitter_count;
}

double hs_norm(const MeasurementMatrix& m) {
    double s = 0.0;
    for (const Complex& z : m.entries()) s += std::norm(z);
    return m.arc_weight() * std::sqrt(s);
}

Complex hs_dot(const MeasurementMatrix& a, const MeasurementMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hs_dot: size mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        s += a.entries()[k] * std::conj(b.entries()[k]);
    return a.arc_weight() * a.arc_weight() * s;
}

MeasurementMatrix operator-(const MeasurementMatrix& a, const MeasurementMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix -: size mismatch");
    MeasurementMatrix out = a;
    for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] -= b.entries()[k];
    return out;
}

MultistaticOperator::MultistaticOperator(const Grid2D& grid, const Array2DConfig& config, double k0)
    : config_(config), k0_(k0), kernel_(grid, k0) {
    sources_.reserve(static_cast<std::size_t>(config.transmitter_count));
    for (int t = 0; t < config.transmitter_count; ++t)
        sources_.push_back(point_source(kernel_, config.position(t)));
}

ForwardMeasurement MultistaticOperator::forward(const ComplexField& f, const ScatterOptions& options,
                                                const std::vector<ComplexField>* warm_start) const {
    const int T = config_.transmitter_count;
    const double h2 = grid().h() * grid().h();
    const double k2 = k0_ * k0_;
    if (warm_start && static_cast<int>(warm_start->size()) != T)
        throw std::invalid_argument("forward: warm start count mismatch");

    ForwardMeasurement out{MeasurementMatrix(T, config_.arc_weight()), {}};
    out.total_fields.assign(static_cast<std::size_t>(T), ComplexField(grid()));

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < T; ++t) {
        const ComplexField& g = sources_[static_cast<std::size_t>(t)];
        // Warm starts carry the previous total fields; the solve wants a
        // guess for the scattered part.
        ComplexField guess(grid());
        const ComplexField* guess_ptr = nullptr;
        if (warm_start) {
            guess = (*warm_start)[static_cast<std::size_t>(t)] - g;
            guess_ptr = &guess;
        }
        ComplexField us = solve_scattered(kernel_, f, g, k0_, options, guess_ptr);
        out.total_fields[static_cast<std::size_t>(t)] = us + g;
    }
    for (int t = 0; t < T; ++t) {
        const ComplexField& u = out.total_fields[static_cast<std::size_t>(t)];
        for (int r = 0; r < T; ++r) {
            const ComplexField& g = sources_[static_cast<std::size_t>(r)];
            Complex s(0.0, 0.0);
            for (std::size_t j = 0; j < u.size(); ++j) s += g[j] * f[j] * u[j];
            out.matrix(r, t) = -k2 * h2 * s;
        }
    }
    return out;
}

MeasurementMatrix MultistaticOperator::derivative(const ComplexField& f, const ComplexField& eta,
                                                  const std::vector<ComplexField>& total_fields,
                                                  const ScatterOptions& options) const {
    const int T = config_.transmitter_count;
    if (static_cast<int>(total_fields.size()) != T)
        throw std::invalid_argument("derivative: cached field count mismatch");
    const double h2 = grid().h() * grid().h();
    const double k2 = k0_ * k0_;

    MeasurementMatrix out(T, config_.arc_weight());
    std::vector<ComplexField> linearized(static_cast<std::size_t>(T), ComplexField(grid()));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < T; ++t) {
        const ComplexField& u = total_fields[static_cast<std::size_t>(t)];
        ComplexField eta_u(grid());
        for (std::size_t j = 0; j < eta_u.size(); ++j) eta_u[j] = eta[j] * u[j];
        ComplexField rhs = Complex(-k2, 0.0) * kernel_.volume_potential(eta_u);
        ComplexField v = solve_forward_system(kernel_, f, rhs, k0_, options);
        // Measurement reads eta.u_t + f.v, the linearized contrast current.
        for (std::size_t j = 0; j < v.size(); ++j) eta_u[j] += f[j] * v[j];
        linearized[static_cast<std::size_t>(t)] = std::move(eta_u);
    }
    for (int t = 0; t < T; ++t)
        for (int r = 0; r < T; ++r) {
            const ComplexField& g = sources_[static_cast<std::size_t>(r)];
            const ComplexField& w = linearized[static_cast<std::size_t>(t)];
            Complex s(0.0, 0.0);
            for (std::size_t j = 0; j < w.size(); ++j) s += g[j] * w[j];
            out(r, t) = -k2 * h2 * s;
        }
    return out;
}

ComplexField MultistaticOperator::adjoint(const ComplexField& f, const MeasurementMatrix& residual,
                                          const std::vector<ComplexField>& total_fields,
                                          const ScatterOptions& options) const {
    const int T = config_.transmitter_count;
    if (static_cast<int>(total_fields.size()) != T)
        throw std::invalid_argument("adjoint: cached field count mismatch");
    if (residual.size() != T)
        throw std::invalid_argument("adjoint: matrix size mismatch");
    const double k2 = k0_ * k0_;

    // Receiver-side total fields via the transposed system: with
    // y_r = (I + k0^2 M_f V)^{-1} (f g_r), the field g_r - k0^2 V y_r equals
    // the total field radiated from receiver r. Conjugations below make the
    // whole chain the conjugate-transpose of the derivative.
    std::vector<ComplexField> receiver_fields(static_cast<std::size_t>(T), ComplexField(grid()));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < T; ++r) {
        const ComplexField& g = sources_[static_cast<std::size_t>(r)];
        ComplexField fg(grid());
        for (std::size_t j = 0; j < fg.size(); ++j) fg[j] = f[j] * g[j];
        ComplexField y = solve_transposed_system(kernel_, f, fg, k0_, options);
        ComplexField vy = kernel_.volume_potential(y);
        ComplexField& ur = receiver_fields[static_cast<std::size_t>(r)];
        for (std::size_t j = 0; j < ur.size(); ++j) ur[j] = g[j] - k2 * vy[j];
    }

    const double w2 = config_.arc_weight() * config_.arc_weight();
    ComplexField chi(grid());
    for (int t = 0; t < T; ++t) {
        ComplexField s(grid());
        for (int r = 0; r < T; ++r) {
            const Complex grt = residual(r, t);
            const ComplexField& ur = receiver_fields[static_cast<std::size_t>(r)];
            for (std::size_t j = 0; j < s.size(); ++j) s[j] += grt * std::conj(ur[j]);
        }
        const ComplexField& ut = total_fields[static_cast<std::size_t>(t)];
        for (std::size_t j = 0; j < chi.size(); ++j) chi[j] += std::conj(ut[j]) * s[j];
    }
    for (std::size_t j = 0; j < chi.size(); ++j) chi[j] *= -k2 * w2;
    return chi;
}

std::pair<MeasurementMatrix, double> add_noise(const MeasurementMatrix& m, double rel_level,
                                               std::uint64_t seed) {
    if (rel_level < 0.0) throw std::invalid_argument("add_noise: negative level");
    if (rel_level == 0.0) return {m, 0.0};
    MeasurementMatrix noise(m.size(), m.arc_weight());
    Rng rng(seed);
    for (Complex& z : noise.entries()) z = rng.complex_gaussian();
    const double target = rel_level * hs_norm(m);
    const double scale = target / hs_norm(noise);
    MeasurementMatrix out = m;
    for (std::size_t k = 0; k < out.entries().size(); ++k)
        out.entries()[k] += scale * noise.entries()[k];
    return {out, target};
}

void save_measurement_csv(const std::string& path, const MeasurementMatrix& m,
                          const Array2DConfig& config, double k0, double epsilon) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_measurement_csv: cannot open " + path);
    out << "# T=" << config.transmitter_count << " rho=" << config.radius
        << " k0=" << k0 << " eps=" << epsilon << "\n";
    out << "receiver,transmitter,re,im\n";
    out.precision(17);
    for (int r = 0; r < m.size(); ++r)
        for (int t = 0; t < m.size(); ++t)
            out << r << "," << t << "," << m(r, t).real() << "," << m(r, t).imag() << "\n";
    if (!out) throw std::runtime_error("save_measurement_csv: write failed for " + path);
}

} // namespace shearscat
