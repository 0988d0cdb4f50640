#include "shearscat/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shearscat/phantom.hpp"

namespace shearscat {

RegularizerKind parse_regularizer_kind(const std::string& name) {
    if (name == "shearlet") return RegularizerKind::Shearlet;
    if (name == "l1" || name == "direct-lp") return RegularizerKind::DirectLp;
    if (name == "none") return RegularizerKind::None;
    throw std::invalid_argument("unknown regularizer: " + name);
}

std::string to_string(RegularizerKind kind) {
    switch (kind) {
        case RegularizerKind::Shearlet: return "shearlet";
        case RegularizerKind::DirectLp: return "l1";
        case RegularizerKind::None: return "none";
    }
    throw std::invalid_argument("unknown regularizer kind");
}

void RegularizerSpec::validate() const {
    if (p < 1.0 || p > 2.0)
        throw std::invalid_argument("RegularizerSpec: p must lie in [1,2]");
    if (kind != RegularizerKind::None && !(alpha0 > 0.0))
        throw std::invalid_argument("RegularizerSpec: alpha0 must be positive");
    if (kind == RegularizerKind::Shearlet && !system)
        throw std::invalid_argument("RegularizerSpec: shearlet regularizer needs a system");
}

namespace {

// Solve x + theta x^(p-1) = a for x in [0,a], a >= 0, by bisection.
double prox_modulus(double a, double theta, double p) {
    if (a == 0.0) return 0.0;
    double lo = 0.0, hi = a;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = mid + theta * std::pow(mid, p - 1.0) - a;
        if (val > 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, a)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Complex prox_lp(Complex b, double theta, double p) {
    if (theta < 0.0) throw std::invalid_argument("prox_lp: theta must be >= 0");
    if (p < 1.0 || p > 2.0) throw std::invalid_argument("prox_lp: p must lie in [1,2]");
    if (theta == 0.0) return b;
    const double mag = std::abs(b);
    if (mag == 0.0) return b;
    if (p == 1.0) {
        if (mag <= theta) return {0.0, 0.0};
        return b * ((mag - theta) / mag);
    }
    return b * (prox_modulus(mag, theta, p) / mag);
}

void prox_lp_in_place(std::span<Complex> values, double theta, double p) {
    if (theta < 0.0) throw std::invalid_argument("prox_lp: theta must be >= 0");
    if (p < 1.0 || p > 2.0) throw std::invalid_argument("prox_lp: p must lie in [1,2]");
    if (theta == 0.0) return;
    if (p == 1.0) {
        for (Complex& v : values) {
            const double mag = std::abs(v);
            v = (mag <= theta) ? Complex(0.0, 0.0) : v * ((mag - theta) / mag);
        }
    } else {
        for (Complex& v : values) {
            const double mag = std::abs(v);
            if (mag > 0.0) v *= prox_modulus(mag, theta, p) / mag;
        }
    }
}

double bb_stepsize(const ComplexField& df, const ComplexField& dg, double fallback,
                   double mu_min, double mu_max) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < df.size(); ++k) {
        num += std::norm(df[k]);
        den += (df[k] * std::conj(dg[k])).real();
    }
    if (!(den > 0.0) || num == 0.0) return fallback;
    return std::clamp(num / den, mu_min, mu_max);
}

ComplexField support_mask(const Grid2D& grid) {
    ComplexField mask(grid);
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j)
            if (std::hypot(grid.coord(i), grid.coord(j)) <= support_radius)
                mask(i, j) = Complex(1.0, 0.0);
    return mask;
}

namespace {

void mask_in_place(ComplexField& f, const ComplexField& mask) {
    for (std::size_t k = 0; k < f.size(); ++k) f[k] *= mask[k];
}

ComplexField apply_update(const ComplexField& step, const RegularizerSpec& reg, double theta,
                          const ComplexField& mask) {
    ComplexField next(step.grid());
    switch (reg.kind) {
        case RegularizerKind::Shearlet: {
            CoefficientSet coeffs = analyze(reg.system, step);
            for (std::size_t p = 0; p < coeffs.plane_count(); ++p)
                prox_lp_in_place(coeffs.plane(p), theta, reg.p);
            next = synthesize_dual(coeffs);
            break;
        }
        case RegularizerKind::DirectLp: {
            next = step;
            prox_lp_in_place(next.values(), theta, reg.p);
            break;
        }
        case RegularizerKind::None:
            next = step;
            break;
    }
    mask_in_place(next, mask);
    return next;
}

ComplexField one_step(const MultistaticOperator& op, const ComplexField& f,
                      const MeasurementMatrix& data, const RegularizerSpec& reg, double alpha,
                      double mu, const ScatterOptions& solver) {
    reg.validate();
    if (!(mu > 0.0)) throw std::invalid_argument("landweber step: mu must be positive");
    const ComplexField mask = support_mask(f.grid());
    ForwardMeasurement fm = op.forward(f, solver);
    MeasurementMatrix residual = fm.matrix - data;
    ComplexField grad = op.adjoint(f, residual, fm.total_fields, solver);
    mask_in_place(grad, mask);
    ComplexField step = f - mu * grad;
    return apply_update(step, reg, alpha * mu, mask);
}

double penalty_value(const ComplexField& f, const RegularizerSpec& reg, double alpha) {
    if (reg.kind == RegularizerKind::None || alpha == 0.0) return 0.0;
    double s = 0.0;
    if (reg.kind == RegularizerKind::DirectLp) {
        const double h2 = f.grid().h() * f.grid().h();
        for (const Complex& v : f.values()) s += std::pow(std::abs(v), reg.p);
        s *= h2;
    } else {
        CoefficientSet coeffs = analyze(reg.system, f);
        for (std::size_t p = 0; p < coeffs.plane_count(); ++p)
            for (const Complex& v : coeffs.plane(p)) s += std::pow(std::abs(v), reg.p);
    }
    return alpha / reg.p * s;
}

} // namespace

ComplexField landweber_step_shearlet(const MultistaticOperator& op, const ComplexField& f,
                                     const MeasurementMatrix& data, const RegularizerSpec& reg,
                                     double alpha, double mu, const ScatterOptions& solver) {
    if (reg.kind != RegularizerKind::Shearlet)
        throw std::invalid_argument("landweber_step_shearlet: wrong regularizer kind");
    return one_step(op, f, data, reg, alpha, mu, solver);
}

ComplexField landweber_step_direct(const MultistaticOperator& op, const ComplexField& f,
                                   const MeasurementMatrix& data, const RegularizerSpec& reg,
                                   double alpha, double mu, const ScatterOptions& solver) {
    if (reg.kind == RegularizerKind::Shearlet)
        throw std::invalid_argument("landweber_step_direct: wrong regularizer kind");
    return one_step(op, f, data, reg, alpha, mu, solver);
}

InversionResult run_inversion(const MultistaticOperator& op, const MeasurementMatrix& data,
                              double eps, const RegularizerSpec& reg,
                              const InversionOptions& options, const ComplexField* reference) {
    reg.validate();
    const Grid2D& grid = op.grid();
    const ComplexField mask = support_mask(grid);

    const double data_norm = hs_norm(data);
    const double rel_level = (eps > 0.0 && data_norm > 0.0) ? eps / data_norm : 0.0;
    const double alpha = (reg.kind == RegularizerKind::None) ? 0.0 : reg.alpha0 * rel_level;

    InversionResult result{ComplexField(grid), {}, false, alpha};
    ComplexField f(grid);
    ComplexField prev_f(grid), prev_grad(grid);
    bool have_prev = false;
    double mu = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<ComplexField> warm;

    for (int it = 0;; ++it) {
        ForwardMeasurement fm = op.forward(f, options.solver, warm.empty() ? nullptr : &warm);
        MeasurementMatrix residual = fm.matrix - data;
        const double res_norm = hs_norm(residual);

        IterationRecord rec;
        rec.iteration = it;
        rec.residual_hs = res_norm;
        rec.rel_error = reference ? rel_l2_error(f, *reference)
                                  : std::numeric_limits<double>::quiet_NaN();
        rec.mu = mu;
        rec.objective = 0.5 * res_norm * res_norm + penalty_value(f, reg, alpha);
        result.history.push_back(rec);

        if (res_norm < best_residual) {
            best_residual = res_norm;
            result.f = f;
        }
        if (eps > 0.0 && res_norm <= options.tau * eps) {
            result.converged = true;
            result.f = f;
            return result;
        }
        if (it >= options.maxiter) {
            result.converged = false;
            return result; // lowest-residual iterate
        }

        ComplexField grad = op.adjoint(f, residual, fm.total_fields, options.solver);
        mask_in_place(grad, mask);

        if (!have_prev) {
            // mu0 = 1 / ||N'(f0)||^2, estimated by power iteration on the
            // normal operator restricted to B_R.
            Rng rng(options.power_seed);
            ComplexField v = random_field(grid, rng);
            mask_in_place(v, mask);
            double lambda = 1.0;
            for (int p = 0; p < options.power_iterations; ++p) {
                double vn = l2_norm(v);
                if (vn == 0.0) break;
                v = (1.0 / vn) * v;
                MeasurementMatrix w = op.derivative(f, v, fm.total_fields, options.solver);
                v = op.adjoint(f, w, fm.total_fields, options.solver);
                mask_in_place(v, mask);
                lambda = l2_norm(v);
            }
            mu = (lambda > 0.0) ? 1.0 / lambda : 1.0;
        } else {
            mu = bb_stepsize(f - prev_f, grad - prev_grad, mu);
        }

        prev_f = f;
        prev_grad = grad;
        have_prev = true;

        ComplexField step = f - mu * grad;
        f = apply_update(step, reg, alpha * mu, mask);
        if (options.real_projection) {
            for (Complex& v : f.values()) v = Complex(std::max(v.real(), 0.0), 0.0);
        }
        warm = std::move(fm.total_fields);
    }
}

} // namespace shearscat
