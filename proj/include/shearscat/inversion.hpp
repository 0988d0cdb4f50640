// Regularized reconstruction: thresholded Landweber iterations with
// Barzilai-Borwein steps and discrepancy stopping, in three flavours:
// shearlet-coefficient lp penalty, direct Lp penalty on the contrast, and
// no penalty. Iterates live in L2 of the support ball B_R.
#ifndef SHEARSCAT_INVERSION_HPP
#define SHEARSCAT_INVERSION_HPP

#include "shearscat/measurement.hpp"
#include "shearscat/shearlet.hpp"

namespace shearscat {

enum class RegularizerKind { Shearlet, DirectLp, None };

RegularizerKind parse_regularizer_kind(const std::string& name);
std::string to_string(RegularizerKind kind);

struct RegularizerSpec {
    RegularizerKind kind = RegularizerKind::Shearlet;
    double p = 1.0;        // lp exponent in [1,2]
    double alpha0 = 0.1;   // base weight; effective alpha = alpha0 * relative noise level
    ShearletSystemPtr system; // required iff kind == Shearlet

    void validate() const;
};

// (I + theta J_p)^{-1} applied entrywise: soft thresholding at p = 1, the
// scalar monotone equation x + theta x^{p-1} = |b| solved by bisection for
// p in (1,2]; complex entries shrink in modulus and keep their phase.
Complex prox_lp(Complex b, double theta, double p);
void prox_lp_in_place(std::span<Complex> values, double theta, double p);

// mu = <df,df> / Re<df,dg>, clamped to [mu_min, mu_max]; returns `fallback`
// when the curvature estimate is not positive.
double bb_stepsize(const ComplexField& df, const ComplexField& dg, double fallback,
                   double mu_min = 1e-6, double mu_max = 1e3);

struct InversionOptions {
    double tau = 1.6;
    int maxiter = 500;
    ScatterOptions solver{};
    // Clip iterates to real nonnegative values (off: iterate as printed).
    bool real_projection = false;
    std::uint64_t power_seed = 0x5eedUL;
    int power_iterations = 5;
};

struct IterationRecord {
    int iteration = 0;
    double residual_hs = 0.0;
    double rel_error = 0.0; // against the reference contrast when given, else NaN
    double mu = 0.0;        // step used to reach this iterate (0 at iteration 0)
    double objective = 0.0; // 0.5 residual^2 + (alpha/p) penalty
};

struct InversionResult {
    ComplexField f;
    std::vector<IterationRecord> history;
    bool converged = false; // discrepancy criterion met
    double alpha = 0.0;     // effective regularization weight used
};

// Single full iteration f_n -> f_{n+1} at a fixed stepsize; exposed for the
// step-level tests. alpha is the effective weight (already scaled by the
// noise level).
ComplexField landweber_step_shearlet(const MultistaticOperator& op, const ComplexField& f,
                                     const MeasurementMatrix& data, const RegularizerSpec& reg,
                                     double alpha, double mu, const ScatterOptions& solver = {});
ComplexField landweber_step_direct(const MultistaticOperator& op, const ComplexField& f,
                                   const MeasurementMatrix& data, const RegularizerSpec& reg,
                                   double alpha, double mu, const ScatterOptions& solver = {});

// Full reconstruction from f0 = 0 until ||N(f_n) - data|| <= tau * eps or
// maxiter; eps <= 0 disables the discrepancy test (fixed iteration budget).
// On maxiter the lowest-residual iterate is returned with converged=false.
InversionResult run_inversion(const MultistaticOperator& op, const MeasurementMatrix& data,
                              double eps, const RegularizerSpec& reg,
                              const InversionOptions& options = {},
                              const ComplexField* reference = nullptr);

// Indicator of the support ball B_R on the grid.
ComplexField support_mask(const Grid2D& grid);

} // namespace shearscat

#endif
