// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Heavier experiments reuse the library defaults of the
// desk-scale configuration.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "shearscat/benchmark.hpp"
#include "shearscat/born.hpp"
#include "shearscat/special.hpp"

using namespace shearscat;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %2d: %-28s %s (%.1f s)\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename F>
void timed(int criterion, const std::string& name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, name, pass, detail, seconds);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

ComplexField ball_limited_random(const Grid2D& g, Rng& rng, double radius) {
    ComplexField f = random_field(g, rng);
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (std::hypot(g.coord(i), g.coord(j)) > radius) f(i, j) = Complex(0.0, 0.0);
    return f;
}

// ---------------------------------------------------------------- criteria

std::pair<bool, std::string> frame_exactness() {
    Grid2D g(128);
    ShearletSystemPtr sys = build_system(g, 4);
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ComplexField f = random_field(g, rng);
        worst = std::max(worst, rel_l2_error(synthesize_dual(analyze(sys, f)), f));
    }
    return {worst < 1e-10, fmt("worst reconstruction error %.3e (< 1e-10)", worst)};
}

std::pair<bool, std::string> volume_potential_oracle() {
    Grid2D g(32);
    GreenKernel kernel(g, 7.0);
    Rng rng(99);
    ComplexField x = random_field(g, rng);
    ComplexField fast = kernel.volume_potential(x);

    ComplexField direct(g);
    const double h = g.h();
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            Complex s(0.0, 0.0);
            for (int a = 0; a < g.n(); ++a)
                for (int b = 0; b < g.n(); ++b) {
                    Complex kv;
                    if (a == i && b == j) {
                        kv = kernel.self_cell();
                    } else {
                        const double r =
                            std::hypot(g.coord(i) - g.coord(a), g.coord(j) - g.coord(b));
                        kv = Complex(0.0, 0.25) * hankel0_1(7.0 * r);
                    }
                    s += kv * x(a, b);
                }
            direct(i, j) = h * h * s;
        }
    const double err = rel_l2_error(fast, direct);
    return {err < 1e-12, fmt("FFT vs direct quadrature error %.3e (< 1e-12)", err)};
}

std::pair<bool, std::string> adjoint_derivative_suite() {
    Grid2D g(32);
    const double k0 = 5.0;
    MultistaticOperator op(g, Array2DConfig(4, 0.9), k0);
    Rng rng(7);
    ComplexField f = 0.4 * ball_limited_random(g, rng, 0.6);
    ScatterOptions opts;
    opts.tol = 1e-12;
    ForwardMeasurement fm = op.forward(f, opts);

    const double h2 = g.h() * g.h();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        ComplexField h = random_field(g, rng);
        MeasurementMatrix gmat(4, op.config().arc_weight());
        for (Complex& v : gmat.entries()) v = rng.complex_gaussian();
        MeasurementMatrix dh = op.derivative(f, h, fm.total_fields, opts);
        ComplexField adj = op.adjoint(f, gmat, fm.total_fields, opts);
        const Complex lhs = hs_dot(dh, gmat);
        Complex rhs(0.0, 0.0);
        for (std::size_t k = 0; k < h.size(); ++k) rhs += h[k] * std::conj(adj[k]);
        rhs *= h2;
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }

    ComplexField dir = ball_limited_random(g, rng, 0.6);
    MeasurementMatrix deriv = op.derivative(f, dir, fm.total_fields, opts);
    auto taylor = [&](double eps) {
        ForwardMeasurement pert = op.forward(f + eps * dir, opts);
        MeasurementMatrix r = pert.matrix - fm.matrix;
        for (std::size_t k = 0; k < r.entries().size(); ++k)
            r.entries()[k] -= eps * deriv.entries()[k];
        return hs_norm(r);
    };
    const double ratio = taylor(1e-2) / taylor(1e-3);
    const bool pass = worst < 1e-8 && ratio > 80.0 && ratio < 120.0;
    return {pass, fmt("adjoint identity %.3e (< 1e-8), Taylor ratio %.1f (in [80,120])", worst,
                      ratio)};
}

std::pair<bool, std::string> reciprocity() {
    Grid2D g(64);
    MultistaticOperator op(g, Array2DConfig(8, 0.9), 10.0);
    Rng rng(55);
    ComplexField f = 0.3 * ball_limited_random(g, rng, 0.6);
    ScatterOptions opts;
    opts.tol = 1e-13;
    opts.maxiter = 2000;
    ForwardMeasurement fm = op.forward(f, opts);
    double off = 0.0, scale = 0.0;
    for (int r = 0; r < 8; ++r)
        for (int t = 0; t < 8; ++t) {
            off = std::max(off, std::abs(fm.matrix(r, t) - fm.matrix(t, r)));
            scale = std::max(scale, std::abs(fm.matrix(r, t)));
        }
    return {off / scale < 1e-12, fmt("relative asymmetry %.3e (< 1e-12)", off / scale)};
}

std::pair<bool, std::string> weak_scattering() {
    Grid2D g(64);
    ScatterOptions opts;
    opts.tol = 1e-12;

    const double k0 = 10.0;
    GreenKernel helm(g, k0);
    ComplexField shape = make_phantom(PhantomKind::CartoonBlob, g, 1.0);
    ComplexField u_inc = plane_wave(g, {1.0, 0.0}, k0);
    auto helm_rem = [&](double s) {
        ComplexField f = s * shape;
        ComplexField us = solve_scattered(helm, f, u_inc, k0, opts);
        ComplexField fu(g);
        for (std::size_t k = 0; k < fu.size(); ++k) fu[k] = f[k] * u_inc[k];
        return l2_norm(us - Complex(-k0 * k0, 0.0) * helm.volume_potential(fu));
    };
    const double helm_ratio = helm_rem(0.02) / helm_rem(0.01);

    const double ks = 4.0;
    GreenKernel schr(g, ks);
    ComplexField w_inc = plane_wave(g, {0.0, 1.0}, ks);
    auto schr_rem = [&](double s) {
        ComplexField f = s * shape;
        ComplexField u = schrodinger_scatter(schr, f, {0.0, 1.0}, opts);
        ComplexField fu(g);
        for (std::size_t k = 0; k < fu.size(); ++k) fu[k] = f[k] * w_inc[k];
        return l2_norm(u - w_inc - schr.volume_potential(fu));
    };
    const double schr_ratio = schr_rem(0.1) / schr_rem(0.05);

    const bool pass = helm_ratio > 3.2 && helm_ratio < 4.8 && schr_ratio > 3.2 && schr_ratio < 4.8;
    return {pass, fmt("two-scale ratios: Helmholtz %.2f, Schrodinger %.2f (in [3.2,4.8])",
                      helm_ratio, schr_ratio)};
}

std::pair<bool, std::string> desk_benchmark() {
    ExperimentConfig config; // desk defaults: n=128, T=8, k0=10, square 0.5
    config.out_dir.clear();
    config.seed = 1;
    BenchmarkTable table = run_benchmark(config, false);

    std::map<double, std::map<std::string, BenchmarkRow>> rows;
    bool all_converged = true;
    for (const BenchmarkRow& r : table.rows) {
        rows[r.noise_level][r.method] = r;
        if (r.status != "ok" || !r.converged || r.residual_hs > 1.6 * r.epsilon * (1 + 1e-12))
            all_converged = false;
    }
    bool shearlet_best = true, monotone = true;
    double margin_002 = 0.0;
    for (auto& [level, group] : rows) {
        const double s = group["shearlet"].rel_error;
        const double l = group["l1"].rel_error;
        const double n = group["none"].rel_error;
        if (!(s < l && s < n)) shearlet_best = false;
        if (level == 0.02) margin_002 = 1.0 - s / l;
    }
    for (const char* method : {"shearlet", "l1", "none"}) {
        // noise levels descend in the config; errors must descend with them
        double prev = -1.0;
        for (double level : {0.005, 0.02, 0.08}) {
            const double e = rows[level][method].rel_error;
            if (prev >= 0.0 && e < prev) monotone = false;
            prev = e;
        }
    }
    const bool pass = all_converged && shearlet_best && monotone && margin_002 >= 0.15;
    std::string detail = fmt("discrepancy %s, shearlet best %s, margin@0.02 %.1f%% (>= 15%%), "
                             "monotone %s",
                             all_converged ? "yes" : "NO", shearlet_best ? "yes" : "NO",
                             100.0 * margin_002, monotone ? "yes" : "NO");
    for (const BenchmarkRow& r : table.rows)
        detail += fmt("\n    %-8s noise=%.3f rel=%.4f iters=%d", r.method.c_str(), r.noise_level,
                      r.rel_error, r.iterations);
    return {pass, detail};
}

std::pair<bool, std::string> figure4_decay() {
    Grid2D g(256);
    ComplexField f = make_phantom(PhantomKind::CartoonBlob, g, 1.0);
    ScatterOptions opts;
    opts.tol = 1e-8;
    BackscatterGrid amps = backscatter_amplitude(f, 32, opts);
    ComplexField fb = inverse_born(amps, g);
    ShearletSystemPtr sys = build_system(g, 5);
    DecayReport rep = sparsity_decay_report(sys, f, fb);
    const bool pass = rep.slope_f > -1.3 && rep.slope_f < -0.7 &&
                      std::abs(rep.slope_f - rep.slope_fb) <= 0.25;
    return {pass, fmt("slope(f) %.3f (in [-1.3,-0.7]), slope(f_B) %.3f, |diff| %.3f (<= 0.25)",
                      rep.slope_f, rep.slope_fb, std::abs(rep.slope_f - rep.slope_fb))};
}

std::pair<bool, std::string> edge_persistence() {
    Grid2D g(128);
    const int q = 48, scales = 4;
    ComplexField f = make_phantom(PhantomKind::CenteredSquare, g, 0.5);
    ScatterOptions opts;
    opts.tol = 1e-8;
    BackscatterGrid amps = backscatter_amplitude(f, q, opts);
    ComplexField fb = inverse_born(amps, g);

    ShearletSystemPtr sys = build_system(g, scales);
    CoefficientSet coeffs = analyze(sys, fb);
    std::vector<bool> band = edge_band_mask(PhantomKind::CenteredSquare, g, 4);
    double inside = 0.0, total = 0.0;
    for (std::size_t p = 0; p < coeffs.plane_count(); ++p) {
        if (sys->indices()[p].scale != scales - 1) continue;
        const std::vector<Complex>& plane = coeffs.plane(p);
        for (std::size_t k = 0; k < plane.size(); ++k) {
            const double e = std::norm(plane[k]);
            total += e;
            if (band[k]) inside += e;
        }
    }
    const double fraction = inside / total;
    return {fraction >= 0.5,
            fmt("finest-scale energy fraction in 4px band %.3f (>= 0.5), solver failures %d",
                fraction, amps.failures)};
}

std::pair<bool, std::string> ista_partial_data() {
    Grid2D g(128);
    const int q = 32;
    ShearletSystemPtr sys = build_system(g, 4);
    ComplexField f = make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    BackscatterGrid amps(q);
    amps.amplitudes() = lattice_transform(f, q); // noiseless Born data

    IstaOptions opts;
    opts.lambda = 2e-5;
    opts.iterations = 200;

    IstaResult full = partial_data_reconstruct(sample_lattice(amps, 1.0, 21), sys, q, opts);
    IstaResult half = partial_data_reconstruct(sample_lattice(amps, 0.5, 21), sys, q, opts);
    const double e_full = rel_l2_error(full.f, f);
    const double e_half = rel_l2_error(half.f, f);

    bool monotone = true;
    for (std::size_t k = 1; k < half.objective.size(); ++k)
        if (half.objective[k] > half.objective[k - 1] * (1 + 1e-9)) monotone = false;

    const bool pass = e_half <= 1.5 * e_full && monotone;
    return {pass, fmt("rel errors: full %.4f, half %.4f (<= 1.5x), objective monotone %s", e_full,
                      e_half, monotone ? "yes" : "NO")};
}

std::pair<bool, std::string> benchmark_determinism() {
    ExperimentConfig config;
    config.grid_n = 64;
    config.scales = 3;
    config.transmitters = 4;
    config.noise_levels = {0.05, 0.02};
    config.maxiter = 25;
    config.freq_q = 16;
    config.out_dir.clear();
    const std::string a = benchmark_csv(run_benchmark(config, false));
    const std::string b = benchmark_csv(run_benchmark(config, false));
    return {a == b && !a.empty(),
            fmt("%zu-byte results identical across reruns: %s", a.size(), a == b ? "yes" : "NO")};
}

} // namespace

int main() {
    std::printf("shearscat acceptance suite\n");
    timed(1, "frame exactness", frame_exactness);
    timed(2, "volume potential oracle", volume_potential_oracle);
    timed(3, "adjoint/derivative suite", adjoint_derivative_suite);
    timed(4, "reciprocity", reciprocity);
    timed(5, "weak-scattering asymptotics", weak_scattering);
    timed(6, "desk benchmark", desk_benchmark);
    timed(7, "figure-4 decay", figure4_decay);
    timed(8, "edge persistence", edge_persistence);
    timed(9, "ista partial data", ista_partial_data);
    timed(10, "benchmark determinism", benchmark_determinism);

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
