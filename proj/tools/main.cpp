// Command line driver: phantom | forward | invert | born | sparsity | benchmark.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "shearscat/benchmark.hpp"
#include "shearscat/born.hpp"
#include "shearscat/field_io.hpp"

using namespace shearscat;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

ExperimentConfig load_config(const GlobalArgs& g) {
    ExperimentConfig config = g.config_path.empty() ? ExperimentConfig{} : parse_config(g.config_path);
    if (g.seed_set) config.seed = g.seed;
    if (!g.out_dir.empty()) config.out_dir = g.out_dir;
    return config;
}

void ensure_out_dir(const ExperimentConfig& config) {
    if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);
}

void write_amplitude_csv(const std::string& path, const BackscatterGrid& amps) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "l,m,re,im\n";
    out.precision(17);
    for (int l = -amps.q(); l <= amps.q(); ++l)
        for (int m = -amps.q(); m <= amps.q(); ++m)
            out << l << "," << m << "," << amps(l, m).real() << "," << amps(l, m).imag() << "\n";
}

BackscatterGrid born_pipeline(const ExperimentConfig& config, ComplexField& truth_out,
                              ComplexField& fb_out) {
    const Grid2D grid(config.grid_n);
    truth_out = make_phantom(config.phantom(), grid);
    ScatterOptions opts;
    opts.tol = config.solver_tol;
    BackscatterGrid amps = backscatter_amplitude(truth_out, config.freq_q, opts);
    fb_out = inverse_born(amps, grid);
    return amps;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D inverse medium scattering with shearlet sparsity regularization"};
    app.require_subcommand(1);
    app.fallthrough(); // let global flags appear after the subcommand

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON experiment config");
    app.add_option("--out-dir", g.out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (overrides config)");
    app.add_option("--threads", g.threads, "worker thread count (0 = hardware)");

    auto* cmd_phantom = app.add_subcommand("phantom", "write a phantom field and image");
    auto* cmd_forward = app.add_subcommand("forward", "scattered fields and measurements for a phantom");
    auto* cmd_invert = app.add_subcommand("invert", "single regularized reconstruction");
    auto* cmd_born = app.add_subcommand("born", "backscattering amplitudes and inverse Born reconstruction");
    auto* cmd_sparsity = app.add_subcommand("sparsity", "N-term decay table for phantom and its inverse Born");
    auto* cmd_benchmark = app.add_subcommand("benchmark", "regularizer x noise-level comparison matrix");

    int grid_n = 0, transmitters = 0, scales = 0, maxiter = 0, freq_q = 0;
    double k0 = 0.0, amplitude = -1.0, noise = -1.0, tau = 0.0, alpha0 = 0.0, p_exp = 0.0;
    std::string phantom_kind, reg_kind, out_path = "phantom";
    for (CLI::App* cmd : {cmd_phantom, cmd_forward, cmd_invert, cmd_born, cmd_sparsity}) {
        cmd->add_option("--grid-n", grid_n, "samples per axis");
        cmd->add_option("--phantom", phantom_kind, "cartoon-blob | centered-square | custom-mask");
        cmd->add_option("--amplitude", amplitude, "contrast amplitude");
    }
    cmd_phantom->add_option("--out", out_path, "output path prefix");
    for (CLI::App* cmd : {cmd_forward, cmd_invert})
        cmd->add_option("--wavenumber", k0, "wavenumber k0");
    for (CLI::App* cmd : {cmd_forward, cmd_invert})
        cmd->add_option("--transmitters", transmitters, "device count T");
    cmd_invert->add_option("--reg", reg_kind, "shearlet | l1 | none");
    cmd_invert->add_option("--p", p_exp, "penalty exponent in [1,2]");
    cmd_invert->add_option("--alpha0", alpha0, "base regularization weight");
    cmd_invert->add_option("--tau", tau, "discrepancy factor");
    cmd_invert->add_option("--noise", noise, "relative noise level");
    cmd_invert->add_option("--scales", scales, "shearlet scale count");
    cmd_invert->add_option("--maxiter", maxiter, "iteration cap");
    for (CLI::App* cmd : {cmd_born, cmd_sparsity}) {
        cmd->add_option("--freq-q", freq_q, "backscattering lattice half-width");
        cmd->add_option("--scales", scales, "shearlet scale count for the decay table");
    }

    CLI11_PARSE(app, argc, argv);
    g.seed_set = seed_opt->count() > 0;

#ifdef _OPENMP
    if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

    try {
        ExperimentConfig config = load_config(g);
        if (grid_n > 0) config.grid_n = grid_n;
        if (!phantom_kind.empty()) config.phantom_kind = phantom_kind;
        if (amplitude >= 0.0) config.phantom_amplitude = amplitude;
        if (k0 > 0.0) config.k0 = k0;
        if (transmitters > 0) config.transmitters = transmitters;
        if (scales > 0) config.scales = scales;
        if (maxiter > 0) config.maxiter = maxiter;
        if (freq_q > 0) config.freq_q = freq_q;
        if (tau > 0.0) config.tau = tau;
        if (!reg_kind.empty()) config.regularizer.kind = reg_kind;
        if (p_exp > 0.0) config.regularizer.p = p_exp;
        if (alpha0 > 0.0) config.regularizer.alpha0 = alpha0;
        config.validate();

        if (cmd_phantom->parsed()) {
            const Grid2D grid(config.grid_n);
            ComplexField f = make_phantom(config.phantom(), grid);
            save_field(out_path + ".ssf", f);
            save_pgm(out_path + ".pgm", f);
            std::printf("phantom %s n=%d amplitude=%g -> %s.{ssf,pgm}\n",
                        config.phantom_kind.c_str(), config.grid_n, config.phantom_amplitude,
                        out_path.c_str());
        } else if (cmd_forward->parsed()) {
            ensure_out_dir(config);
            const Grid2D grid(config.grid_n);
            ComplexField f = make_phantom(config.phantom(), grid);
            const Array2DConfig array(config.transmitters, config.array_radius);
            const MultistaticOperator op(grid, array, config.k0);
            ScatterOptions opts;
            opts.tol = config.forward_tol;
            ForwardMeasurement fm = op.forward(f, opts);
            for (int t = 0; t < config.transmitters; ++t) {
                ComplexField us = fm.total_fields[static_cast<std::size_t>(t)] - op.source(t);
                char name[64];
                std::snprintf(name, sizeof name, "/us_t%03d.ssf", t);
                save_field(config.out_dir + name, us);
            }
            save_measurement_csv(config.out_dir + "/measurement.csv", fm.matrix, array, config.k0, 0.0);
            std::printf("forward: T=%d k0=%g -> %s\n", config.transmitters, config.k0,
                        config.out_dir.c_str());
        } else if (cmd_invert->parsed()) {
            ensure_out_dir(config);
            const double level = noise >= 0.0 ? noise : config.noise_levels.front();
            const Grid2D grid(config.grid_n);
            ComplexField truth = make_phantom(config.phantom(), grid);
            const Array2DConfig array(config.transmitters, config.array_radius);
            const MultistaticOperator op(grid, array, config.k0);
            ScatterOptions data_opts;
            data_opts.tol = config.forward_tol;
            ForwardMeasurement clean = op.forward(truth, data_opts);
            auto [noisy, eps] = add_noise(clean.matrix, level, config.seed);

            ShearletSystemPtr system;
            if (config.regularizer.kind == "shearlet")
                system = build_system(grid, config.scales);
            RegularizerSpec reg = config.regularizer_spec(system);
            InversionOptions inv_opts;
            inv_opts.tau = config.tau;
            inv_opts.maxiter = config.maxiter;
            inv_opts.solver.tol = config.solver_tol;
            inv_opts.real_projection = config.real_projection;
            InversionResult res = run_inversion(op, noisy, eps, reg, inv_opts, &truth);

            save_history_csv(config.out_dir + "/history.csv", res.history);
            save_field(config.out_dir + "/recon.ssf", res.f);
            save_pgm(config.out_dir + "/recon.pgm", res.f);
            save_field(config.out_dir + "/truth.ssf", truth);
            save_pgm(config.out_dir + "/truth.pgm", truth);
            save_config(config.out_dir + "/config.json", config);
            std::printf("invert reg=%s noise=%g: rel_error=%.6f iterations=%d converged=%d\n",
                        config.regularizer.kind.c_str(), level,
                        rel_l2_error(res.f, truth),
                        static_cast<int>(res.history.size()) - 1, res.converged ? 1 : 0);
        } else if (cmd_born->parsed() || cmd_sparsity->parsed()) {
            ensure_out_dir(config);
            ComplexField truth{Grid2D(config.grid_n)}, fb{Grid2D(config.grid_n)};
            BackscatterGrid amps = born_pipeline(config, truth, fb);
            ShearletSystemPtr system = build_system(truth.grid(), config.scales);
            DecayReport report = sparsity_decay_report(system, truth, fb);
            if (cmd_born->parsed()) {
                write_amplitude_csv(config.out_dir + "/amplitudes.csv", amps);
                save_field(config.out_dir + "/fb.ssf", fb);
                save_pgm(config.out_dir + "/fb.pgm", fb);
                save_field(config.out_dir + "/truth.ssf", truth);
                save_pgm(config.out_dir + "/truth.pgm", truth);
            }
            save_decay_csv(config.out_dir + "/decay.csv", report);
            std::printf("born q=%d: %d solver failures, rel_l2(fb vs truth)=%.4f, "
                        "slope_f=%.3f slope_fb=%.3f -> %s\n",
                        config.freq_q, amps.failures, rel_l2_error(fb, truth), report.slope_f,
                        report.slope_fb, config.out_dir.c_str());
        } else if (cmd_benchmark->parsed()) {
            BenchmarkTable table = run_benchmark(config);
            std::fputs(benchmark_csv(table).c_str(), stdout);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
