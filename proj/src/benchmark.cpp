#include "shearscat/benchmark.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shearscat/field_io.hpp"

namespace shearscat {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string level_tag(double v) {
    std::string s = format_double(v);
    for (char& ch : s)
        if (ch == '.' || ch == '-' || ch == '+') ch = '_';
    return s;
}

} // namespace

BenchmarkTable run_benchmark(const ExperimentConfig& config, bool write_outputs) {
    config.validate();
    const Grid2D grid(config.grid_n);
    const ComplexField truth = make_phantom(config.phantom(), grid);
    const Array2DConfig array(config.transmitters, config.array_radius);
    const MultistaticOperator op(grid, array, config.k0);
    ShearletSystemPtr system = build_system(grid, config.scales);

    ScatterOptions data_opts;
    data_opts.tol = config.forward_tol;
    const ForwardMeasurement clean = op.forward(truth, data_opts);

    InversionOptions inv_opts;
    inv_opts.tau = config.tau;
    inv_opts.maxiter = config.maxiter;
    inv_opts.solver.tol = config.solver_tol;
    inv_opts.real_projection = config.real_projection;

    if (write_outputs && !config.out_dir.empty())
        std::filesystem::create_directories(config.out_dir);

    BenchmarkTable table;
    for (double level : config.noise_levels) {
        auto [noisy, eps] = add_noise(clean.matrix, level, config.seed);
        for (const char* method : {"shearlet", "l1", "none"}) {
            RegularizerSpec reg;
            reg.kind = parse_regularizer_kind(method);
            reg.p = 1.0;
            reg.system = (reg.kind == RegularizerKind::Shearlet) ? system : nullptr;
            reg.alpha0 = (reg.kind == RegularizerKind::Shearlet) ? config.alpha0_shearlet
                                                                 : config.alpha0_l1;
            if (reg.kind == RegularizerKind::None) reg.alpha0 = 1.0; // unused

            BenchmarkRow row;
            row.method = method;
            row.noise_level = level;
            row.epsilon = eps;
            try {
                InversionResult res = run_inversion(op, noisy, eps, reg, inv_opts, &truth);
                row.rel_error = rel_l2_error(res.f, truth);
                row.iterations = static_cast<int>(res.history.size()) - 1;
                row.residual_hs = res.history.back().residual_hs;
                row.converged = res.converged;
                if (write_outputs && !config.out_dir.empty()) {
                    const std::string tag = std::string(method) + "_" + level_tag(level);
                    save_history_csv(config.out_dir + "/history_" + tag + ".csv", res.history);
                    save_field(config.out_dir + "/recon_" + tag + ".ssf", res.f);
                    save_pgm(config.out_dir + "/recon_" + tag + ".pgm", res.f);
                }
            } catch (const std::exception& e) {
                row.status = e.what();
            }
            table.rows.push_back(std::move(row));
        }
    }
    if (write_outputs && !config.out_dir.empty()) {
        save_benchmark_csv(config.out_dir + "/results.csv", table);
        save_field(config.out_dir + "/truth.ssf", truth);
        save_pgm(config.out_dir + "/truth.pgm", truth);
    }
    return table;
}

std::string benchmark_csv(const BenchmarkTable& table) {
    std::ostringstream out;
    out << "method,noise,rel_error,iterations,residual_hs,epsilon,converged,status\n";
    for (const BenchmarkRow& r : table.rows) {
        out << r.method << "," << format_double(r.noise_level) << "," << format_double(r.rel_error)
            << "," << r.iterations << "," << format_double(r.residual_hs) << ","
            << format_double(r.epsilon) << "," << (r.converged ? 1 : 0) << "," << r.status << "\n";
    }
    return out.str();
}

void save_benchmark_csv(const std::string& path, const BenchmarkTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_benchmark_csv: cannot open " + path);
    out << benchmark_csv(table);
    if (!out) throw std::runtime_error("save_benchmark_csv: write failed for " + path);
}

void save_history_csv(const std::string& path, const std::vector<IterationRecord>& history) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_history_csv: cannot open " + path);
    out << "iter,residual_hs,rel_error,mu,objective\n";
    for (const IterationRecord& r : history)
        out << r.iteration << "," << format_double(r.residual_hs) << ","
            << format_double(r.rel_error) << "," << format_double(r.mu) << ","
            << format_double(r.objective) << "\n";
    if (!out) throw std::runtime_error("save_history_csv: write failed for " + path);
}

} // namespace shearscat
