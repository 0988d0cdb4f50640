#include "shearscat/born.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>

#include "shearscat/fft.hpp"

namespace shearscat {

BackscatterGrid::BackscatterGrid(int q) : q_(q) {
    if (q < 4) throw std::invalid_argument("BackscatterGrid: q must be >= 4");
    amplitudes_.assign(static_cast<std::size_t>(side()) * side(), Complex(0.0, 0.0));
}

ComplexField schrodinger_scatter(const GreenKernel& kernel, const ComplexField& f,
                                 Point direction, const ScatterOptions& options) {
    const Grid2D& grid = kernel.grid();
    if (!(f.grid() == grid))
        throw std::invalid_argument("schrodinger_scatter: grid mismatch");
    ComplexField u_inc = plane_wave(grid, direction, kernel.wavenumber());
    // (I - V_k M_f) u = u_inc; the potential enters with the opposite sign
    // of the acoustic contrast.
    LinearMap apply = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        ComplexField xf(grid, x);
        for (std::size_t k = 0; k < xf.size(); ++k) xf[k] *= f[k];
        ComplexField v = kernel.volume_potential(xf);
        y.resize(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - v[k];
    };
    std::vector<Complex> rhs(u_inc.values().begin(), u_inc.values().end());
    GmresResult res = gmres(apply, rhs, options.gmres());
    return ComplexField(grid, std::move(res.x));
}

ComplexField schrodinger_scatter(const ComplexField& f, Point direction, double k,
                                 const ScatterOptions& options) {
    if (!(k > 0.0)) throw std::invalid_argument("schrodinger_scatter: wavenumber must be positive");
    GreenKernel kernel(f.grid(), k);
    return schrodinger_scatter(kernel, f, direction, options);
}

namespace {

// Quadrature h^2 sum e^{i <omega, y>} g(y) with omega = (pi/2)(l,m),
// evaluated separably.
Complex modulated_sum(const ComplexField& g, int l, int m) {
    const Grid2D& grid = g.grid();
    const int n = grid.n();
    std::vector<Complex> e1(n), e2(n);
    for (int i = 0; i < n; ++i) {
        const double y = grid.coord(i);
        const double p1 = 0.5 * std::numbers::pi * l * y;
        const double p2 = 0.5 * std::numbers::pi * m * y;
        e1[i] = Complex(std::cos(p1), std::sin(p1));
        e2[i] = Complex(std::cos(p2), std::sin(p2));
    }
    Complex total(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        Complex row(0.0, 0.0);
        for (int j = 0; j < n; ++j) row += g(i, j) * e2[j];
        total += e1[i] * row;
    }
    return grid.h() * grid.h() * total;
}

} // namespace

BackscatterGrid backscatter_amplitude(const ComplexField& f, int q, const ScatterOptions& options) {
    BackscatterGrid amps(q);
    const Grid2D& grid = f.grid();
    if (2 * q >= grid.n())
        throw std::invalid_argument("backscatter_amplitude: need 2q < n to avoid aliasing");

    // u = 1 at the zero frequency, so A(0,0) is the plain integral of f.
    {
        double h2 = grid.h() * grid.h();
        Complex s(0.0, 0.0);
        for (const Complex& v : f.values()) s += v;
        amps(0, 0) = h2 * s;
    }

    // Group lattice points by |(l,m)| so each Green kernel is built once.
    std::map<long, std::vector<std::pair<int, int>>> by_radius;
    for (int l = -q; l <= q; ++l)
        for (int m = -q; m <= q; ++m)
            if (l != 0 || m != 0)
                by_radius[static_cast<long>(l) * l + static_cast<long>(m) * m].push_back({l, m});

    int failures = 0;
    for (const auto& [r2, members] : by_radius) {
        const double k = 0.5 * std::numbers::pi * std::sqrt(static_cast<double>(r2));
        GreenKernel kernel(grid, k);
        const long count = static_cast<long>(members.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
        for (long idx = 0; idx < count; ++idx) {
            const auto [l, m] = members[static_cast<std::size_t>(idx)];
            try {
                const double norm = std::hypot(static_cast<double>(l), static_cast<double>(m));
                ComplexField u = schrodinger_scatter(kernel, f, {l / norm, m / norm}, options);
                ComplexField fu(grid);
                for (std::size_t j = 0; j < fu.size(); ++j) fu[j] = f[j] * u[j];
                amps(l, m) = modulated_sum(fu, l, m);
            } catch (const SolverError&) {
                amps(l, m) = Complex(0.0, 0.0);
                ++failures;
            }
        }
    }
    amps.failures = failures;
    const long total = static_cast<long>(amps.side()) * amps.side() - 1;
    if (failures * 100 > total)
        throw std::runtime_error("backscatter_amplitude: " + std::to_string(failures) + " of " +
                                 std::to_string(total) + " frequency solves failed");
    return amps;
}

namespace {

// Spectral array S with S[l mod n][m mod n] = values(l,m) * phase(l+m),
// whose forward FFT evaluates sum values(l,m) e^{-i pi (l x + m y)} on the
// cell-centered grid.
std::vector<Complex> spectral_embedding(const std::vector<Complex>& values, int q,
                                        const Grid2D& grid) {
    const int n = grid.n();
    if (2 * q >= n)
        throw std::invalid_argument("inverse_born: need 2q < n to place the lattice");
    const int side = 2 * q + 1;
    std::vector<Complex> spec(grid.size(), Complex(0.0, 0.0));
    for (int l = -q; l <= q; ++l) {
        const int il = (l + n) % n;
        for (int m = -q; m <= q; ++m) {
            const int im = (m + n) % n;
            const double phase = std::numbers::pi * (l + m) * (1.0 - 1.0 / n);
            const Complex rot(std::cos(phase), std::sin(phase));
            spec[static_cast<std::size_t>(il) * n + im] =
                values[static_cast<std::size_t>(l + q) * side + (m + q)] * rot;
        }
    }
    return spec;
}

ComplexField synthesize_lattice(const std::vector<Complex>& values, int q, const Grid2D& grid,
                                double scale) {
    std::vector<Complex> spec = spectral_embedding(values, q, grid);
    ComplexField out(grid);
    fft::forward_2d(grid.n(), grid.n(), spec.data(), out.data());
    for (Complex& v : out.values()) v *= scale;
    return out;
}

} // namespace

ComplexField inverse_born(const BackscatterGrid& amplitudes, const Grid2D& grid) {
    ComplexField synth = synthesize_lattice(amplitudes.amplitudes(), amplitudes.q(), grid, 0.25);
    for (Complex& v : synth.values()) v = Complex(v.real(), 0.0);
    return synth;
}

double inverse_born_imaginary_norm(const BackscatterGrid& amplitudes, const Grid2D& grid) {
    ComplexField synth = synthesize_lattice(amplitudes.amplitudes(), amplitudes.q(), grid, 0.25);
    for (Complex& v : synth.values()) v = Complex(v.imag(), 0.0);
    return l2_norm(synth);
}

std::vector<Complex> lattice_transform(const ComplexField& f, int q) {
    const Grid2D& grid = f.grid();
    const int n = grid.n();
    if (2 * q >= n)
        throw std::invalid_argument("lattice_transform: need 2q < n");
    std::vector<Complex> hat(grid.size());
    fft::inverse_2d(n, n, f.data(), hat.data()); // conjugate-kernel DFT / n^2
    const int side = 2 * q + 1;
    std::vector<Complex> out(static_cast<std::size_t>(side) * side);
    // h^2 n^2 = 4; the phase undoes the cell-centered offset.
    for (int l = -q; l <= q; ++l) {
        const int il = (l + n) % n;
        for (int m = -q; m <= q; ++m) {
            const int im = (m + n) % n;
            const double phase = -std::numbers::pi * (l + m) * (1.0 - 1.0 / n);
            const Complex rot(std::cos(phase), std::sin(phase));
            out[static_cast<std::size_t>(l + q) * side + (m + q)] =
                4.0 * rot * hat[static_cast<std::size_t>(il) * n + im];
        }
    }
    return out;
}

ComplexField lattice_transform_adjoint(const std::vector<Complex>& values, int q,
                                       const Grid2D& grid) {
    const int side = 2 * q + 1;
    if (values.size() != static_cast<std::size_t>(side) * side)
        throw std::invalid_argument("lattice_transform_adjoint: value count mismatch");
    const double h2 = grid.h() * grid.h();
    return synthesize_lattice(values, q, grid, h2);
}

namespace {

double fit_slope(const std::vector<double>& logN, const std::vector<double>& logE) {
    const std::size_t m = logN.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += logN[i];
        sy += logE[i];
        sxx += logN[i] * logN[i];
        sxy += logN[i] * logE[i];
    }
    const double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

} // namespace

DecayReport sparsity_decay_report(const ShearletSystemPtr& system, const ComplexField& f,
                                  const ComplexField& f_born) {
    if (!(f.grid() == system->grid()) || !(f_born.grid() == system->grid()))
        throw std::invalid_argument("sparsity_decay_report: grid mismatch");
    const std::size_t total = system->filter_count() * system->grid().size();
    int L = 0;
    while ((static_cast<std::size_t>(1) << (L + 1)) <= total) ++L;

    DecayReport report;
    std::vector<double> logN_f, logE_f, logE_fb;
    const int lo_exp = 5, hi_exp = L - 2, window_lo = std::max(5, L - 8);
    for (int e = lo_exp; e <= hi_exp; ++e) {
        const std::size_t N = static_cast<std::size_t>(1) << e;
        DecayRow row;
        row.terms = N;
        row.err_f = n_term_approx(system, f, N).second;
        row.err_fb = n_term_approx(system, f_born, N).second;
        row.err_f_sq = row.err_f * row.err_f;
        row.err_fb_sq = row.err_fb * row.err_fb;
        report.rows.push_back(row);
        if (e >= window_lo) {
            logN_f.push_back(std::log(static_cast<double>(N)));
            logE_f.push_back(std::log(row.err_f));
            logE_fb.push_back(std::log(row.err_fb));
        }
    }
    report.slope_f = fit_slope(logN_f, logE_f);
    report.slope_fb = fit_slope(logN_f, logE_fb);
    return report;
}

void save_decay_csv(const std::string& path, const DecayReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_decay_csv: cannot open " + path);
    out << "# slope_f=" << report.slope_f << " slope_fb=" << report.slope_fb << "\n";
    out << "terms,err_f,err_f_sq,err_fb,err_fb_sq\n";
    out.precision(17);
    for (const DecayRow& r : report.rows)
        out << r.terms << "," << r.err_f << "," << r.err_f_sq << "," << r.err_fb << ","
            << r.err_fb_sq << "\n";
    if (!out) throw std::runtime_error("save_decay_csv: write failed for " + path);
}

std::vector<FourierSample> sample_lattice(const BackscatterGrid& amps, double fraction,
                                          std::uint64_t seed) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("sample_lattice: fraction must lie in (0,1]");
    const int q = amps.q();
    const int side = amps.side();
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(side) * side);
    for (int l = -q; l <= q; ++l)
        for (int m = -q; m <= q; ++m) all.push_back({l, m});
    // Fisher-Yates with the project Rng so subsets are platform stable.
    Rng rng(seed);
    for (std::size_t i = all.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform() * i);
        std::swap(all[i - 1], all[std::min(j, i - 1)]);
    }
    const std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * all.size()));
    std::vector<FourierSample> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        out.push_back({all[i].first, all[i].second, amps(all[i].first, all[i].second)});
    return out;
}

namespace {

std::vector<Complex> apply_sampling(const std::vector<Complex>& lattice, int q,
                                    const std::vector<FourierSample>& samples) {
    const int side = 2 * q + 1;
    std::vector<Complex> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = lattice[static_cast<std::size_t>(samples[i].l + q) * side + (samples[i].m + q)];
    return out;
}

std::vector<Complex> spread_samples(const std::vector<Complex>& values, int q,
                                    const std::vector<FourierSample>& samples) {
    const int side = 2 * q + 1;
    std::vector<Complex> out(static_cast<std::size_t>(side) * side, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[static_cast<std::size_t>(samples[i].l + q) * side + (samples[i].m + q)] += values[i];
    return out;
}

// Adjoint of synthesize_dual w.r.t. plain inner products: plane_p =
// IFFT(FFT(g) psi_p / dual_weight).
CoefficientSet dual_synthesis_adjoint(const ShearletSystemPtr& system, const ComplexField& g) {
    const int n = system->grid().n();
    const std::size_t total = system->grid().size();
    std::vector<Complex> ghat(total);
    fft::forward_2d(n, n, g.data(), ghat.data());
    const std::vector<double>& weight = system->dual_weight();
    std::vector<std::vector<Complex>> planes(system->filter_count());
#pragma omp parallel for schedule(static)
    for (long p = 0; p < static_cast<long>(planes.size()); ++p) {
        const std::vector<double>& filt = system->filter(static_cast<std::size_t>(p));
        std::vector<Complex> tmp(total);
        for (std::size_t k = 0; k < total; ++k) tmp[k] = ghat[k] * (filt[k] / weight[k]);
        planes[static_cast<std::size_t>(p)].resize(total);
        fft::inverse_2d(n, n, tmp.data(), planes[static_cast<std::size_t>(p)].data());
    }
    return CoefficientSet(system, std::move(planes));
}

double coeff_l1(const CoefficientSet& c) {
    double s = 0.0;
    for (std::size_t p = 0; p < c.plane_count(); ++p)
        for (const Complex& v : c.plane(p)) s += std::abs(v);
    return s;
}

} // namespace

IstaResult partial_data_reconstruct(const std::vector<FourierSample>& samples,
                                    const ShearletSystemPtr& system, int q,
                                    const IstaOptions& options) {
    if (samples.empty())
        throw std::invalid_argument("partial_data_reconstruct: no samples");
    if (!(options.lambda > 0.0))
        throw std::invalid_argument("partial_data_reconstruct: lambda must be positive");
    const Grid2D& grid = system->grid();

    auto apply_K = [&](const CoefficientSet& c) {
        return apply_sampling(lattice_transform(synthesize_dual(c), q), q, samples);
    };
    auto apply_Kt = [&](const std::vector<Complex>& v) {
        return dual_synthesis_adjoint(system,
                                      lattice_transform_adjoint(spread_samples(v, q, samples), q, grid));
    };

    // Stepsize 1/||K||^2 by power iteration on K^T K.
    Rng rng(options.power_seed);
    ComplexField seed_field = random_field(grid, rng);
    CoefficientSet v = analyze(system, seed_field);
    double norm_sq = 1.0;
    for (int it = 0; it < options.power_iterations; ++it) {
        double nv = 0.0;
        for (std::size_t p = 0; p < v.plane_count(); ++p)
            for (const Complex& z : v.plane(p)) nv += std::norm(z);
        nv = std::sqrt(nv);
        if (nv == 0.0) break;
        for (std::size_t p = 0; p < v.plane_count(); ++p)
            for (Complex& z : v.plane(p)) z /= nv;
        v = apply_Kt(apply_K(v));
        double nv2 = 0.0;
        for (std::size_t p = 0; p < v.plane_count(); ++p)
            for (const Complex& z : v.plane(p)) nv2 += std::norm(z);
        norm_sq = std::sqrt(nv2);
    }
    const double mu = (norm_sq > 0.0) ? 1.0 / norm_sq : 1.0;

    std::vector<Complex> data(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) data[i] = samples[i].value;

    std::vector<std::vector<Complex>> zero(system->filter_count(),
                                           std::vector<Complex>(grid.size(), Complex(0.0, 0.0)));
    CoefficientSet c(system, std::move(zero));

    IstaResult result{ComplexField(grid), {}};
    int increases = 0;
    double prev_obj = std::numeric_limits<double>::infinity();
    for (int it = 0; it < options.iterations; ++it) {
        std::vector<Complex> r = apply_K(c);
        double fit = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] -= data[i];
            fit += std::norm(r[i]);
        }
        const double obj = fit + 2.0 * options.lambda * coeff_l1(c);
        result.objective.push_back(obj);
        if (obj > prev_obj) {
            if (++increases >= 5)
                throw std::runtime_error("partial_data_reconstruct: objective increased five times");
        } else {
            increases = 0;
        }
        prev_obj = obj;

        CoefficientSet g = apply_Kt(r);
        for (std::size_t p = 0; p < c.plane_count(); ++p) {
            std::vector<Complex>& cp = c.plane(p);
            const std::vector<Complex>& gp = g.plane(p);
            for (std::size_t k = 0; k < cp.size(); ++k) cp[k] -= mu * gp[k];
        }
        soft_threshold_in_place(c, options.lambda * mu);
    }
    result.f = synthesize_dual(c);
    return result;
}

} // namespace shearscat
