#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shearscat/born.hpp"
#include "shearscat/fft.hpp"
#include "shearscat/phantom.hpp"

using namespace shearscat;

namespace {

// Born-linearized amplitudes: exact lattice transform of f itself.
BackscatterGrid born_term_amplitudes(const ComplexField& f, int q) {
    BackscatterGrid amps(q);
    amps.amplitudes() = lattice_transform(f, q);
    return amps;
}

} // namespace

TEST_CASE("zero potential scatters the incident wave only") {
    Grid2D g(32);
    ComplexField u = schrodinger_scatter(ComplexField(g), {1.0, 0.0}, 3.0);
    ComplexField u_inc = plane_wave(g, {1.0, 0.0}, 3.0);
    CHECK(rel_l2_error(u, u_inc) < 1e-12);
}

TEST_CASE("schrodinger Born remainder is quadratic in the potential") {
    Grid2D g(64);
    const double k = 4.0;
    GreenKernel kernel(g, k);
    ComplexField shape = make_phantom(PhantomKind::CartoonBlob, g, 1.0);
    ComplexField u_inc = plane_wave(g, {0.0, 1.0}, k);
    ScatterOptions opts;
    opts.tol = 1e-12;

    auto remainder = [&](double s) {
        ComplexField f = s * shape;
        ComplexField u = schrodinger_scatter(kernel, f, {0.0, 1.0}, opts);
        ComplexField fu(g);
        for (std::size_t j = 0; j < fu.size(); ++j) fu[j] = f[j] * u_inc[j];
        ComplexField born = u_inc + kernel.volume_potential(fu);
        return l2_norm(u - born);
    };
    const double ratio = remainder(0.1) / remainder(0.05);
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("schrodinger solver meets its residual contract") {
    Grid2D g(32);
    const double k = 2.5;
    GreenKernel kernel(g, k);
    ComplexField f = make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    ScatterOptions opts;
    opts.tol = 1e-10;
    ComplexField u = schrodinger_scatter(kernel, f, {1.0, 0.0}, opts);
    ComplexField fu(g);
    for (std::size_t j = 0; j < fu.size(); ++j) fu[j] = f[j] * u[j];
    ComplexField lhs = u - kernel.volume_potential(fu) - plane_wave(g, {1.0, 0.0}, k);
    CHECK(l2_norm(lhs) / l2_norm(u) < 1e-9);
}

TEST_CASE("lattice transform against a direct sum and its adjoint identity") {
    Grid2D g(32);
    Rng rng(21);
    ComplexField f = random_field(g, rng);
    const int q = 5;
    std::vector<Complex> lat = lattice_transform(f, q);

    // direct evaluation at a few lattice points
    for (auto [l, m] : {std::pair{1, 0}, {0, 1}, {-3, 2}, {5, -5}, {0, 0}}) {
        Complex s(0.0, 0.0);
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                const double phase = std::numbers::pi * (l * g.coord(i) + m * g.coord(j));
                s += f(i, j) * Complex(std::cos(phase), std::sin(phase));
            }
        s *= g.h() * g.h();
        const Complex got = lat[static_cast<std::size_t>(l + q) * (2 * q + 1) + (m + q)];
        CHECK(std::abs(got - s) < 1e-12);
    }

    // adjoint identity <K f, v> = <f, K* v> in plain inner products
    std::vector<Complex> v(lat.size());
    for (Complex& z : v) z = rng.complex_gaussian();
    Complex lhs(0.0, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) lhs += lat[k] * std::conj(v[k]);
    ComplexField kv = lattice_transform_adjoint(v, q, g);
    Complex rhs(0.0, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) rhs += f[k] * std::conj(kv[k]);
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
}

TEST_CASE("inverse born of the Born term is the band-limited projection") {
    Grid2D g(128);
    ComplexField f = make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    const int q = 20;
    BackscatterGrid amps = born_term_amplitudes(f, q);
    ComplexField fb = inverse_born(amps, g);

    // oracle: zero out DFT bins outside the lattice box
    ComplexField proj(g);
    {
        std::vector<Complex> hat(g.size());
        fft::forward_2d(g.n(), g.n(), f.data(), hat.data());
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                const int fi = i < g.n() / 2 ? i : i - g.n();
                const int fj = j < g.n() / 2 ? j : j - g.n();
                if (std::abs(fi) > q || std::abs(fj) > q)
                    hat[static_cast<std::size_t>(i) * g.n() + j] = Complex(0.0, 0.0);
            }
        fft::inverse_2d(g.n(), g.n(), hat.data(), proj.data());
    }
    CHECK(rel_l2_error(fb, proj) < 1e-10);

    // zero amplitudes give the zero field
    BackscatterGrid zero(q);
    CHECK(l2_norm(inverse_born(zero, g)) == 0.0);
}

TEST_CASE("weak potential inverse Born approaches the band-limited contrast") {
    Grid2D g(64);
    const int q = 8;
    ComplexField shape = make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    ScatterOptions opts;
    opts.tol = 1e-12;

    BackscatterGrid born = born_term_amplitudes(shape, q);
    ComplexField target = inverse_born(born, g); // band-limited truth

    auto deviation = [&](double s) {
        ComplexField f = s * shape;
        BackscatterGrid amps = backscatter_amplitude(f, q, opts);
        for (Complex& a : amps.amplitudes()) a /= s;
        return rel_l2_error(inverse_born(amps, g), target);
    };
    const double d1 = deviation(0.2), d2 = deviation(0.1);
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("backscatter amplitudes: zero potential and conjugate symmetry diagnostics") {
    Grid2D g(32);
    ScatterOptions opts;
    opts.tol = 1e-10;
    BackscatterGrid zero = backscatter_amplitude(ComplexField(g), 4, opts);
    for (const Complex& a : zero.amplitudes()) CHECK(std::abs(a) == 0.0);

    ComplexField f = 0.05 * make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    BackscatterGrid amps = backscatter_amplitude(f, 4, opts);
    double max_asym = 0.0, max_amp = 0.0;
    for (int l = -4; l <= 4; ++l)
        for (int m = -4; m <= 4; ++m) {
            max_asym = std::max(max_asym, std::abs(amps(-l, -m) - std::conj(amps(l, m))));
            max_amp = std::max(max_amp, std::abs(amps(l, m)));
        }
    CHECK(max_asym / max_amp < 0.05);
    CHECK(amps.failures == 0);

    // spot check one frequency against direct quadrature of f*u
    const int l = 1, m = 0;
    const double k = 0.5 * std::numbers::pi;
    ComplexField u = schrodinger_scatter(f, {1.0, 0.0}, k, opts);
    Complex s(0.0, 0.0);
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            const double phase = 0.5 * std::numbers::pi * (l * g.coord(i) + m * g.coord(j));
            s += f(i, j) * u(i, j) * Complex(std::cos(phase), std::sin(phase));
        }
    s *= g.h() * g.h();
    CHECK(std::abs(amps(l, m) - s) < 1e-10);
}

TEST_CASE("ista: zero samples fixed point and objective decrease") {
    Grid2D g(64);
    ShearletSystemPtr sys = build_system(g, 3);
    const int q = 10;
    ComplexField f = make_phantom(PhantomKind::CenteredSquare, g, 1.0);
    BackscatterGrid amps = born_term_amplitudes(f, q);

    // all-zero samples with positive lambda keep the zero coefficients
    std::vector<FourierSample> zeros;
    for (int l = -q; l <= q; ++l)
        for (int m = -q; m <= q; ++m) zeros.push_back({l, m, Complex(0.0, 0.0)});
    IstaOptions opts;
    opts.lambda = 1e-3;
    opts.iterations = 5;
    IstaResult zr = partial_data_reconstruct(zeros, sys, q, opts);
    CHECK(l2_norm(zr.f) == 0.0);

    // objective is monotone nonincreasing on real data
    std::vector<FourierSample> full = sample_lattice(amps, 1.0, 3);
    opts.lambda = 1e-6;
    opts.iterations = 600;
    IstaResult res = partial_data_reconstruct(full, sys, q, opts);
    for (std::size_t k = 1; k < res.objective.size(); ++k)
        CHECK(res.objective[k] <= res.objective[k - 1] * (1 + 1e-9));

    // full noiseless Born data reconstructs close to the direct inversion
    ComplexField direct = inverse_born(amps, g);
    CHECK(rel_l2_error(res.f, direct) < 0.05);
    CHECK_THROWS_AS(partial_data_reconstruct({}, sys, q, opts), std::invalid_argument);
}

TEST_CASE("sample_lattice is deterministic and sized correctly") {
    BackscatterGrid amps(6);
    Rng rng(2);
    for (Complex& a : amps.amplitudes()) a = rng.complex_gaussian();
    std::vector<FourierSample> a = sample_lattice(amps, 0.5, 11);
    std::vector<FourierSample> b = sample_lattice(amps, 0.5, 11);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() == static_cast<std::size_t>(0.5 * 13 * 13));
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].l == b[k].l);
        CHECK(a[k].m == b[k].m);
    }
    CHECK_THROWS_AS(sample_lattice(amps, 0.0, 1), std::invalid_argument);
}

TEST_CASE("decay report columns and shapes") {
    Grid2D g(64);
    ShearletSystemPtr sys = build_system(g, 3);
    ComplexField f = make_phantom(PhantomKind::CartoonBlob, g, 1.0);
    const int q = 16;
    ComplexField fb = inverse_born(born_term_amplitudes(f, q), g);
    DecayReport rep = sparsity_decay_report(sys, f, fb);
    REQUIRE(!rep.rows.empty());
    double prev_f = 2.0, prev_fb = 2.0;
    for (const DecayRow& r : rep.rows) {
        CHECK(r.err_f <= prev_f * (1 + 1e-12));
        CHECK(r.err_fb <= prev_fb * (1 + 1e-12));
        CHECK(r.err_f_sq == doctest::Approx(r.err_f * r.err_f));
        prev_f = r.err_f;
        prev_fb = r.err_fb;
    }
    CHECK(rep.slope_f < 0.0);
    CHECK(rep.slope_fb < 0.0);
}
