#include <doctest.h>

#include <vector>

#include "shearscat/gmres.hpp"
#include "shearscat/grid.hpp"

using namespace shearscat;

namespace {

// Dense LU with partial pivoting, test-local oracle.
std::vector<Complex> dense_solve(std::vector<Complex> a, std::vector<Complex> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        Complex s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri * n + c] * x[c];
        x[ri] = s / a[ri * n + ri];
    }
    return x;
}

LinearMap dense_map(const std::vector<Complex>& a, std::size_t n) {
    return [&a, n](const std::vector<Complex>& x, std::vector<Complex>& y) {
        y.assign(n, Complex(0.0, 0.0));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) y[r] += a[r * n + c] * x[c];
    };
}

} // namespace

TEST_CASE("identity converges in one iteration") {
    std::vector<Complex> b = {{1, 2}, {3, -1}, {0, 5}};
    LinearMap id = [](const std::vector<Complex>& x, std::vector<Complex>& y) { y = x; };
    GmresResult r = gmres(id, b, {1e-12, 10, 50});
    CHECK(r.iterations <= 1);
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(std::abs(r.x[k] - b[k]) < 1e-12);
}

TEST_CASE("scaled identity") {
    std::vector<Complex> b = {{2, 0}, {0, 4}};
    LinearMap two = [](const std::vector<Complex>& x, std::vector<Complex>& y) {
        y = x;
        for (Complex& v : y) v *= 2.0;
    };
    GmresResult r = gmres(two, b, {1e-12, 10, 50});
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(std::abs(r.x[k] - 0.5 * b[k]) < 1e-12);
}

TEST_CASE("random diagonally dominant system matches the dense oracle") {
    const std::size_t n = 50;
    Rng rng(31);
    std::vector<Complex> a(n * n), b(n);
    for (std::size_t r = 0; r < n; ++r) {
        double off = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = 0.3 * rng.complex_gaussian();
            if (c != r) off += std::abs(a[r * n + c]);
        }
        a[r * n + r] = Complex(off + 1.0, 0.5);
        b[r] = rng.complex_gaussian();
    }
    std::vector<Complex> expected = dense_solve(a, b);
    GmresResult r = gmres(dense_map(a, n), b, {1e-12, 60, 500});
    double err = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        err += std::norm(r.x[k] - expected[k]);
        ref += std::norm(expected[k]);
    }
    CHECK(std::sqrt(err / ref) < 1e-8);
}

TEST_CASE("restarts still converge") {
    const std::size_t n = 40;
    Rng rng(77);
    std::vector<Complex> a(n * n), b(n);
    for (std::size_t r = 0; r < n; ++r) {
        double off = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = 0.2 * rng.complex_gaussian();
            if (c != r) off += std::abs(a[r * n + c]);
        }
        a[r * n + r] = Complex(off + 0.5, 0.0);
        b[r] = rng.complex_gaussian();
    }
    GmresResult r = gmres(dense_map(a, n), b, {1e-10, 5, 400}); // force restarts
    std::vector<Complex> check(n);
    dense_map(a, n)(r.x, check);
    double res = 0.0, bn = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        res += std::norm(check[k] - b[k]);
        bn += std::norm(b[k]);
    }
    CHECK(std::sqrt(res / bn) <= 1e-10);
}

TEST_CASE("non-convergence carries the residual") {
    // rotation-like system that a 2-dim Krylov space cannot solve in 3 applies
    const std::size_t n = 30;
    Rng rng(5);
    std::vector<Complex> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r * n + c] = (c == (r + 1) % n) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    std::vector<Complex> b(n);
    for (Complex& v : b) v = rng.complex_gaussian();
    try {
        gmres(dense_map(a, n), b, {1e-10, 4, 8});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.residual > 0.0);
        CHECK(e.iterations >= 8);
    }
}

TEST_CASE("zero right-hand side returns zero") {
    std::vector<Complex> b(10, Complex(0.0, 0.0));
    LinearMap id = [](const std::vector<Complex>& x, std::vector<Complex>& y) { y = x; };
    GmresResult r = gmres(id, b);
    for (const Complex& v : r.x) CHECK(v == Complex(0.0, 0.0));
    CHECK(r.iterations == 0);
}

TEST_CASE("option validation") {
    std::vector<Complex> b = {{1, 0}};
    LinearMap id = [](const std::vector<Complex>& x, std::vector<Complex>& y) { y = x; };
    CHECK_THROWS_AS(gmres(id, b, {0.0, 10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(gmres(id, b, {1e-8, 0, 10}), std::invalid_argument);
}
