#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shearscat/grid.hpp"
#include "shearscat/special.hpp"

using namespace shearscat;

namespace {

// Independent oracle: ascending power series for J0 and Y0 (fine up to
// x ~ 12 in double precision), kept separate from the library path.
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double y0_series(double x) {
    constexpr double euler = 0.57721566490153286060;
    const double q = 0.25 * x * x;
    double term = 1.0, hk = 0.0, sum = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        sum += -term * hk; // sum (-1)^{k+1} H_k q^k / (k!)^2
        if (std::abs(term) < 1e-18) break;
    }
    return 2.0 / std::numbers::pi * ((std::log(0.5 * x) + euler) * j0_series(x) + sum);
}

} // namespace

TEST_CASE("hankel0_1 against published value at x = 1") {
    const Complex h = hankel0_1(1.0);
    CHECK(h.real() == doctest::Approx(0.7651976866).epsilon(1e-10));
    CHECK(h.imag() == doctest::Approx(0.0882569642).epsilon(1e-8));
}

TEST_CASE("hankel0_1 against the series oracle on (0, 12]") {
    for (double x : {0.05, 0.3, 0.9, 1.7, 3.1, 4.9, 7.3, 9.8, 11.6}) {
        const Complex h = hankel0_1(x);
        CHECK(h.real() == doctest::Approx(j0_series(x)).epsilon(1e-10));
        CHECK(h.imag() == doctest::Approx(y0_series(x)).epsilon(1e-10));
    }
}

TEST_CASE("large argument modulus approaches sqrt(2/(pi x))") {
    const double x = 100.0;
    const double ratio = std::abs(hankel0_1(x)) / std::sqrt(2.0 / (std::numbers::pi * x));
    CHECK(std::abs(ratio - 1.0) < 1e-3);
}

TEST_CASE("logarithmic blow up of Y0 near zero") {
    CHECK(hankel0_1(1e-6).imag() < -8.0);
    CHECK(hankel0_1(1e-6).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(hankel0_1(0.0), std::invalid_argument);
    CHECK_THROWS_AS(hankel0_1(-2.0), std::invalid_argument);
}
