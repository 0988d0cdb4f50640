#include "shearscat/grid.hpp"

#include <cmath>
#include <numbers>

namespace shearscat {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid2D::Grid2D(int n) : n_(n) {
    if (n < 16 || !power_of_two(n))
        throw std::invalid_argument("Grid2D: n must be a power of two >= 16, got " + std::to_string(n));
}

ComplexField::ComplexField(const Grid2D& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("ComplexField: value count does not match grid");
}

double l2_norm(const ComplexField& f) {
    double s = 0.0;
    for (const Complex& v : f.values()) s += std::norm(v);
    return f.grid().h() * std::sqrt(s);
}

double rel_l2_error(const ComplexField& f, const ComplexField& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("rel_l2_error: grid mismatch");
    const double ref = l2_norm(g);
    if (ref == 0.0)
        throw std::invalid_argument("rel_l2_error: zero reference field");
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::norm(f[k] - g[k]);
    return f.grid().h() * std::sqrt(s) / ref;
}

Complex dot(const ComplexField& f, const ComplexField& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("dot: grid mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * std::conj(g[k]);
    return s;
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("field +: grid mismatch");
    ComplexField out = a;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
    return out;
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("field -: grid mismatch");
    ComplexField out = a;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
    return out;
}

ComplexField operator*(Complex s, const ComplexField& a) {
    ComplexField out = a;
    for (Complex& v : out.values()) v *= s;
    return out;
}

ComplexField operator*(double s, const ComplexField& a) { return Complex(s, 0.0) * a; }

double Rng::uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexField random_field(const Grid2D& grid, Rng& rng) {
    ComplexField f(grid);
    for (Complex& v : f.values()) v = rng.complex_gaussian();
    return f;
}

} // namespace shearscat
