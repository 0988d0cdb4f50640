// Cell-centered square grids on [-1,1]^2, complex fields, discrete norms,
// and the deterministic RNG shared by all modules.
#ifndef SHEARSCAT_GRID_HPP
#define SHEARSCAT_GRID_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace shearscat {

using Complex = std::complex<double>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// n x n cell-centered grid on [-a,a]^2 with a = 1. Sample i lies at
// -a + (i + 1/2) h, h = 2a/n, so no sample ever coincides with an
// off-grid source location exactly.
class Grid2D {
public:
    static constexpr double half_width = 1.0;

    explicit Grid2D(int n);

    int n() const { return n_; }
    double h() const { return 2.0 * half_width / n_; }
    double coord(int i) const { return -half_width + (i + 0.5) * h(); }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    bool operator==(const Grid2D&) const = default;

private:
    int n_;
};

// Row-major complex samples over a Grid2D; index (i,j) is (x1,x2).
class ComplexField {
public:
    explicit ComplexField(const Grid2D& grid)
        : grid_(grid), values_(grid.size(), Complex(0.0, 0.0)) {}
    ComplexField(const Grid2D& grid, std::vector<Complex> values);

    const Grid2D& grid() const { return grid_; }
    int n() const { return grid_.n(); }
    std::size_t size() const { return values_.size(); }

    Complex& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }
    Complex operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }
    Complex& operator[](std::size_t k) { return values_[k]; }
    Complex operator[](std::size_t k) const { return values_[k]; }

    std::span<Complex> values() { return values_; }
    std::span<const Complex> values() const { return values_; }
    Complex* data() { return values_.data(); }
    const Complex* data() const { return values_.data(); }

private:
    Grid2D grid_;
    std::vector<Complex> values_;
};

// h-weighted discrete L2 norm: ||f||^2 = h^2 sum |f_ij|^2.
double l2_norm(const ComplexField& f);
// ||f - g|| / ||g||; throws on grid mismatch or ||g|| = 0.
double rel_l2_error(const ComplexField& f, const ComplexField& g);
// Plain (unweighted) inner product sum f conj(g).
Complex dot(const ComplexField& f, const ComplexField& g);

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(Complex s, const ComplexField& a);
ComplexField operator*(double s, const ComplexField& a);

// Reproducible random numbers. mt19937_64 has a standardized output
// sequence and the Gaussian uses an explicit Box-Muller so streams are
// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();           // [0,1)
    double gaussian();          // standard normal
    Complex complex_gaussian(); // independent N(0,1) real and imaginary parts

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable key derivation for sub-streams, e.g. noise keyed by (seed, level).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

ComplexField random_field(const Grid2D& grid, Rng& rng);

} // namespace shearscat

#endif
