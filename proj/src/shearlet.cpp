#include "shearscat/shearlet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "shearscat/fft.hpp"

namespace shearscat {

namespace {

// Meyer auxiliary polynomial: C^3, nu(0)=0, nu(1)=1, nu(x)+nu(1-x)=1.
double meyer_nu(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * x * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

// Slope window supported on [-1,1] with sum_k v(x-k)^2 = 1.
double slope_window(double x) {
    const double ax = std::abs(x);
    if (ax >= 1.0) return 0.0;
    return std::cos(0.5 * std::numbers::pi * meyer_nu(ax));
}

// Radial Meyer bank: lowpass on [0,2a0], band j rising on [a_j,2a_j] and
// falling on [2a_j,4a_j]; the final band stays at 1 so that the squares of
// lowpass plus bands sum to exactly 1 for every r >= 0.
double radial_lowpass(double r, double a0) {
    if (r <= a0) return 1.0;
    if (r >= 2.0 * a0) return 0.0;
    return std::cos(0.5 * std::numbers::pi * meyer_nu(r / a0 - 1.0));
}

double radial_band(double r, double a0, int j, int scales) {
    const double aj = a0 * std::pow(2.0, j);
    if (r <= aj) return 0.0;
    if (r <= 2.0 * aj) return std::sin(0.5 * std::numbers::pi * meyer_nu(r / aj - 1.0));
    if (j == scales - 1) return 1.0;
    if (r >= 4.0 * aj) return 0.0;
    return std::cos(0.5 * std::numbers::pi * meyer_nu(r / (2.0 * aj) - 1.0));
}

int shear_count(int j) { return 1 << ((j + 1) / 2); } // 2^ceil(j/2)

// Signed integer frequency of FFT bin k on an n-grid.
inline double bin_freq(int k, int n) { return k < n / 2 ? k : k - n; }

} // namespace

int ShearletSystem::max_scales(int n) {
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    return log2n - 3;
}

ShearletSystem::ShearletSystem(const Grid2D& grid, int scales) : grid_(grid), scales_(scales) {
    const int n = grid.n();
    if (scales < 1 || scales > max_scales(n))
        throw std::invalid_argument("ShearletSystem: scales must lie in [1," +
                                    std::to_string(max_scales(n)) + "] for n = " + std::to_string(n));

    const double a0 = n / std::pow(2.0, scales + 1);
    const std::size_t total = grid.size();

    std::vector<double> xi1(total), xi2(total);
    for (int i = 0; i < n; ++i) {
        const double f1 = bin_freq(i, n);
        for (int j = 0; j < n; ++j) {
            xi1[static_cast<std::size_t>(i) * n + j] = f1;
            xi2[static_cast<std::size_t>(i) * n + j] = bin_freq(j, n);
        }
    }

    // Lowpass on the max norm so it complements the per-cone radial bands.
    {
        std::vector<double> low(total);
        for (std::size_t k = 0; k < total; ++k)
            low[k] = radial_lowpass(std::max(std::abs(xi1[k]), std::abs(xi2[k])), a0);
        filters_.push_back(std::move(low));
        indices_.push_back({Cone::Lowpass, -1, 0});
    }

    for (int j = 0; j < scales; ++j) {
        const int K = shear_count(j);
        for (int cone = 0; cone < 2; ++cone) {
            const std::vector<double>& axis = (cone == 0) ? xi1 : xi2;
            const std::vector<double>& other = (cone == 0) ? xi2 : xi1;
            for (int k = -K; k <= K; ++k) {
                std::vector<double> filt(total);
                for (std::size_t idx = 0; idx < total; ++idx) {
                    const double ax = axis[idx];
                    if (ax == 0.0) {
                        filt[idx] = 0.0;
                        continue;
                    }
                    const double band = radial_band(std::abs(ax), a0, j, scales);
                    if (band == 0.0) {
                        filt[idx] = 0.0;
                        continue;
                    }
                    filt[idx] = band * slope_window(K * other[idx] / ax - k);
                }
                filters_.push_back(std::move(filt));
                indices_.push_back({cone == 0 ? Cone::Horizontal : Cone::Vertical, j, k});
            }
        }
    }

    dual_weight_.assign(total, 0.0);
    for (const auto& filt : filters_)
        for (std::size_t k = 0; k < total; ++k) dual_weight_[k] += filt[k] * filt[k];
    auto [lo, hi] = std::minmax_element(dual_weight_.begin(), dual_weight_.end());
    frame_lower_ = *lo;
    frame_upper_ = *hi;
    if (frame_lower_ <= 0.0)
        throw std::logic_error("ShearletSystem: dual weight not strictly positive");
}

ShearletSystemPtr build_system(const Grid2D& grid, int scales) {
    return std::make_shared<const ShearletSystem>(grid, scales);
}

CoefficientSet::CoefficientSet(ShearletSystemPtr system, std::vector<std::vector<Complex>> planes)
    : system_(std::move(system)), planes_(std::move(planes)) {
    if (planes_.size() != system_->filter_count())
        throw std::invalid_argument("CoefficientSet: plane count does not match system");
    for (const auto& p : planes_)
        if (p.size() != system_->grid().size())
            throw std::invalid_argument("CoefficientSet: plane size does not match grid");
}

std::size_t CoefficientSet::coefficient_count() const {
    return planes_.size() * system_->grid().size();
}

CoefficientSet analyze(const ShearletSystemPtr& system, const ComplexField& f) {
    if (!(f.grid() == system->grid()))
        throw std::invalid_argument("analyze: field grid does not match system");
    const int n = system->grid().n();
    const std::size_t total = system->grid().size();

    std::vector<Complex> fhat(total);
    fft::forward_2d(n, n, f.data(), fhat.data());

    const std::size_t planes = system->filter_count();
    std::vector<std::vector<Complex>> out(planes);
#pragma omp parallel for schedule(static)
    for (long p = 0; p < static_cast<long>(planes); ++p) {
        const std::vector<double>& filt = system->filter(static_cast<std::size_t>(p));
        std::vector<Complex> tmp(total);
        for (std::size_t k = 0; k < total; ++k) tmp[k] = fhat[k] * filt[k];
        out[static_cast<std::size_t>(p)].resize(total);
        fft::inverse_2d(n, n, tmp.data(), out[static_cast<std::size_t>(p)].data());
    }
    return CoefficientSet(system, std::move(out));
}

ComplexField synthesize_dual(const CoefficientSet& coeffs) {
    const ShearletSystem& sys = coeffs.system();
    const int n = sys.grid().n();
    const std::size_t total = sys.grid().size();
    const std::size_t planes = coeffs.plane_count();

    std::vector<Complex> acc(total, Complex(0.0, 0.0));
    // Transform a batch of planes in parallel, then accumulate in plane
    // order so the sum is independent of the thread count.
    constexpr std::size_t batch = 8;
    std::vector<std::vector<Complex>> hat(batch, std::vector<Complex>(total));
    for (std::size_t p0 = 0; p0 < planes; p0 += batch) {
        const std::size_t count = std::min(batch, planes - p0);
#pragma omp parallel for schedule(static)
        for (long b = 0; b < static_cast<long>(count); ++b)
            fft::forward_2d(n, n, coeffs.plane(p0 + static_cast<std::size_t>(b)).data(),
                            hat[static_cast<std::size_t>(b)].data());
        for (std::size_t b = 0; b < count; ++b) {
            const std::vector<double>& filt = sys.filter(p0 + b);
            const std::vector<Complex>& h = hat[b];
            for (std::size_t k = 0; k < total; ++k) acc[k] += h[k] * filt[k];
        }
    }
    const std::vector<double>& weight = sys.dual_weight();
    for (std::size_t k = 0; k < total; ++k) acc[k] /= weight[k];

    ComplexField out(sys.grid());
    fft::inverse_2d(n, n, acc.data(), out.data());
    return out;
}

void soft_threshold_in_place(CoefficientSet& coeffs, double theta) {
    if (theta < 0.0) throw std::invalid_argument("soft_threshold: theta must be >= 0");
    if (theta == 0.0) return;
    for (std::size_t p = 0; p < coeffs.plane_count(); ++p) {
        for (Complex& w : coeffs.plane(p)) {
            const double mag = std::abs(w);
            w = (mag <= theta) ? Complex(0.0, 0.0) : w * ((mag - theta) / mag);
        }
    }
}

CoefficientSet soft_threshold(const CoefficientSet& coeffs, double theta) {
    CoefficientSet out = coeffs;
    soft_threshold_in_place(out, theta);
    return out;
}

std::pair<ComplexField, double> n_term_approx(const ShearletSystemPtr& system,
                                              const ComplexField& f, std::size_t N) {
    CoefficientSet coeffs = analyze(system, f);
    const std::size_t total = coeffs.coefficient_count();
    if (N > total)
        throw std::invalid_argument("n_term_approx: N exceeds coefficient count");

    if (N < total) {
        std::vector<double> mags;
        mags.reserve(total);
        for (std::size_t p = 0; p < coeffs.plane_count(); ++p)
            for (const Complex& w : coeffs.plane(p)) mags.push_back(std::abs(w));
        double threshold;
        std::size_t allowed_at_threshold = 0;
        if (N == 0) {
            threshold = std::numeric_limits<double>::infinity();
        } else {
            std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(N - 1),
                             mags.end(), std::greater<double>());
            threshold = mags[N - 1];
            std::size_t above = 0;
            for (std::size_t k = 0; k < N; ++k)
                if (mags[k] > threshold) ++above;
            allowed_at_threshold = N - above;
        }
        // Keep strictly-above coefficients plus ties in deterministic order.
        std::size_t used_ties = 0;
        for (std::size_t p = 0; p < coeffs.plane_count(); ++p) {
            for (Complex& w : coeffs.plane(p)) {
                const double mag = std::abs(w);
                if (mag > threshold) continue;
                if (mag == threshold && used_ties < allowed_at_threshold) {
                    ++used_ties;
                    continue;
                }
                w = Complex(0.0, 0.0);
            }
        }
    }

    ComplexField approx = synthesize_dual(coeffs);
    return {approx, rel_l2_error(approx, f)};
}

ComplexField level_restricted_reconstruction(const CoefficientSet& coeffs, int level) {
    const ShearletSystem& sys = coeffs.system();
    if (level < -1 || level >= sys.scales())
        throw std::invalid_argument("level_restricted_reconstruction: level out of range");
    std::vector<std::vector<Complex>> planes(coeffs.plane_count());
    for (std::size_t p = 0; p < coeffs.plane_count(); ++p) {
        if (sys.indices()[p].scale == level)
            planes[p] = coeffs.plane(p);
        else
            planes[p].assign(sys.grid().size(), Complex(0.0, 0.0));
    }
    return synthesize_dual(CoefficientSet(coeffs.system_ptr(), std::move(planes)));
}

ComplexField level_restricted_reconstruction(const ShearletSystemPtr& system,
                                             const ComplexField& f, int level) {
    if (level < 0 || level >= system->scales())
        throw std::invalid_argument("level_restricted_reconstruction: level out of range");
    return level_restricted_reconstruction(analyze(system, f), level);
}

} // namespace shearscat
