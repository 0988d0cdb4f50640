#include "shearscat/phantom.hpp"

#include <cmath>

#include "shearscat/field_io.hpp"

namespace shearscat {

namespace {

// Jump curve of the blob phantom: smooth closed curve with bounded curvature,
// max radius 0.6 < 0.75.
double blob_radius(double theta) {
    return 0.45 + 0.1 * std::cos(2.0 * theta) + 0.05 * std::sin(3.0 * theta);
}

// Compactly supported C^inf bump on r < 0.7, peak value 1 at the origin.
double smooth_bump(double r) {
    const double s = r / 0.7;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double square_boundary_distance(double x, double y) {
    const double a = std::abs(x), b = std::abs(y), s = 0.3;
    const double m = std::max(a, b);
    if (m <= s) return s - m;
    const double dx = std::max(a - s, 0.0), dy = std::max(b - s, 0.0);
    return std::hypot(dx, dy);
}

} // namespace

PhantomKind parse_phantom_kind(const std::string& name) {
    if (name == "cartoon-blob") return PhantomKind::CartoonBlob;
    if (name == "centered-square") return PhantomKind::CenteredSquare;
    if (name == "custom-mask") return PhantomKind::CustomMask;
    throw std::invalid_argument("unknown phantom kind: " + name);
}

std::string to_string(PhantomKind kind) {
    switch (kind) {
        case PhantomKind::CartoonBlob: return "cartoon-blob";
        case PhantomKind::CenteredSquare: return "centered-square";
        case PhantomKind::CustomMask: return "custom-mask";
    }
    throw std::invalid_argument("unknown phantom kind");
}

ComplexField make_phantom(const Phantom& spec, const Grid2D& grid) {
    if (spec.amplitude < 0.0)
        throw std::invalid_argument("make_phantom: amplitude must be >= 0");

    ComplexField f(grid);
    const int n = grid.n();

    if (spec.kind == PhantomKind::CustomMask) {
        if (spec.mask_path.empty())
            throw std::invalid_argument("make_phantom: custom-mask requires a mask file");
        ComplexField mask = load_field(spec.mask_path);
        if (!(mask.grid() == grid))
            throw std::invalid_argument("make_phantom: mask grid does not match requested grid");
        for (std::size_t k = 0; k < mask.size(); ++k)
            f[k] = Complex(spec.amplitude * mask[k].real(), 0.0);
    } else {
        for (int i = 0; i < n; ++i) {
            const double x = grid.coord(i);
            for (int j = 0; j < n; ++j) {
                const double y = grid.coord(j);
                double value = 0.0;
                if (spec.kind == PhantomKind::CenteredSquare) {
                    if (std::max(std::abs(x), std::abs(y)) <= 0.3) value = spec.amplitude;
                } else {
                    const double r = std::hypot(x, y);
                    if (r <= blob_radius(std::atan2(y, x))) value = spec.amplitude;
                }
                if (spec.smooth_background != 0.0)
                    value += spec.smooth_background * smooth_bump(std::hypot(x, y));
                f(i, j) = Complex(value, 0.0);
            }
        }
    }

    const double rmax = support_max_radius(f);
    if (rmax >= support_radius)
        throw std::invalid_argument("make_phantom: support reaches radius " + std::to_string(rmax) +
                                    ", must stay inside " + std::to_string(support_radius));
    return f;
}

ComplexField make_phantom(PhantomKind kind, const Grid2D& grid, double amplitude) {
    Phantom spec;
    spec.kind = kind;
    spec.amplitude = amplitude;
    return make_phantom(spec, grid);
}

double support_max_radius(const ComplexField& f) {
    const Grid2D& grid = f.grid();
    double rmax = 0.0;
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j)
            if (f(i, j) != Complex(0.0, 0.0))
                rmax = std::max(rmax, std::hypot(grid.coord(i), grid.coord(j)));
    return rmax;
}

std::vector<bool> edge_band_mask(PhantomKind kind, const Grid2D& grid, int width_px) {
    if (kind == PhantomKind::CustomMask)
        throw std::invalid_argument("edge_band_mask: no analytic jump curve for custom masks");
    const int n = grid.n();
    const double delta = width_px * grid.h();
    std::vector<bool> mask(grid.size(), false);
    for (int i = 0; i < n; ++i) {
        const double x = grid.coord(i);
        for (int j = 0; j < n; ++j) {
            const double y = grid.coord(j);
            double d;
            if (kind == PhantomKind::CenteredSquare) {
                d = square_boundary_distance(x, y);
            } else {
                const double r = std::hypot(x, y);
                d = std::abs(r - blob_radius(std::atan2(y, x)));
            }
            mask[static_cast<std::size_t>(i) * n + j] = d <= delta;
        }
    }
    return mask;
}

} // namespace shearscat
