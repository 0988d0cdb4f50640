// Cartoon-like test scatterers supported inside the ball of radius 0.75.
#ifndef SHEARSCAT_PHANTOM_HPP
#define SHEARSCAT_PHANTOM_HPP

#include <optional>
#include <string>

#include "shearscat/grid.hpp"

namespace shearscat {

// Scatterers must stay inside B_R so that transmitters at radius 0.9 lie
// strictly outside the support.
constexpr double support_radius = 0.75;

enum class PhantomKind { CartoonBlob, CenteredSquare, CustomMask };

struct Phantom {
    PhantomKind kind = PhantomKind::CenteredSquare;
    double amplitude = 1.0;
    // Optional C^2 bump added on top of the jump part.
    double smooth_background = 0.0;
    // Field file providing the mask for PhantomKind::CustomMask.
    std::string mask_path;
};

PhantomKind parse_phantom_kind(const std::string& name);
std::string to_string(PhantomKind kind);

// Real-valued, nonnegative field with support strictly inside radius 0.75.
// CenteredSquare jumps on |x|_inf <= 0.3 (side 0.6); CartoonBlob jumps
// across a smooth closed curve r = rho(theta).
ComplexField make_phantom(const Phantom& spec, const Grid2D& grid);
ComplexField make_phantom(PhantomKind kind, const Grid2D& grid, double amplitude);

// Largest |x| over grid cells with nonzero value (0 if identically zero).
double support_max_radius(const ComplexField& f);

// Pixel mask within `width_px` cells of the phantom jump curve, used by the
// edge-concentration diagnostics. Only defined for the two analytic kinds.
std::vector<bool> edge_band_mask(PhantomKind kind, const Grid2D& grid, int width_px);

} // namespace shearscat

#endif
