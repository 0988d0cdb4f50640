// Digital cone-adapted shearlet frame on the FFT grid.
//
// The construction is the translation-invariant (undecimated) one: every
// filter is a real Meyer-type window in frequency, the analysis transform
// convolves with each filter, and division by the pointwise dual weight
// sum |psi_hat|^2 gives an exact canonical-dual reconstruction.
//
// Filters at scale j use the radial band b_j (dyadic Meyer bank on the
// cone axis frequency, top band left open so coverage reaches the grid
// corners), sheared slope windows v(K_j s - k) with K_j = 2^ceil(j/2) and
// |k| <= K_j, and a max-norm Meyer lowpass. The slope windows satisfy
// sum_k v(x-k)^2 = 1, so the dual weight stays in [1, 3] and the frame
// bounds are uniform in the grid size.
#ifndef SHEARSCAT_SHEARLET_HPP
#define SHEARSCAT_SHEARLET_HPP

#include <memory>
#include <utility>
#include <vector>

#include "shearscat/grid.hpp"

namespace shearscat {

enum class Cone { Lowpass, Horizontal, Vertical };

struct ShearletIndex {
    Cone cone = Cone::Lowpass;
    int scale = -1; // j >= 0 for cone filters, -1 for the lowpass
    int shear = 0;  // |k| <= 2^ceil(j/2)
};

class ShearletSystem {
public:
    ShearletSystem(const Grid2D& grid, int scales);

    const Grid2D& grid() const { return grid_; }
    int scales() const { return scales_; }
    std::size_t filter_count() const { return filters_.size(); }
    const std::vector<ShearletIndex>& indices() const { return indices_; }
    // Frequency-domain filter in FFT layout (real valued).
    const std::vector<double>& filter(std::size_t p) const { return filters_[p]; }
    const std::vector<double>& dual_weight() const { return dual_weight_; }
    double frame_lower() const { return frame_lower_; }
    double frame_upper() const { return frame_upper_; }

    static int max_scales(int n); // log2(n) - 3

private:
    Grid2D grid_;
    int scales_;
    std::vector<ShearletIndex> indices_;
    std::vector<std::vector<double>> filters_;
    std::vector<double> dual_weight_;
    double frame_lower_ = 0.0;
    double frame_upper_ = 0.0;
};

using ShearletSystemPtr = std::shared_ptr<const ShearletSystem>;

ShearletSystemPtr build_system(const Grid2D& grid, int scales);

// Undecimated coefficient stack: one complex plane per filter.
class CoefficientSet {
public:
    CoefficientSet(ShearletSystemPtr system, std::vector<std::vector<Complex>> planes);

    const ShearletSystem& system() const { return *system_; }
    ShearletSystemPtr system_ptr() const { return system_; }
    std::size_t plane_count() const { return planes_.size(); }
    std::vector<Complex>& plane(std::size_t p) { return planes_[p]; }
    const std::vector<Complex>& plane(std::size_t p) const { return planes_[p]; }
    std::size_t coefficient_count() const;

private:
    ShearletSystemPtr system_;
    std::vector<std::vector<Complex>> planes_;
};

CoefficientSet analyze(const ShearletSystemPtr& system, const ComplexField& f);
ComplexField synthesize_dual(const CoefficientSet& coeffs);

// Complex soft shrinkage with threshold theta >= 0 on every coefficient.
CoefficientSet soft_threshold(const CoefficientSet& coeffs, double theta);
void soft_threshold_in_place(CoefficientSet& coeffs, double theta);

// Keep the N largest-magnitude coefficients, reconstruct with the dual,
// return the approximation and its relative L2 error.
std::pair<ComplexField, double> n_term_approx(const ShearletSystemPtr& system,
                                              const ComplexField& f, std::size_t N);

// Reconstruction from the planes of scale j only (both cones).
ComplexField level_restricted_reconstruction(const ShearletSystemPtr& system,
                                             const ComplexField& f, int level);
// Same but from an existing coefficient set; level -1 selects the lowpass.
ComplexField level_restricted_reconstruction(const CoefficientSet& coeffs, int level);

} // namespace shearscat

#endif
