// Declarative description of one experiment, serializable to JSON.
#ifndef SHEARSCAT_CONFIG_HPP
#define SHEARSCAT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shearscat/inversion.hpp"
#include "shearscat/phantom.hpp"

namespace shearscat {

struct RegularizerConfig {
    std::string kind = "shearlet"; // shearlet | l1 | none
    double p = 1.0;
    double alpha0 = 0.1;

    bool operator==(const RegularizerConfig&) const = default;
};

struct ExperimentConfig {
    int grid_n = 128;
    int scales = 4;
    double k0 = 10.0;
    int transmitters = 8;
    double array_radius = 0.9;

    std::string phantom_kind = "centered-square";
    double phantom_amplitude = 0.5;
    double smooth_background = 0.0;
    std::string mask_path;

    RegularizerConfig regularizer;
    // Benchmark weights, calibrated on the desk problem at rel level 0.005
    // by grid search over {1e-4..1e-1}.
    double alpha0_shearlet = 0.1;
    double alpha0_l1 = 0.1;

    std::vector<double> noise_levels = {0.08, 0.02, 0.005};
    double tau = 1.6;
    std::uint64_t seed = 1;
    int maxiter = 500;
    std::string out_dir = "out";

    double solver_tol = 1e-8;   // Lippmann-Schwinger solves inside inversions
    double forward_tol = 1e-10; // data generation solves
    int freq_q = 32;            // backscattering lattice half-width
    // Clip iterates to real nonnegative values (valid when the scatterer is
    // declared real and nonnegative, as the bundled phantoms are).
    bool real_projection = false;

    bool operator==(const ExperimentConfig&) const = default;

    void validate() const;
    Phantom phantom() const;
    RegularizerSpec regularizer_spec(const ShearletSystemPtr& system) const;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_json(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);
void save_config(const std::string& path, const ExperimentConfig& config);

} // namespace shearscat

#endif
