#include "shearscat/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace shearscat {

using nlohmann::json;

void ExperimentConfig::validate() const {
    Grid2D grid(grid_n); // checks power of two >= 16
    if (scales < 1 || scales > ShearletSystem::max_scales(grid_n))
        throw std::invalid_argument("config: scales out of range for grid_n");
    if (!(k0 > 0.0)) throw std::invalid_argument("config: k0 must be positive");
    if (transmitters < 1) throw std::invalid_argument("config: transmitters must be >= 1");
    if (!(array_radius > support_radius))
        throw std::invalid_argument("config: array_radius must exceed the support radius 0.75");
    parse_phantom_kind(phantom_kind);
    if (phantom_amplitude < 0.0) throw std::invalid_argument("config: amplitude must be >= 0");
    parse_regularizer_kind(regularizer.kind);
    if (regularizer.p < 1.0 || regularizer.p > 2.0)
        throw std::invalid_argument("config: regularizer p must lie in [1,2]");
    if (regularizer.kind != "none" && !(regularizer.alpha0 > 0.0))
        throw std::invalid_argument("config: alpha0 must be positive");
    if (!(alpha0_shearlet > 0.0) || !(alpha0_l1 > 0.0))
        throw std::invalid_argument("config: benchmark alpha0 values must be positive");
    for (double lvl : noise_levels)
        if (lvl < 0.0) throw std::invalid_argument("config: noise levels must be >= 0");
    if (noise_levels.empty()) throw std::invalid_argument("config: noise level list is empty");
    if (tau < 1.0) throw std::invalid_argument("config: tau must be >= 1");
    if (maxiter < 1) throw std::invalid_argument("config: maxiter must be >= 1");
    if (!(solver_tol > 0.0 && solver_tol < 1.0) || !(forward_tol > 0.0 && forward_tol < 1.0))
        throw std::invalid_argument("config: tolerances must lie in (0,1)");
    if (freq_q < 4) throw std::invalid_argument("config: freq_q must be >= 4");
    if (2 * freq_q >= grid_n)
        throw std::invalid_argument("config: need 2*freq_q < grid_n");
}

Phantom ExperimentConfig::phantom() const {
    Phantom p;
    p.kind = parse_phantom_kind(phantom_kind);
    p.amplitude = phantom_amplitude;
    p.smooth_background = smooth_background;
    p.mask_path = mask_path;
    return p;
}

RegularizerSpec ExperimentConfig::regularizer_spec(const ShearletSystemPtr& system) const {
    RegularizerSpec spec;
    spec.kind = parse_regularizer_kind(regularizer.kind);
    spec.p = regularizer.p;
    spec.alpha0 = regularizer.alpha0;
    spec.system = system;
    return spec;
}

namespace {

const std::set<std::string> known_keys = {
    "grid_n",      "scales",        "k0",          "transmitters",   "array_radius",
    "phantom",     "regularizer",   "alpha0_shearlet", "alpha0_l1",
    "noise_levels", "tau",          "seed",        "maxiter",        "out_dir",
    "solver_tol",  "forward_tol",   "freq_q",          "real_projection"};
const std::set<std::string> known_phantom_keys = {"kind", "amplitude", "smooth_background",
                                                  "mask_path"};
const std::set<std::string> known_reg_keys = {"kind", "p", "alpha0"};

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

} // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    reject_unknown(j, known_keys, "top level");

    ExperimentConfig c;
    if (j.contains("grid_n")) c.grid_n = j.at("grid_n").get<int>();
    if (j.contains("scales"))
        c.scales = j.at("scales").get<int>();
    else
        c.scales = std::min(4, ShearletSystem::max_scales(c.grid_n));
    if (j.contains("k0")) c.k0 = j.at("k0").get<double>();
    if (j.contains("transmitters")) c.transmitters = j.at("transmitters").get<int>();
    if (j.contains("array_radius")) c.array_radius = j.at("array_radius").get<double>();
    if (j.contains("phantom")) {
        const json& p = j.at("phantom");
        reject_unknown(p, known_phantom_keys, "phantom");
        if (p.contains("kind")) c.phantom_kind = p.at("kind").get<std::string>();
        if (p.contains("amplitude")) c.phantom_amplitude = p.at("amplitude").get<double>();
        if (p.contains("smooth_background")) c.smooth_background = p.at("smooth_background").get<double>();
        if (p.contains("mask_path")) c.mask_path = p.at("mask_path").get<std::string>();
    }
    if (j.contains("regularizer")) {
        const json& r = j.at("regularizer");
        reject_unknown(r, known_reg_keys, "regularizer");
        if (r.contains("kind")) c.regularizer.kind = r.at("kind").get<std::string>();
        if (r.contains("p")) c.regularizer.p = r.at("p").get<double>();
        if (r.contains("alpha0")) c.regularizer.alpha0 = r.at("alpha0").get<double>();
    }
    if (j.contains("alpha0_shearlet")) c.alpha0_shearlet = j.at("alpha0_shearlet").get<double>();
    if (j.contains("alpha0_l1")) c.alpha0_l1 = j.at("alpha0_l1").get<double>();
    if (j.contains("noise_levels")) c.noise_levels = j.at("noise_levels").get<std::vector<double>>();
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("maxiter")) c.maxiter = j.at("maxiter").get<int>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("solver_tol")) c.solver_tol = j.at("solver_tol").get<double>();
    if (j.contains("forward_tol")) c.forward_tol = j.at("forward_tol").get<double>();
    if (j.contains("freq_q"))
        c.freq_q = j.at("freq_q").get<int>();
    else
        c.freq_q = std::min(32, c.grid_n / 4);
    if (j.contains("real_projection")) c.real_projection = j.at("real_projection").get<bool>();

    c.validate();
    return c;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    json j;
    j["grid_n"] = c.grid_n;
    j["scales"] = c.scales;
    j["k0"] = c.k0;
    j["transmitters"] = c.transmitters;
    j["array_radius"] = c.array_radius;
    j["phantom"] = {{"kind", c.phantom_kind},
                    {"amplitude", c.phantom_amplitude},
                    {"smooth_background", c.smooth_background},
                    {"mask_path", c.mask_path}};
    j["regularizer"] = {{"kind", c.regularizer.kind}, {"p", c.regularizer.p},
                        {"alpha0", c.regularizer.alpha0}};
    j["alpha0_shearlet"] = c.alpha0_shearlet;
    j["alpha0_l1"] = c.alpha0_l1;
    j["noise_levels"] = c.noise_levels;
    j["tau"] = c.tau;
    j["seed"] = c.seed;
    j["maxiter"] = c.maxiter;
    j["out_dir"] = c.out_dir;
    j["solver_tol"] = c.solver_tol;
    j["forward_tol"] = c.forward_tol;
    j["freq_q"] = c.freq_q;
    j["real_projection"] = c.real_projection;
    return j.dump(2);
}

void save_config(const std::string& path, const ExperimentConfig& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << serialize_config(config) << "\n";
}

} // namespace shearscat
