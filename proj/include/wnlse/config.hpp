#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wnlse/dynamics.hpp"

namespace wnlse {

// Initial datum u0 = sum of mode entries, optionally rescaled to a target
// L2 norm ||u0||_0.
struct InitialModeEntry {
    int mode = 1;  // 1-based
    double re = 1.0;
    double im = 0.0;
};

struct InitialData {
    std::vector<InitialModeEntry> entries{InitialModeEntry{}};
    double normalize_l2 = 0.0;  // 0 disables rescaling
};

// One place for every free parameter of a run: grid, potential, truncation,
// nonlinearity, integrator, sweep, averaging budget, outputs, metadata.
struct SimulationConfig {
    Grid grid{1, 64};
    PotentialDescription potential;
    int truncation = 16;
    NonlinearitySpec nonlinearity;
    IntegratorConfig integrator;
    InitialData initial;
    std::vector<double> epsilon_sweep{0.1};
    double comparison_q = 0.0;
    AveragingBudget averaging;
    std::string output_dir = "out";
    int smoothness_n = 8;

    void validate() const;
};

SimulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimulationConfig& cfg);
SimulationConfig load_config(const std::string& path);

Potential build_potential(const SimulationConfig& cfg);
ModeVector build_initial_modes(const SimulationConfig& cfg, const SpectralBasis& basis);

// The reference study configuration used by the regression suite.
SimulationConfig reference_cgl_config();

}  // namespace wnlse
