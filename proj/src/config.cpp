#include "wnlse/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wnlse {

void SimulationConfig::validate() const {
    grid.validate();
    nonlinearity.validate();
    integrator.validate();
    if (truncation < 1 || double(truncation) > std::pow(double(grid.points_per_axis) / 3.0, grid.dim))
        throw std::invalid_argument("config: truncation must satisfy 1 <= M <= (N/3)^d");
    if (epsilon_sweep.empty())
        throw std::invalid_argument("config: epsilon_sweep must not be empty");
    for (std::size_t i = 0; i < epsilon_sweep.size(); ++i) {
        if (epsilon_sweep[i] <= 0.0 || epsilon_sweep[i] > 1.0)
            throw std::invalid_argument("config: sweep epsilons must lie in (0, 1]");
        if (i > 0 && epsilon_sweep[i] >= epsilon_sweep[i - 1])
            throw std::invalid_argument("config: epsilon_sweep must be strictly decreasing");
    }
    if (initial.entries.empty())
        throw std::invalid_argument("config: initial data needs at least one mode entry");
    for (const InitialModeEntry& e : initial.entries)
        if (e.mode < 1 || e.mode > truncation)
            throw std::invalid_argument("config: initial mode index out of range");
    if (initial.normalize_l2 < 0.0)
        throw std::invalid_argument("config: normalize_l2 must be >= 0");
    if (averaging.nodes_per_angle < 4)
        throw std::invalid_argument("config: averaging nodes_per_angle must be >= 4");
    if (averaging.samples < 16)
        throw std::invalid_argument("config: averaging samples must be >= 16");
}

namespace {

PotentialDescription potential_from_json(const nlohmann::json& pj) {
    PotentialDescription d;
    d.kind = potential_kind_from_name(pj.at("kind").get<std::string>());
    d.constant = pj.value("constant", 1.0);
    d.seed = pj.value("seed", std::uint64_t(0));
    d.degree = pj.value("degree", 2);
    d.amplitude = pj.value("amplitude", 0.3);
    if (pj.contains("terms")) {
        for (const auto& tj : pj.at("terms")) {
            TrigTerm t;
            const auto& wv = tj.at("wavevector");
            t.wavevector[0] = wv.at(0).get<int>();
            t.wavevector[1] = wv.size() > 1 ? wv.at(1).get<int>() : 0;
            t.cos_amp = tj.value("cos", 0.0);
            t.sin_amp = tj.value("sin", 0.0);
            d.terms.push_back(t);
        }
    }
    return d;
}

nlohmann::json potential_to_json(const PotentialDescription& d) {
    nlohmann::json pj;
    pj["kind"] = potential_kind_name(d.kind);
    pj["constant"] = d.constant;
    if (d.kind == PotentialKind::RandomTrig) {
        pj["seed"] = d.seed;
        pj["degree"] = d.degree;
        pj["amplitude"] = d.amplitude;
    }
    if (!d.terms.empty()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const TrigTerm& t : d.terms)
            terms.push_back({{"wavevector", {t.wavevector[0], t.wavevector[1]}},
                             {"cos", t.cos_amp},
                             {"sin", t.sin_amp}});
        pj["terms"] = std::move(terms);
    }
    if (d.applied_shift != 0.0) pj["applied_shift"] = d.applied_shift;
    return pj;
}

AveragingMethod method_from_name(const std::string& name) {
    if (name == "auto") return AveragingMethod::Auto;
    if (name == "tensor_quadrature") return AveragingMethod::TensorQuadrature;
    if (name == "monte_carlo") return AveragingMethod::MonteCarlo;
    if (name == "closed_form") return AveragingMethod::ClosedForm;
    throw std::invalid_argument("unknown averaging method: " + name);
}

std::string method_name(AveragingMethod m) {
    switch (m) {
        case AveragingMethod::Auto: return "auto";
        case AveragingMethod::TensorQuadrature: return "tensor_quadrature";
        case AveragingMethod::MonteCarlo: return "monte_carlo";
        case AveragingMethod::ClosedForm: return "closed_form";
    }
    return "auto";
}

}  // namespace

SimulationConfig config_from_json(const nlohmann::json& j) {
    SimulationConfig cfg;
    const auto& gj = j.at("grid");
    cfg.grid = Grid(gj.at("dim").get<int>(), gj.at("points_per_axis").get<int>());
    cfg.potential = potential_from_json(j.at("potential"));
    cfg.truncation = j.at("truncation").get<int>();

    const auto& nj = j.at("nonlinearity");
    cfg.nonlinearity.kind = nonlinearity_kind_from_name(nj.at("kind").get<std::string>());
    cfg.nonlinearity.gamma_r = nj.value("gamma_r", 0.0);
    cfg.nonlinearity.gamma_i = nj.value("gamma_i", 0.0);
    cfg.nonlinearity.exp_p = nj.value("exp_p", 1.0);
    cfg.nonlinearity.exp_q = nj.value("exp_q", 1.0);
    cfg.nonlinearity.smoothing_radius = nj.value("smoothing_radius", 1e-6);
    cfg.nonlinearity.include_laplacian_dissipation = nj.value("include_laplacian", false);

    const auto& ij = j.at("integrator");
    cfg.integrator.dt_slow = ij.at("dt_slow").get<double>();
    cfg.integrator.t_final = ij.value("t_final", 1.0);
    cfg.integrator.epsilon = ij.value("epsilon", 0.1);
    cfg.integrator.scheme = scheme_from_name(ij.value("scheme", std::string("strang_exact_phase")));
    cfg.integrator.record_every = ij.value("record_every", 16);
    cfg.integrator.blowup_threshold = ij.value("blowup_threshold", 50.0);

    if (j.contains("initial")) {
        const auto& init = j.at("initial");
        cfg.initial.entries.clear();
        for (const auto& ej : init.at("modes")) {
            InitialModeEntry e;
            e.mode = ej.at("mode").get<int>();
            e.re = ej.value("re", 0.0);
            e.im = ej.value("im", 0.0);
            cfg.initial.entries.push_back(e);
        }
        cfg.initial.normalize_l2 = init.value("normalize_l2", 0.0);
    }

    cfg.epsilon_sweep = j.value("epsilon_sweep", std::vector<double>{cfg.integrator.epsilon});
    cfg.comparison_q = j.value("comparison_q", 0.0);

    if (j.contains("averaging")) {
        const auto& aj = j.at("averaging");
        cfg.averaging.method = method_from_name(aj.value("method", std::string("auto")));
        cfg.averaging.nodes_per_angle = aj.value("nodes_per_angle", 8);
        cfg.averaging.samples = aj.value("samples", long(4096));
        cfg.averaging.seed = aj.value("seed", std::uint64_t(0));
    }
    if (j.contains("output")) cfg.output_dir = j.at("output").value("directory", std::string("out"));
    cfg.smoothness_n = j.value("smoothness_n", 8);
    cfg.validate();
    return cfg;
}

nlohmann::json config_to_json(const SimulationConfig& cfg) {
    nlohmann::json j;
    j["grid"] = {{"dim", cfg.grid.dim}, {"points_per_axis", cfg.grid.points_per_axis}};
    j["potential"] = potential_to_json(cfg.potential);
    j["truncation"] = cfg.truncation;
    j["nonlinearity"] = {{"kind", nonlinearity_kind_name(cfg.nonlinearity.kind)},
                         {"gamma_r", cfg.nonlinearity.gamma_r},
                         {"gamma_i", cfg.nonlinearity.gamma_i},
                         {"exp_p", cfg.nonlinearity.exp_p},
                         {"exp_q", cfg.nonlinearity.exp_q},
                         {"smoothing_radius", cfg.nonlinearity.smoothing_radius},
                         {"include_laplacian", cfg.nonlinearity.include_laplacian_dissipation}};
    j["integrator"] = {{"dt_slow", cfg.integrator.dt_slow},
                       {"t_final", cfg.integrator.t_final},
                       {"epsilon", cfg.integrator.epsilon},
                       {"scheme", scheme_name(cfg.integrator.scheme)},
                       {"record_every", cfg.integrator.record_every},
                       {"blowup_threshold", cfg.integrator.blowup_threshold}};
    nlohmann::json modes = nlohmann::json::array();
    for (const InitialModeEntry& e : cfg.initial.entries)
        modes.push_back({{"mode", e.mode}, {"re", e.re}, {"im", e.im}});
    j["initial"] = {{"modes", std::move(modes)}, {"normalize_l2", cfg.initial.normalize_l2}};
    j["epsilon_sweep"] = cfg.epsilon_sweep;
    j["comparison_q"] = cfg.comparison_q;
    j["averaging"] = {{"method", method_name(cfg.averaging.method)},
                      {"nodes_per_angle", cfg.averaging.nodes_per_angle},
                      {"samples", cfg.averaging.samples},
                      {"seed", cfg.averaging.seed}};
    j["output"] = {{"directory", cfg.output_dir}};
    j["smoothness_n"] = cfg.smoothness_n;
    return j;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config schema violation: ") + e.what());
    }
}

Potential build_potential(const SimulationConfig& cfg) {
    switch (cfg.potential.kind) {
        case PotentialKind::Constant:
            return make_constant_potential(cfg.grid, cfg.potential.constant);
        case PotentialKind::TrigPolynomial:
            return make_trig_potential(cfg.grid, cfg.potential.constant, cfg.potential.terms);
        case PotentialKind::RandomTrig:
            return make_random_trig_potential(cfg.grid, cfg.potential.seed, cfg.potential.degree,
                                              cfg.potential.amplitude);
    }
    throw std::invalid_argument("build_potential: unknown kind");
}

ModeVector build_initial_modes(const SimulationConfig& cfg, const SpectralBasis& basis) {
    ModeVector v(static_cast<std::size_t>(basis.truncation));
    for (const InitialModeEntry& e : cfg.initial.entries)
        v[static_cast<std::size_t>(e.mode - 1)] += cplx(e.re, e.im);
    if (cfg.initial.normalize_l2 > 0.0) {
        const double current = hp_norm(v, basis, 0.0);  // equals ||u0||_0 by Parseval
        if (current == 0.0)
            throw std::invalid_argument("build_initial_modes: cannot normalize zero data");
        const double scale = cfg.initial.normalize_l2 / current;
        for (auto& c : v.coeffs) c *= scale;
    }
    return v;
}

SimulationConfig reference_cgl_config() {
    SimulationConfig cfg;
    cfg.grid = Grid(1, 64);
    cfg.potential.kind = PotentialKind::TrigPolynomial;
    cfg.potential.constant = 1.0;
    cfg.potential.terms = {TrigTerm{{1, 0}, 0.5, 0.0}, TrigTerm{{2, 0}, 0.0, 0.3}};
    cfg.truncation = 16;
    cfg.nonlinearity.kind = NonlinearityKind::Cgl;
    cfg.nonlinearity.gamma_r = 1.0;
    cfg.nonlinearity.gamma_i = 1.0;
    cfg.nonlinearity.exp_p = 1.0;
    cfg.nonlinearity.exp_q = 1.0;
    cfg.nonlinearity.include_laplacian_dissipation = true;
    cfg.integrator.dt_slow = 1.0 / 1024.0;
    cfg.integrator.t_final = 1.0;
    cfg.integrator.epsilon = 0.1;
    cfg.integrator.record_every = 16;
    cfg.integrator.blowup_threshold = 50.0;
    cfg.initial.entries = {InitialModeEntry{1, 1.0, 1.0}};
    cfg.initial.normalize_l2 = 1.0;
    cfg.epsilon_sweep = {0.2, 0.1, 0.05, 0.025};
    cfg.comparison_q = 0.0;
    cfg.averaging.method = AveragingMethod::Auto;
    cfg.averaging.nodes_per_angle = 8;
    cfg.averaging.samples = 4096;
    cfg.averaging.seed = 20240817;
    cfg.validate();
    return cfg;
}

}  // namespace wnlse
