#include "wnlse/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "wnlse/resonance.hpp"
#include "wnlse/selftest.hpp"
#include "wnlse/study.hpp"
#include "wnlse/weyl.hpp"

namespace wnlse {

namespace {

// --seed flag beats the config seed; a zero config seed falls back to WNLSE_SEED.
void resolve_seed(SimulationConfig& cfg, bool flag_set, std::uint64_t flag_seed) {
    if (flag_set) {
        cfg.averaging.seed = flag_seed;
        return;
    }
    if (cfg.averaging.seed == 0) {
        if (const char* env = std::getenv("WNLSE_SEED")) cfg.averaging.seed = std::strtoull(env, nullptr, 10);
    }
}

nlohmann::json trajectory_diagnostics(const TrajectoryRecord& traj, const SimulationConfig& cfg,
                                      const SpectralBasis& basis) {
    nlohmann::json diag;
    const auto xi = residual_xi(traj, cfg.nonlinearity, basis, cfg.averaging);
    double sup_xi = 0.0;
    for (const auto& row : xi)
        for (double x : row) sup_xi = std::max(sup_xi, std::abs(x));
    diag["sup_xi"] = sup_xi;
    if (cfg.nonlinearity.has_laplacian() && traj.source == TrajectorySource::Perturbed) {
        const DissipationReport rep = dissipation_check(traj, cfg.nonlinearity, basis);
        diag["dissipation_residuals"] = rep.residuals;
        bool all_ok = true;
        for (char ok : rep.bound_satisfied)
            if (!ok) all_ok = false;
        diag["norm_bound_b2"] = rep.b2;
        diag["norm_bound_satisfied"] = all_ok;
    }
    // mass = |v|_0^2, conserved by the linear flow
    std::vector<double> mass;
    for (const auto& h : traj.hp_norms) mass.push_back(h[0] * h[0]);
    diag["mass"] = mass;
    return diag;
}

int run_single(const SimulationConfig& cfg, bool effective) {
    const Potential potential = build_potential(cfg);
    const SpectralBasis basis = assemble_operator(potential, cfg.grid, cfg.truncation);
    const ModeVector v0 = build_initial_modes(cfg, basis);

    TrajectoryRecord traj =
        effective ? integrate_effective(v0, cfg.nonlinearity, basis, cfg.integrator, cfg.averaging)
                  : integrate_perturbed(v0, cfg.nonlinearity, basis, cfg.integrator);

    std::filesystem::create_directories(cfg.output_dir);
    const std::string stem = cfg.output_dir + (effective ? "/effective" : "/trajectory");
    write_trajectory_csv(stem + ".csv", traj);
    write_trajectory_sidecar(stem + ".json", traj, config_to_json(cfg),
                             trajectory_diagnostics(traj, cfg, basis));
    if (traj.diverged) {
        std::cerr << "run diverged at tau = " << traj.divergence_time
                  << " (|v|_2 reached the blow-up threshold)\n";
        return 2;
    }
    std::cout << "wrote " << stem << ".csv (" << traj.size() << " records)\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"spectral averaging toolkit for weakly nonlinear Schrodinger flows on the torus"};
    app.require_subcommand(1);

    std::string config_path, out_override, tolerance_path = "config/selftest_tolerances.json";
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    double epsilon_flag = 0.0;
    bool epsilon_set = false;
    int threads = 0;
    bool xi_only = false;

    auto add_config = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
        if (required) opt->required();
        sub->add_option("--out", out_override, "output directory/file override");
        sub->add_option("--seed", seed_flag, "averaging seed override")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--epsilon", epsilon_flag, "epsilon override")
            ->each([&](const std::string&) { epsilon_set = true; });
    };

    auto* spectrum = app.add_subcommand("spectrum", "assemble A_V, eigendecompose, Weyl fit, export basis");
    add_config(spectrum);
    auto* resonance = app.add_subcommand("resonance", "integer-relation scan over the spectrum");
    add_config(resonance);
    int res_modes = 6, res_maxc = 3;
    double res_tol = 1e-6;
    resonance->add_option("--modes", res_modes, "number of leading modes K");
    resonance->add_option("--max-coeff", res_maxc, "coefficient bound S");
    resonance->add_option("--tol", res_tol, "resonance tolerance");

    auto* weyl = app.add_subcommand("weyl", "quasi-periodic time-average gap table");
    std::vector<double> horizons{10.0, 100.0, 1000.0};
    weyl->add_option("--horizons", horizons, "averaging horizons T");

    auto* simulate = app.add_subcommand("simulate", "one perturbed run");
    add_config(simulate);
    auto* effective = app.add_subcommand("effective", "one effective-equation run");
    add_config(effective);
    auto* converge = app.add_subcommand("converge", "epsilon-sweep convergence study");
    add_config(converge);
    converge->add_flag("--xi-only", xi_only, "integral-residual diagnostics only, skip the effective solve");
    converge->add_option("--threads", threads, "parallel runs cap");

    auto* selftest = app.add_subcommand("selftest", "invariant suite with checked-in tolerances");
    selftest->add_option("--tolerances", tolerance_path, "tolerance JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (selftest->parsed()) {
            const int failures = run_selftest(tolerance_path, std::cout);
            return failures == 0 ? 0 : 3;
        }
        if (weyl->parsed()) {
            TorusTrigPoly f;
            f.dim = 2;
            f.harmonics = {TorusHarmonic{{1, 0, 0, 0}, 1.0, 0.0}};
            const std::vector<double> omega{1.0, std::sqrt(2.0)};
            const std::vector<double> x0{0.3, 0.7};
            std::cout << "non-resonant orbit: omega = (1, sqrt 2), f = cos x1\n";
            std::cout << "T,time_average,haar_average,gap\n";
            for (const WeylGapRow& r : weyl_average_test(omega, f, x0, horizons))
                std::cout << format_g17(r.t_horizon) << ',' << format_g17(r.time_average) << ','
                          << format_g17(r.haar_average) << ',' << format_g17(r.gap) << '\n';
            TorusTrigPoly g;
            g.dim = 2;
            g.harmonics = {TorusHarmonic{{1, -1, 0, 0}, 1.0, 0.0}};
            std::cout << "resonant control: omega = (1, 1), f = cos(x1 - x2)\n";
            std::cout << "T,time_average,haar_average,gap\n";
            for (const WeylGapRow& r : weyl_average_test({1.0, 1.0}, g, x0, horizons))
                std::cout << format_g17(r.t_horizon) << ',' << format_g17(r.time_average) << ','
                          << format_g17(r.haar_average) << ',' << format_g17(r.gap) << '\n';
            return 0;
        }

        SimulationConfig cfg = load_config(config_path);
        resolve_seed(cfg, seed_set, seed_flag);
        if (!out_override.empty()) cfg.output_dir = out_override;
        if (epsilon_set) {
            cfg.integrator.epsilon = epsilon_flag;
            cfg.epsilon_sweep = {epsilon_flag};
            cfg.validate();
        }

        if (spectrum->parsed()) {
            const Potential potential = build_potential(cfg);
            const SpectralBasis basis = assemble_operator(potential, cfg.grid, cfg.truncation);
            std::string out = out_override.empty() ? cfg.output_dir + "/basis.json" : out_override;
            const std::filesystem::path outp(out);
            if (outp.has_parent_path()) std::filesystem::create_directories(outp.parent_path());
            save_basis(basis, out);
            std::cout << "M = " << basis.truncation
                      << ", lambda_1 = " << format_g17(basis.eigenvalues.front())
                      << ", lambda_M = " << format_g17(basis.eigenvalues.back());
            if (basis.truncation >= 16)
                std::cout << ", weyl exponent = " << format_g17(weyl_fit(basis).exponent);
            std::cout << "\nwrote " << out << '\n';
            return 0;
        }
        if (resonance->parsed()) {
            const Potential potential = build_potential(cfg);
            const SpectralBasis basis = assemble_operator(potential, cfg.grid, cfg.truncation);
            const ResonanceReport rep = resonance_scan(basis, res_modes, res_maxc, res_tol);
            std::cout << "verdict: " << verdict_name(rep.verdict)
                      << ", best value = " << format_g17(rep.best_value) << ", witness s = (";
            for (std::size_t i = 0; i < rep.best_vector.size(); ++i)
                std::cout << rep.best_vector[i] << (i + 1 < rep.best_vector.size() ? ", " : "");
            std::cout << ")\n";
            return 0;
        }
        if (simulate->parsed()) return run_single(cfg, false);
        if (effective->parsed()) return run_single(cfg, true);
        if (converge->parsed()) {
            const int nthreads = threads > 0 ? threads
                                             : std::max(1u, std::thread::hardware_concurrency());
            const StudyResult result = convergence_study(cfg, nthreads, xi_only);
            write_study_outputs(cfg, result);
            std::cout << "epsilon,sup_err_q0,sup_err_q1,sup_xi\n";
            for (const StudyRow& r : result.rows)
                std::cout << format_g17(r.epsilon) << ','
                          << (r.sup_err_q0 ? format_g17(*r.sup_err_q0) : std::string()) << ','
                          << (r.sup_err_q1 ? format_g17(*r.sup_err_q1) : std::string()) << ','
                          << format_g17(r.sup_xi) << '\n';
            std::cout << "wrote " << cfg.output_dir << "/study.csv\n";
            return 0;
        }
    } catch (const integration_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace wnlse
