#include "wnlse/study.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <future>

namespace wnlse {

namespace {

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double sup_abs(const std::vector<std::vector<double>>& series) {
    double worst = 0.0;
    for (const auto& row : series)
        for (double x : row) worst = std::max(worst, std::abs(x));
    return worst;
}

}  // namespace

StudyResult convergence_study(const SimulationConfig& cfg, int threads, bool xi_only) {
    cfg.validate();
    const Potential potential = build_potential(cfg);
    const SpectralBasis basis = assemble_operator(potential, cfg.grid, cfg.truncation);
    const ModeVector v0 = build_initial_modes(cfg, basis);

    StudyResult result;
    result.xi_only = xi_only;

    if (!xi_only) {
        IntegratorConfig eff_cfg = cfg.integrator;
        result.effective = integrate_effective(v0, cfg.nonlinearity, basis, eff_cfg, cfg.averaging);
        if (result.effective.diverged)
            throw integration_error("convergence_study: effective run diverged at tau = " +
                                    std::to_string(result.effective.divergence_time));
    }

    struct RunOutcome {
        TrajectoryRecord traj;
        double wallclock = 0.0;
    };
    auto run_one = [&](double eps) {
        const auto start = std::chrono::steady_clock::now();
        IntegratorConfig pc = cfg.integrator;
        pc.epsilon = eps;
        RunOutcome out;
        out.traj = integrate_perturbed(v0, cfg.nonlinearity, basis, pc);
        out.wallclock = elapsed_s(start);
        return out;
    };

    const int n_runs = static_cast<int>(cfg.epsilon_sweep.size());
    std::vector<RunOutcome> outcomes(static_cast<std::size_t>(n_runs));
    threads = std::max(1, threads);
    for (int base = 0; base < n_runs; base += threads) {
        const int batch = std::min(threads, n_runs - base);
        std::vector<std::future<RunOutcome>> futures;
        for (int i = 0; i < batch; ++i)
            futures.push_back(std::async(std::launch::async, run_one,
                                         cfg.epsilon_sweep[static_cast<std::size_t>(base + i)]));
        for (int i = 0; i < batch; ++i)
            outcomes[static_cast<std::size_t>(base + i)] = futures[static_cast<std::size_t>(i)].get();
    }

    for (int i = 0; i < n_runs; ++i) {
        const double eps = cfg.epsilon_sweep[static_cast<std::size_t>(i)];
        RunOutcome& out = outcomes[static_cast<std::size_t>(i)];
        if (out.traj.diverged)
            throw integration_error("convergence_study: perturbed run diverged at epsilon = " +
                                    std::to_string(eps) + ", tau = " +
                                    std::to_string(out.traj.divergence_time));

        StudyRow row;
        row.epsilon = eps;
        row.wallclock_s = out.wallclock;

        for (const auto& h : out.traj.hp_norms) result.sup_v2 = std::max(result.sup_v2, h[2]);

        const auto xi = residual_xi(out.traj, cfg.nonlinearity, basis, cfg.averaging);
        row.sup_xi = sup_abs(xi);

        if (!xi_only) {
            if (out.traj.size() != result.effective.size())
                throw integration_error("convergence_study: record grids do not align");
            double e0 = 0.0, e1 = 0.0;
            std::vector<double> linf_series;
            for (std::size_t j = 0; j < out.traj.size(); ++j) {
                if (std::abs(out.traj.times[j] - result.effective.times[j]) > 1e-12)
                    throw integration_error("convergence_study: record times do not align");
                const ActionVector& a = out.traj.actions[j];
                const ActionVector& b = result.effective.actions[j];
                e0 = std::max(e0, action_distance(a, b, basis, 0.0));
                e1 = std::max(e1, action_distance(a, b, basis, 1.0));
                linf_series.push_back(action_distance_linf(a, b));
            }
            row.sup_err_q0 = e0;
            row.sup_err_q1 = e1;
            row.sup_err_linf = *std::max_element(linf_series.begin(), linf_series.end());
            result.linf_errors.push_back(std::move(linf_series));
        }
        result.rows.push_back(row);
        result.perturbed.push_back(std::move(out.traj));
    }
    return result;
}

void write_study_outputs(const SimulationConfig& cfg, const StudyResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const std::string dir = cfg.output_dir + "/";

    write_study_csv(dir + "study.csv", result.rows);

    const nlohmann::json resolved = config_to_json(cfg);
    if (!result.xi_only) {
        write_trajectory_csv(dir + "effective.csv", result.effective);
        write_trajectory_sidecar(dir + "effective.json", result.effective, resolved, {});
    }
    for (std::size_t i = 0; i < result.perturbed.size(); ++i) {
        char tag[32];
        std::snprintf(tag, sizeof(tag), "%g", cfg.epsilon_sweep[i]);
        write_trajectory_csv(dir + "trajectory_eps_" + tag + ".csv", result.perturbed[i]);
    }

    nlohmann::json summary;
    summary["format_version"] = 1;
    summary["config"] = resolved;
    summary["xi_only"] = result.xi_only;
    summary["sup_v2"] = result.sup_v2;
    nlohmann::json rows = nlohmann::json::array();
    for (const StudyRow& r : result.rows) {
        nlohmann::json row;
        row["epsilon"] = r.epsilon;
        if (r.sup_err_q0) row["sup_err_q0"] = *r.sup_err_q0;
        if (r.sup_err_q1) row["sup_err_q1"] = *r.sup_err_q1;
        if (r.sup_err_linf) row["sup_err_linf"] = *r.sup_err_linf;
        row["sup_xi"] = r.sup_xi;
        row["wallclock_s"] = r.wallclock_s;
        rows.push_back(row);
    }
    summary["rows"] = std::move(rows);
    write_text_file(dir + "summary.json", summary.dump(2) + "\n");
}

}  // namespace wnlse
