#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wnlse/dynamics.hpp"

namespace wnlse {

// Fixed 17-significant-digit formatting so CSV output is byte-deterministic.
std::string format_g17(double x);

// Long-format trajectory CSV: tau,k,re_v,im_v,action (k is 1-based).
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& traj);

// JSON sidecar: resolved config, per-record norms, diagnostics.
void write_trajectory_sidecar(const std::string& path, const TrajectoryRecord& traj,
                              const nlohmann::json& resolved_config,
                              const nlohmann::json& diagnostics);

struct StudyRow {
    double epsilon = 0.0;
    std::optional<double> sup_err_q0;
    std::optional<double> sup_err_q1;
    std::optional<double> sup_err_linf;
    double sup_xi = 0.0;
    double wallclock_s = 0.0;
};

// study.csv schema (frozen): epsilon,sup_err_q0,sup_err_q1,sup_xi,wallclock_s.
void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace wnlse
