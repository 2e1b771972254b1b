#pragma once

#include "wnlse/config.hpp"
#include "wnlse/io.hpp"

namespace wnlse {

// Everything the epsilon-sweep produces, kept in memory so callers can write
// CSVs or assert on the curves directly.
struct StudyResult {
    std::vector<StudyRow> rows;              // one per epsilon, sweep order
    TrajectoryRecord effective;              // empty when xi_only
    std::vector<TrajectoryRecord> perturbed; // one per epsilon
    std::vector<std::vector<double>> linf_errors;  // per epsilon, per record
    double sup_v2 = 0.0;                     // a-priori bound observed across the sweep
    bool xi_only = false;
};

// Runs the effective flow once, then the perturbed flow for every epsilon in
// the sweep (fanned out over up to `threads` workers), and measures
// e(eps) = sup_tau |I(v^eps) - I^0|~_q for q = 0, 1 plus sup|Xi|.
// Throws integration_error naming the offending epsilon if any run diverges.
StudyResult convergence_study(const SimulationConfig& cfg, int threads = 1,
                              bool xi_only = false);

// Writes study.csv, summary.json and per-run trajectory CSVs into output_dir.
void write_study_outputs(const SimulationConfig& cfg, const StudyResult& result);

}  // namespace wnlse
