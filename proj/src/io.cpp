#include "wnlse/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wnlse {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "tau,k,re_v,im_v,action\n";
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const ModeVector& v = traj.states[j];
        for (std::size_t k = 0; k < v.size(); ++k) {
            out << format_g17(traj.times[j]) << ',' << (k + 1) << ','
                << format_g17(v[k].real()) << ',' << format_g17(v[k].imag()) << ','
                << format_g17(traj.actions[j][k]) << '\n';
        }
    }
}

void write_trajectory_sidecar(const std::string& path, const TrajectoryRecord& traj,
                              const nlohmann::json& resolved_config,
                              const nlohmann::json& diagnostics) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["source"] = traj.source == TrajectorySource::Perturbed ? "perturbed" : "effective";
    j["config"] = resolved_config;
    j["times"] = traj.times;
    nlohmann::json norms;
    std::vector<double> n0, n1, n2;
    for (const auto& h : traj.hp_norms) {
        n0.push_back(h[0]);
        n1.push_back(h[1]);
        n2.push_back(h[2]);
    }
    norms["hp0"] = n0;
    norms["hp1"] = n1;
    norms["hp2"] = n2;
    j["norms"] = norms;
    j["diverged"] = traj.diverged;
    if (traj.diverged) j["divergence_time"] = traj.divergence_time;
    j["diagnostics"] = diagnostics;
    write_text_file(path, j.dump(2) + "\n");
}

void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "epsilon,sup_err_q0,sup_err_q1,sup_xi,wallclock_s\n";
    for (const StudyRow& r : rows) {
        out << format_g17(r.epsilon) << ','
            << (r.sup_err_q0 ? format_g17(*r.sup_err_q0) : "") << ','
            << (r.sup_err_q1 ? format_g17(*r.sup_err_q1) : "") << ','
            << format_g17(r.sup_xi) << ',' << format_g17(r.wallclock_s) << '\n';
    }
}

}  // namespace wnlse
