#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnlse/averaging.hpp"

namespace wnlse {

enum class Scheme { StrangExactPhase, EtdRk2 };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Integration in slow time tau = eps * t on [0, t_final]. The stiff eps^-1
// rotation is always advanced exactly, so the step cost is independent of eps.
struct IntegratorConfig {
    double dt_slow = 1.0 / 1024.0;
    double t_final = 1.0;
    double epsilon = 0.1;
    Scheme scheme = Scheme::StrangExactPhase;
    int record_every = 16;
    double blowup_threshold = 50.0;  // on |v|_2

    void validate() const {
        if (dt_slow <= 0.0) throw std::invalid_argument("IntegratorConfig: dt_slow > 0 required");
        if (t_final <= 0.0) throw std::invalid_argument("IntegratorConfig: t_final > 0 required");
        if (epsilon <= 0.0 || epsilon > 1.0)
            throw std::invalid_argument("IntegratorConfig: epsilon must lie in (0, 1]");
        if (record_every < 1)
            throw std::invalid_argument("IntegratorConfig: record_every >= 1 required");
        if (blowup_threshold <= 0.0)
            throw std::invalid_argument("IntegratorConfig: blowup_threshold > 0 required");
    }
};

class integration_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class TrajectorySource { Perturbed, Effective };

struct TrajectoryRecord {
    TrajectorySource source = TrajectorySource::Perturbed;
    std::vector<double> times;               // slow time, strictly increasing, times[0] = 0
    std::vector<ModeVector> states;
    std::vector<ActionVector> actions;
    std::vector<std::array<double, 3>> hp_norms;  // |v|_p for p = 0, 1, 2
    bool diverged = false;
    double divergence_time = 0.0;

    std::size_t size() const { return times.size(); }
};

// Perturbed flow v' = -i eps^-1 lambda v + P(v), Strang splitting with exact
// phase (default) or ETD2RK.
TrajectoryRecord integrate_perturbed(const ModeVector& v0, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const IntegratorConfig& cfg);

// Effective flow v' = R(v): the linear diagonal -lambda_k + M_k is advanced
// exactly; the remainder uses the resonant closed form when the power parts
// are cubic and a numeric theta-average otherwise.
TrajectoryRecord integrate_effective(const ModeVector& v0, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const IntegratorConfig& cfg,
                                     const AveragingBudget& budget = {});

// The averaged action curve I^0(tau), read off the effective run.
std::vector<ActionVector> averaged_actions(const TrajectoryRecord& traj);

// Residual Xi_k(tau_j) = I_k(tau_j) - I_k(0) - integral of <F_k>(I(s)) ds,
// trapezoid over the recorded grid, <F_k> evaluated at lifted states.
std::vector<std::vector<double>> residual_xi(const TrajectoryRecord& traj,
                                             const NonlinearitySpec& spec,
                                             const SpectralBasis& basis,
                                             const AveragingBudget& budget);

// L2 dissipation identity diagnostics for the CGL flow with the Delta term:
// centered-difference residual of d/dtau ||u||_0^2 at interior records plus the
// B2 = gamma_r^(-1/2p) norm-bound series.
struct DissipationReport {
    std::vector<double> residuals;       // interior records, times[1..n-2]
    std::vector<char> bound_satisfied;   // all records
    double b2 = 0.0;
};
DissipationReport dissipation_check(const TrajectoryRecord& traj, const NonlinearitySpec& spec,
                                    const SpectralBasis& basis);

}  // namespace wnlse
