#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wnlse/action_angle.hpp"
#include "wnlse/nonlinearity.hpp"

namespace wnlse {

enum class AveragingMethod { Auto, TensorQuadrature, MonteCarlo, ClosedForm };

// Budget for angle averages. Tensor quadrature is used when at most
// max_quadrature_angles angles are active (|v_k| > 0); Monte Carlo beyond.
struct AveragingBudget {
    AveragingMethod method = AveragingMethod::Auto;
    int nodes_per_angle = 8;   // exact for trig degree <= 7 per angle
    long samples = 4096;       // Monte Carlo budget
    std::uint64_t seed = 0;
    int max_quadrature_angles = 3;
};

struct AverageEstimate {
    std::vector<double> value;
    std::vector<double> std_error;  // zero unless Monte Carlo
    long samples = 0;
    AveragingMethod method = AveragingMethod::Auto;
};

using RealVectorFn = std::function<std::vector<double>(const ModeVector&)>;

// Average of f over the first N angles (tensor-product rectangle rule,
// spectrally exact for trig polynomials of degree < nodes_per_angle).
AverageEstimate partial_average(const RealVectorFn& f, const ModeVector& v, int first_angles,
                                int nodes_per_angle);

// Seeded Monte Carlo average of f over all M angles; deterministic for a fixed
// seed and independent of how the sample stream is partitioned into chunks.
AverageEstimate full_average_mc(const RealVectorFn& f, const ModeVector& v, long samples,
                                std::uint64_t seed);

// Effective vector field R(v), the theta-average of Phi_{-theta} P(Phi_theta v).
struct EffectiveFieldEstimate {
    ModeField field;
    std::vector<double> std_error;  // per-mode combined re/im error (MC only)
    long samples = 0;
    AveragingMethod method = AveragingMethod::Auto;
};
EffectiveFieldEstimate effective_field(const ModeVector& v, const NonlinearitySpec& spec,
                                       const SpectralBasis& basis, const AveragingBudget& budget);

// Same average for any perturbation given as a P-evaluator (plug-in route).
using ModeFieldFn = std::function<ModeField(const ModeVector&)>;
EffectiveFieldEstimate effective_field(const ModeVector& v, const ModeFieldFn& p_eval,
                                       const AveragingBudget& budget);

// Closed-form linear part of the CGL effective field: (-lambda_k + M_k)_k with
// M_k = <V zeta_k, zeta_k> by grid quadrature.
std::vector<double> cgl_effective_linear(const SpectralBasis& basis, const Potential& potential);

// Resonant-monomial data for the cubic (p = 1) closed forms: the diagonal mean
// potential M_k and the quartic overlaps C_ak = integral of zeta_a^2 zeta_k^2.
struct CubicResonantTable {
    std::vector<double> mean_potential;   // M_k
    std::vector<double> quartic_overlap;  // row-major M x M, symmetric
    int modes = 0;

    double overlap(int a, int k) const {
        return quartic_overlap[static_cast<std::size_t>(a) * modes + k];
    }
};
CubicResonantTable build_cubic_resonant_table(const SpectralBasis& basis);

// Angle-averaged cubic amplitude: rho_k(v) = 2 sum_a C_ak |v_a|^2 - C_kk |v_k|^2.
// The theta-average of the cubic dissipative term is -gamma_r rho_k v_k and of
// the cubic Hamiltonian term is -i gamma_i rho_k v_k.
std::vector<double> resonant_cubic_amplitude(const ModeVector& v,
                                             const CubicResonantTable& table);

// Whether <F> and the effective field admit the resonant closed form for this
// nonlinearity (any gamma_i: the Hamiltonian part never moves actions).
bool closed_form_action_rate_available(const NonlinearitySpec& spec);

// <F_k>(I): the averaged action field of eq. İ_k = F_k, evaluated at the
// actions of v (any lift gives the same value). Dispatches closed form /
// tensor quadrature / Monte Carlo per the budget.
AverageEstimate averaged_action_rate(const ModeVector& v, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const AveragingBudget& budget);

// max_k |(v_k, R^3_k(v))| where R^3 is the theta-average of the Hamiltonian
// part alone; vanishes within estimator error.
double verify_r3_null(const ModeVector& v, const NonlinearitySpec& spec,
                      const SpectralBasis& basis, const AveragingBudget& budget);

}  // namespace wnlse
