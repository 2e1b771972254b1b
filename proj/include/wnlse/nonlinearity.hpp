#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "wnlse/spectral_basis.hpp"

namespace wnlse {

enum class NonlinearityKind { Zero, Cgl, CubicHamiltonian };

// Parameters of the perturbation P. The CGL family is
//   P(u) = [Delta u] - gamma_r f_p(|u|^2) u - i gamma_i f_q(|u|^2) u,
// with the Delta term controlled by include_laplacian_dissipation;
// CubicHamiltonian keeps only the phase part with q; Zero is the unperturbed flow.
struct NonlinearitySpec {
    NonlinearityKind kind = NonlinearityKind::Zero;
    double gamma_r = 0.0;
    double gamma_i = 0.0;
    double exp_p = 1.0;
    double exp_q = 1.0;
    double smoothing_radius = 1e-6;
    bool include_laplacian_dissipation = false;

    void validate() const;
    bool is_zero() const { return kind == NonlinearityKind::Zero; }
    bool has_dissipative_power() const {
        return kind == NonlinearityKind::Cgl && gamma_r != 0.0;
    }
    bool has_hamiltonian_power() const {
        return (kind == NonlinearityKind::Cgl || kind == NonlinearityKind::CubicHamiltonian) &&
               gamma_i != 0.0;
    }
    bool has_laplacian() const {
        return kind == NonlinearityKind::Cgl && include_laplacian_dissipation;
    }
};

std::string nonlinearity_kind_name(NonlinearityKind kind);
NonlinearityKind nonlinearity_kind_from_name(const std::string& name);

// Monomial r^p smoothed near zero: exact power for r >= r0 (or integer p),
// quintic Hermite blend to 0 on [0, r0] with a C^2 match at r0.
double smoothed_power(double r, double p, double r0);

// Pointwise non-stiff right-hand side (everything except the eps^-1 phase).
FieldState eval_field_rhs(const FieldState& u, const NonlinearitySpec& spec);

// P_k(v): the perturbation in mode coordinates,
// mode_transform(eval_field_rhs(mode_inverse(v))).
ModeField eval_P(const ModeVector& v, const NonlinearitySpec& spec, const SpectralBasis& basis);

// Action rates F_k = (v_k, P_k(v)) with the real pairing (a, b) = Re(a conj(b)).
std::vector<double> eval_F(const ModeVector& v, const NonlinearitySpec& spec,
                           const SpectralBasis& basis);

// Angle rates G_k = (P_k, i v_k)/|v_k|^2 where I_k >= floor; components below the
// floor are masked rather than evaluated (the field is singular at I_k = 0).
struct AngleRates {
    std::vector<double> values;
    std::vector<char> defined;
};
AngleRates eval_G(const ModeVector& v, const NonlinearitySpec& spec, const SpectralBasis& basis,
                  double floor_delta);

// Plug-in contract for user-supplied perturbations: the callback receives the
// field value, its Laplacian, the gradient components (second one zero for
// d = 1) and the grid point, and returns the perturbation value there.
using PointwisePerturbation = std::function<cplx(
    const cplx& u, const cplx& lap_u, const std::array<cplx, 2>& grad_u,
    const std::array<double, 2>& x)>;

FieldState eval_field_rhs(const FieldState& u, const PointwisePerturbation& fn);
ModeField eval_P(const ModeVector& v, const PointwisePerturbation& fn,
                 const SpectralBasis& basis);
std::vector<double> eval_F(const ModeVector& v, const PointwisePerturbation& fn,
                           const SpectralBasis& basis);

}  // namespace wnlse
