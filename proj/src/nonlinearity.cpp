#include "wnlse/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "wnlse/fourier.hpp"

namespace wnlse {

void NonlinearitySpec::validate() const {
    if (gamma_r < 0.0 || gamma_i < 0.0)
        throw std::domain_error("NonlinearitySpec: gamma_r and gamma_i must be >= 0");
    if (exp_p < 0.0 || exp_q < 0.0)
        throw std::domain_error("NonlinearitySpec: exponents must be >= 0");
    if (smoothing_radius < 0.0)
        throw std::domain_error("NonlinearitySpec: smoothing radius must be >= 0");
}

std::string nonlinearity_kind_name(NonlinearityKind kind) {
    switch (kind) {
        case NonlinearityKind::Zero: return "zero";
        case NonlinearityKind::Cgl: return "cgl";
        case NonlinearityKind::CubicHamiltonian: return "cubic_hamiltonian";
    }
    return "unknown";
}

NonlinearityKind nonlinearity_kind_from_name(const std::string& name) {
    if (name == "zero") return NonlinearityKind::Zero;
    if (name == "cgl") return NonlinearityKind::Cgl;
    if (name == "cubic_hamiltonian") return NonlinearityKind::CubicHamiltonian;
    throw std::invalid_argument("unknown nonlinearity kind: " + name);
}

namespace {

bool is_nonneg_integer(double p) {
    return p >= 0.0 && std::abs(p - std::round(p)) < 1e-12;
}

}  // namespace

double smoothed_power(double r, double p, double r0) {
    if (p == 0.0) return 1.0;
    if (is_nonneg_integer(p) || r0 <= 0.0 || r >= r0) return std::pow(r, p);
    if (r <= 0.0) return 0.0;
    // quintic q(s) = a s^3 + b s^4 + c s^5 matching value and two derivatives
    // of s^p at s = 1 and vanishing to second order at s = 0
    const double c = 0.5 * (p - 3.0) * (p - 4.0);
    const double b = (p - 3.0) * (5.0 - p);
    const double a = 1.0 - b - c;
    const double s = r / r0;
    return std::pow(r0, p) * (s * s * s * (a + s * (b + s * c)));
}

FieldState eval_field_rhs(const FieldState& u, const NonlinearitySpec& spec) {
    spec.validate();
    FieldState out(u.grid);
    if (spec.is_zero()) return out;

    if (spec.has_laplacian()) out = laplacian(u);

    const bool diss = spec.has_dissipative_power();
    const bool ham = spec.has_hamiltonian_power();
    if (diss || ham) {
        for (std::size_t g = 0; g < u.values.size(); ++g) {
            const cplx z = u.values[g];
            const double r = std::norm(z);
            cplx coeff(0.0, 0.0);
            if (diss) coeff -= spec.gamma_r * smoothed_power(r, spec.exp_p, spec.smoothing_radius);
            if (ham)
                coeff -= cplx(0.0, spec.gamma_i) *
                         smoothed_power(r, spec.exp_q, spec.smoothing_radius);
            out.values[g] += coeff * z;
        }
    }
    return out;
}

ModeField eval_P(const ModeVector& v, const NonlinearitySpec& spec, const SpectralBasis& basis) {
    ModeField P(v.size());
    if (spec.is_zero()) return P;
    const FieldState u = mode_inverse(v, basis);
    const ModeVector proj = mode_transform(eval_field_rhs(u, spec), basis);
    for (std::size_t k = 0; k < v.size(); ++k) P[k] = proj[k];
    return P;
}

std::vector<double> eval_F(const ModeVector& v, const NonlinearitySpec& spec,
                           const SpectralBasis& basis) {
    const ModeField P = eval_P(v, spec, basis);
    std::vector<double> F(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k)
        F[k] = std::real(v[k] * std::conj(P[k]));
    return F;
}

FieldState eval_field_rhs(const FieldState& u, const PointwisePerturbation& fn) {
    const FieldState lap = laplacian(u);
    const std::array<FieldState, 2> grad = gradient(u);
    FieldState out(u.grid);
    for (std::size_t g = 0; g < u.values.size(); ++g)
        out.values[g] = fn(u.values[g], lap.values[g],
                           {grad[0].values[g], grad[1].values[g]}, u.grid.point(g));
    return out;
}

ModeField eval_P(const ModeVector& v, const PointwisePerturbation& fn,
                 const SpectralBasis& basis) {
    const FieldState u = mode_inverse(v, basis);
    const ModeVector proj = mode_transform(eval_field_rhs(u, fn), basis);
    ModeField P(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) P[k] = proj[k];
    return P;
}

std::vector<double> eval_F(const ModeVector& v, const PointwisePerturbation& fn,
                           const SpectralBasis& basis) {
    const ModeField P = eval_P(v, fn, basis);
    std::vector<double> F(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k)
        F[k] = std::real(v[k] * std::conj(P[k]));
    return F;
}

AngleRates eval_G(const ModeVector& v, const NonlinearitySpec& spec, const SpectralBasis& basis,
                  double floor_delta) {
    if (floor_delta <= 0.0)
        throw std::invalid_argument("eval_G: action floor must be positive");
    const ModeField P = eval_P(v, spec, basis);
    AngleRates rates;
    rates.values.assign(v.size(), 0.0);
    rates.defined.assign(v.size(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double action = 0.5 * std::norm(v[k]);
        if (action < floor_delta) continue;
        rates.defined[k] = 1;
        rates.values[k] = std::real(P[k] * std::conj(cplx(0.0, 1.0) * v[k])) / std::norm(v[k]);
    }
    return rates;
}

}  // namespace wnlse
