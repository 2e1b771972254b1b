#include "wnlse/action_angle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wnlse {

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

ActionVector actions(const ModeVector& v) {
    ActionVector I(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) I[k] = 0.5 * std::norm(v[k]);
    return I;
}

AngleVector angles(const ModeVector& v) {
    AngleVector phi(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) < kAngleZeroThreshold) {
            phi[k] = 0.0;
        } else {
            phi[k] = reduce_angle(std::arg(v[k]));
        }
    }
    return phi;
}

ModeVector rotate(const ModeVector& v, const AngleVector& theta) {
    if (v.size() != theta.size())
        throw std::invalid_argument("rotate: angle count does not match mode count");
    ModeVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        out[k] = v[k] * std::polar(1.0, theta[k]);
    return out;
}

ModeVector lift(const ActionVector& I, const AngleVector& theta) {
    if (I.size() != theta.size())
        throw std::invalid_argument("lift: angle count does not match action count");
    ModeVector v(I.size());
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (I[k] < 0.0) throw std::domain_error("lift: negative action");
        v[k] = std::polar(std::sqrt(2.0 * I[k]), theta[k]);
    }
    return v;
}

double action_norm(const ActionVector& I, const SpectralBasis& basis, double p) {
    if (I.size() != basis.eigenvalues.size())
        throw std::invalid_argument("action_norm: action count does not match basis");
    double total = 0.0;
    for (std::size_t k = 0; k < I.size(); ++k)
        total += std::pow(basis.eigenvalues[k], p) * std::abs(I[k]);
    return 2.0 * total;
}

double action_distance(const ActionVector& a, const ActionVector& b, const SpectralBasis& basis,
                       double p) {
    if (a.size() != b.size())
        throw std::invalid_argument("action_distance: size mismatch");
    ActionVector diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - b[k];
    return action_norm(diff, basis, p);
}

double action_distance_linf(const ActionVector& a, const ActionVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("action_distance_linf: size mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace wnlse
