#pragma once

#include <vector>

#include "wnlse/spectral_basis.hpp"

namespace wnlse {

// Below the angle floor, Arg is round-off noise; such components follow the
// zero-mode convention (angle 0).
inline constexpr double kAngleZeroThreshold = 1e-14;

struct ActionVector {
    std::vector<double> actions;  // I_k >= 0, units of squared amplitude

    ActionVector() = default;
    explicit ActionVector(std::size_t m) : actions(m, 0.0) {}
    explicit ActionVector(std::vector<double> a) : actions(std::move(a)) {}

    std::size_t size() const { return actions.size(); }
    double& operator[](std::size_t k) { return actions[k]; }
    const double& operator[](std::size_t k) const { return actions[k]; }
};

struct AngleVector {
    std::vector<double> angles;  // each reduced to [0, 2pi)

    AngleVector() = default;
    explicit AngleVector(std::size_t m) : angles(m, 0.0) {}
    explicit AngleVector(std::vector<double> a) : angles(std::move(a)) {}

    std::size_t size() const { return angles.size(); }
    double& operator[](std::size_t k) { return angles[k]; }
    const double& operator[](std::size_t k) const { return angles[k]; }
};

// Reduce an angle to [0, 2pi).
double reduce_angle(double a);

// I_k = |v_k|^2 / 2 (the map pi_I).
ActionVector actions(const ModeVector& v);

// phi_k = Arg v_k in [0, 2pi); components at or below the zero threshold map to 0.
AngleVector angles(const ModeVector& v);

// (Phi_theta v)_k = e^{i theta_k} v_k.
ModeVector rotate(const ModeVector& v, const AngleVector& theta);

// v_k = sqrt(2 I_k) e^{i theta_k}; right inverse of the action map.
ModeVector lift(const ActionVector& I, const AngleVector& theta);

// |I|~_p = 2 sum lambda_k^p |I_k|.
double action_norm(const ActionVector& I, const SpectralBasis& basis, double p);

// Same weighted-l1 metric on a difference of action vectors.
double action_distance(const ActionVector& a, const ActionVector& b, const SpectralBasis& basis,
                       double p);

// l-infinity gap between action vectors.
double action_distance_linf(const ActionVector& a, const ActionVector& b);

}  // namespace wnlse
