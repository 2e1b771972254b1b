#pragma once

#include <array>
#include <vector>

#include "wnlse/grid.hpp"

namespace wnlse {

// Real trigonometric polynomial on a torus T^n, n <= 4:
// f(x) = constant + sum_j [a_j cos(m_j . x) + b_j sin(m_j . x)].
struct TorusHarmonic {
    std::array<int, 4> wavevector{0, 0, 0, 0};
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

struct TorusTrigPoly {
    int dim = 1;
    double constant = 0.0;
    std::vector<TorusHarmonic> harmonics;

    double haar_average() const { return constant; }
    double eval(const std::array<double, 4>& x) const;
};

// One row of the quasi-periodic time-average experiment: the gap between the
// orbit average (1/T) int_0^T f(x0 + w t) dt and the Haar average of f.
struct WeylGapRow {
    double t_horizon = 0.0;
    double time_average = 0.0;
    double haar_average = 0.0;
    double gap = 0.0;
};

// Orbit averages by composite Simpson quadrature resolving the fastest
// harmonic frequency |m . w|; one row per requested horizon T.
std::vector<WeylGapRow> weyl_average_test(const std::vector<double>& frequencies,
                                          const TorusTrigPoly& f,
                                          const std::vector<double>& start_point,
                                          const std::vector<double>& t_values);

}  // namespace wnlse
