#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wnlse/grid.hpp"

namespace wnlse {

// One real harmonic a*cos(k.x) + b*sin(k.x).
struct TrigTerm {
    std::array<int, 2> wavevector{0, 0};  // second entry ignored for d = 1
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

enum class PotentialKind { Constant, TrigPolynomial, RandomTrig };

// Closed-form tag that fully determines the potential, so a basis exported to
// JSON can be rebuilt bit-identically from its description.
struct PotentialDescription {
    PotentialKind kind = PotentialKind::Constant;
    double constant = 1.0;
    std::vector<TrigTerm> terms;       // trig / random-trig
    std::uint64_t seed = 0;            // random-trig provenance
    int degree = 0;                    // random-trig provenance
    double amplitude = 0.0;            // random-trig provenance
    double applied_shift = 0.0;        // vertical shift used to enforce min V = 1
};

// Real potential V(x) >= 1 sampled on the grid.
struct Potential {
    Grid grid;
    std::vector<double> values;
    PotentialDescription description;

    double min_value() const;
    double max_value() const;
};

Potential make_constant_potential(const Grid& grid, double c);

// V = constant + sum of terms; shifted up so min over the grid is exactly 1
// whenever the literal form dips below 1 (the shift is recorded in the
// description and only changes solutions by a global phase).
Potential make_trig_potential(const Grid& grid, double constant, std::vector<TrigTerm> terms);

// Seeded random trigonometric potential of the given degree, coefficients
// ~ amplitude * U(-1,1) / |k|, shifted so min over the grid is exactly 1.
Potential make_random_trig_potential(const Grid& grid, std::uint64_t seed, int degree,
                                     double amplitude);

// Rebuild a potential from its description (used by basis import).
Potential potential_from_description(const Grid& grid, const PotentialDescription& desc);

std::string potential_kind_name(PotentialKind kind);
PotentialKind potential_kind_from_name(const std::string& name);

}  // namespace wnlse
