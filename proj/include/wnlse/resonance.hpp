#pragma once

#include <string>
#include <vector>

#include "wnlse/spectral_basis.hpp"

namespace wnlse {

enum class ResonanceVerdict { Resonant, NonResonantAtTolerance };

// Result of the exhaustive integer-relation search over the first K modes:
// best_vector minimizes |sum_k s_k lambda_k| over nonzero s with |s_k| <= S.
// Any finite scan is a semi-decision, so the verdict is tolerance-qualified.
struct ResonanceReport {
    std::vector<int> best_vector;
    double best_value = 0.0;
    int modes_scanned = 0;      // K
    int max_coefficient = 0;    // S
    double tolerance = 0.0;
    ResonanceVerdict verdict = ResonanceVerdict::NonResonantAtTolerance;
};

std::string verdict_name(ResonanceVerdict v);

ResonanceReport resonance_scan(const std::vector<double>& eigenvalues, int first_modes,
                               int max_coefficient, double tolerance);

inline ResonanceReport resonance_scan(const SpectralBasis& basis, int first_modes,
                                      int max_coefficient, double tolerance) {
    return resonance_scan(basis.eigenvalues, first_modes, max_coefficient, tolerance);
}

}  // namespace wnlse
