#include "wnlse/resonance.hpp"

#include <cmath>
#include <stdexcept>

namespace wnlse {

std::string verdict_name(ResonanceVerdict v) {
    return v == ResonanceVerdict::Resonant ? "resonant" : "non_resonant_at_tolerance";
}

ResonanceReport resonance_scan(const std::vector<double>& eigenvalues, int first_modes,
                               int max_coefficient, double tolerance) {
    if (first_modes < 1 || first_modes > static_cast<int>(eigenvalues.size()))
        throw std::invalid_argument("resonance_scan: K must lie in [1, M]");
    if (max_coefficient < 1)
        throw std::invalid_argument("resonance_scan: S must be >= 1");
    const double combos = std::pow(2.0 * max_coefficient + 1.0, first_modes);
    if (combos > 4e7)
        throw std::invalid_argument("resonance_scan: enumeration budget exceeded");

    const int k = first_modes;
    const int s = max_coefficient;
    std::vector<int> digits(static_cast<std::size_t>(k), -s);
    ResonanceReport report;
    report.modes_scanned = k;
    report.max_coefficient = s;
    report.tolerance = tolerance;
    bool found = false;

    for (;;) {
        bool all_zero = true;
        for (int d : digits)
            if (d != 0) { all_zero = false; break; }
        if (!all_zero) {
            double combo = 0.0;
            for (int i = 0; i < k; ++i)
                combo += digits[static_cast<std::size_t>(i)] * eigenvalues[static_cast<std::size_t>(i)];
            const double value = std::abs(combo);
            if (!found || value < report.best_value) {
                found = true;
                report.best_value = value;
                report.best_vector = digits;
            }
        }
        int i = 0;
        for (; i < k; ++i) {
            if (++digits[static_cast<std::size_t>(i)] <= s) break;
            digits[static_cast<std::size_t>(i)] = -s;
        }
        if (i == k) break;
    }
    report.verdict = report.best_value <= tolerance ? ResonanceVerdict::Resonant
                                                    : ResonanceVerdict::NonResonantAtTolerance;
    return report;
}

}  // namespace wnlse
