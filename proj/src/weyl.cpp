#include "wnlse/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wnlse {

double TorusTrigPoly::eval(const std::array<double, 4>& x) const {
    double total = constant;
    for (const TorusHarmonic& h : harmonics) {
        double phase = 0.0;
        for (int i = 0; i < dim; ++i) phase += h.wavevector[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        total += h.cos_amp * std::cos(phase) + h.sin_amp * std::sin(phase);
    }
    return total;
}

std::vector<WeylGapRow> weyl_average_test(const std::vector<double>& frequencies,
                                          const TorusTrigPoly& f,
                                          const std::vector<double>& start_point,
                                          const std::vector<double>& t_values) {
    const int n = f.dim;
    if (n < 1 || n > 4) throw std::invalid_argument("weyl_average_test: torus dimension must be 1..4");
    if (static_cast<int>(frequencies.size()) != n || static_cast<int>(start_point.size()) != n)
        throw std::invalid_argument("weyl_average_test: frequency/start dimensions must match f");

    // fastest frequency along the orbit
    double max_rate = 0.0;
    for (const TorusHarmonic& h : f.harmonics) {
        double rate = 0.0;
        for (int i = 0; i < n; ++i)
            rate += h.wavevector[static_cast<std::size_t>(i)] * frequencies[static_cast<std::size_t>(i)];
        max_rate = std::max(max_rate, std::abs(rate));
    }

    std::vector<WeylGapRow> rows;
    for (double horizon : t_values) {
        if (horizon <= 0.0) throw std::invalid_argument("weyl_average_test: T must be positive");
        // Simpson with ~64 intervals per fastest period (even count required)
        const double periods = max_rate * horizon / kTwoPi;
        long intervals = std::max<long>(64, static_cast<long>(std::ceil(periods * 64.0)));
        if (intervals % 2 == 1) ++intervals;
        const double h = horizon / double(intervals);
        auto orbit = [&](double t) {
            std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};
            for (int i = 0; i < n; ++i)
                x[static_cast<std::size_t>(i)] =
                    start_point[static_cast<std::size_t>(i)] + frequencies[static_cast<std::size_t>(i)] * t;
            return f.eval(x);
        };
        double total = orbit(0.0) + orbit(horizon);
        for (long j = 1; j < intervals; ++j)
            total += orbit(j * h) * (j % 2 == 1 ? 4.0 : 2.0);
        const double integral = total * h / 3.0;

        WeylGapRow row;
        row.t_horizon = horizon;
        row.time_average = integral / horizon;
        row.haar_average = f.haar_average();
        row.gap = std::abs(row.time_average - row.haar_average);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wnlse
