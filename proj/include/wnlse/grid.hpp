#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace wnlse {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Uniform periodic grid on the torus [0, 2pi)^d, d in {1, 2}.
// N points per axis, power of two (keeps the radix-2 transforms exact).
struct Grid {
    int dim = 1;
    int points_per_axis = 64;

    Grid() = default;
    Grid(int d, int n) : dim(d), points_per_axis(n) { validate(); }

    void validate() const {
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("Grid: dim must be 1 or 2");
        if (points_per_axis < 8)
            throw std::invalid_argument("Grid: need at least 8 points per axis");
        if ((points_per_axis & (points_per_axis - 1)) != 0)
            throw std::invalid_argument("Grid: points_per_axis must be a power of two");
    }

    std::size_t total_points() const {
        std::size_t n = static_cast<std::size_t>(points_per_axis);
        return dim == 1 ? n : n * n;
    }

    double spacing() const { return kTwoPi / points_per_axis; }

    // quadrature weight of one grid cell, (2pi/N)^d
    double cell_measure() const {
        double h = spacing();
        return dim == 1 ? h : h * h;
    }

    // coordinates of the flat grid index (x varies fastest; 2nd entry is 0 for d=1)
    std::array<double, 2> point(std::size_t flat) const {
        std::size_t n = static_cast<std::size_t>(points_per_axis);
        double h = spacing();
        if (dim == 1) return {h * static_cast<double>(flat), 0.0};
        return {h * static_cast<double>(flat % n), h * static_cast<double>(flat / n)};
    }

    bool operator==(const Grid&) const = default;
};

}  // namespace wnlse
