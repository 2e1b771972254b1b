#pragma once

#include <complex>
#include <vector>

#include "wnlse/grid.hpp"

namespace wnlse {

using cplx = std::complex<double>;

// Complex scalar field sampled on a Grid.
struct FieldState {
    Grid grid;
    std::vector<cplx> values;

    FieldState() = default;
    FieldState(const Grid& g, cplx fill = cplx(0.0, 0.0))
        : grid(g), values(g.total_points(), fill) {}
    FieldState(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.total_points())
            throw std::invalid_argument("FieldState: value count does not match grid");
    }
};

// Truncated mode vector: coefficients of u with respect to the eigenbasis of A_V.
struct ModeVector {
    std::vector<cplx> coeffs;

    ModeVector() = default;
    explicit ModeVector(std::size_t m) : coeffs(m, cplx(0.0, 0.0)) {}
    explicit ModeVector(std::vector<cplx> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    cplx& operator[](std::size_t k) { return coeffs[k]; }
    const cplx& operator[](std::size_t k) const { return coeffs[k]; }
};

// Perturbation evaluated in mode coordinates, same indexing as ModeVector.
struct ModeField {
    std::vector<cplx> components;

    ModeField() = default;
    explicit ModeField(std::size_t m) : components(m, cplx(0.0, 0.0)) {}

    std::size_t size() const { return components.size(); }
    cplx& operator[](std::size_t k) { return components[k]; }
    const cplx& operator[](std::size_t k) const { return components[k]; }
};

}  // namespace wnlse
