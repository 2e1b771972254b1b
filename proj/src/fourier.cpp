#include "wnlse/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace wnlse {

void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 1.0 : -1.0) * kTwoPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx t = w * a[i + j + len / 2];
                a[i + j] = u + t;
                a[i + j + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
}

namespace {

void fft_2d(const Grid& grid, std::vector<cplx>& a, bool inverse) {
    const std::size_t n = static_cast<std::size_t>(grid.points_per_axis);
    std::vector<cplx> line(n);
    // rows (x direction)
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t i = 0; i < n; ++i) line[i] = a[row * n + i];
        fft_radix2(line, inverse);
        for (std::size_t i = 0; i < n; ++i) a[row * n + i] = line[i];
    }
    // columns (y direction)
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) line[i] = a[i * n + col];
        fft_radix2(line, inverse);
        for (std::size_t i = 0; i < n; ++i) a[i * n + col] = line[i];
    }
}

}  // namespace

std::vector<cplx> fourier_coefficients(const Grid& grid, const std::vector<cplx>& values) {
    if (values.size() != grid.total_points())
        throw std::invalid_argument("fourier_coefficients: size mismatch with grid");
    std::vector<cplx> a = values;
    if (grid.dim == 1)
        fft_radix2(a, false);
    else
        fft_2d(grid, a, false);
    const double scale = 1.0 / static_cast<double>(grid.total_points());
    for (auto& c : a) c *= scale;
    return a;
}

std::vector<cplx> field_from_coefficients(const Grid& grid, const std::vector<cplx>& coeffs) {
    if (coeffs.size() != grid.total_points())
        throw std::invalid_argument("field_from_coefficients: size mismatch with grid");
    std::vector<cplx> a = coeffs;
    if (grid.dim == 1)
        fft_radix2(a, true);
    else
        fft_2d(grid, a, true);
    return a;
}

FieldState laplacian(const FieldState& u) {
    const Grid& g = u.grid;
    const int n = g.points_per_axis;
    std::vector<cplx> c = fourier_coefficients(g, u.values);
    if (g.dim == 1) {
        for (int m = 0; m < n; ++m) {
            const double k = wavenumber_of_index(m, n);
            c[static_cast<std::size_t>(m)] *= -(k * k);
        }
    } else {
        for (int my = 0; my < n; ++my) {
            const double ky = wavenumber_of_index(my, n);
            for (int mx = 0; mx < n; ++mx) {
                const double kx = wavenumber_of_index(mx, n);
                c[static_cast<std::size_t>(my) * n + mx] *= -(kx * kx + ky * ky);
            }
        }
    }
    return FieldState(g, field_from_coefficients(g, c));
}

std::array<FieldState, 2> gradient(const FieldState& u) {
    const Grid& g = u.grid;
    const int n = g.points_per_axis;
    const std::vector<cplx> c = fourier_coefficients(g, u.values);
    std::array<FieldState, 2> out{FieldState(g), FieldState(g)};
    for (int axis = 0; axis < g.dim; ++axis) {
        std::vector<cplx> d = c;
        if (g.dim == 1) {
            for (int m = 0; m < n; ++m)
                d[static_cast<std::size_t>(m)] *= cplx(0.0, wavenumber_of_index(m, n));
        } else {
            for (int my = 0; my < n; ++my) {
                for (int mx = 0; mx < n; ++mx) {
                    const int k = axis == 0 ? wavenumber_of_index(mx, n)
                                            : wavenumber_of_index(my, n);
                    d[static_cast<std::size_t>(my) * n + mx] *= cplx(0.0, k);
                }
            }
        }
        out[static_cast<std::size_t>(axis)] = FieldState(g, field_from_coefficients(g, d));
    }
    return out;
}

double sobolev_norm(const FieldState& u, int p) {
    if (p < 0 || p > 4)
        throw std::invalid_argument("sobolev_norm: p must lie in [0, 4]");
    const Grid& g = u.grid;
    const int n = g.points_per_axis;
    const std::vector<cplx> c = fourier_coefficients(g, u.values);
    const double measure = g.dim == 1 ? kTwoPi : kTwoPi * kTwoPi;
    double total = 0.0;
    auto add = [&](double k2, const cplx& coeff) {
        const double a2 = std::norm(coeff);
        double mult = 1.0;
        if (p >= 1) mult += std::pow(k2, p);
        total += mult * a2;
    };
    if (g.dim == 1) {
        for (int m = 0; m < n; ++m) {
            const double k = wavenumber_of_index(m, n);
            add(k * k, c[static_cast<std::size_t>(m)]);
        }
    } else {
        for (int my = 0; my < n; ++my) {
            const double ky = wavenumber_of_index(my, n);
            for (int mx = 0; mx < n; ++mx) {
                const double kx = wavenumber_of_index(mx, n);
                add(kx * kx + ky * ky, c[static_cast<std::size_t>(my) * n + mx]);
            }
        }
    }
    return std::sqrt(measure * total);
}

double lebesgue_power_integral(const FieldState& u, double exponent_2m) {
    double total = 0.0;
    for (const cplx& z : u.values) total += std::pow(std::abs(z), exponent_2m);
    return total * u.grid.cell_measure();
}

}  // namespace wnlse
