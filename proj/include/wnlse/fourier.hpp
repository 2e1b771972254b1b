#pragma once

#include <array>

#include "wnlse/field.hpp"

namespace wnlse {

// In-place radix-2 FFT. Forward: A_m = sum_g a_g e^{-2pi i m g / N}.
void fft_radix2(std::vector<cplx>& a, bool inverse);

// Fourier coefficients c_k of u(x) = sum_k c_k e^{i k.x}, stored in FFT index
// order per axis (index m holds wavenumber m for m < N/2, m - N otherwise).
std::vector<cplx> fourier_coefficients(const Grid& grid, const std::vector<cplx>& values);

// Inverse of fourier_coefficients.
std::vector<cplx> field_from_coefficients(const Grid& grid, const std::vector<cplx>& coeffs);

// Signed wavenumber carried by FFT index m on an axis with N points.
inline int wavenumber_of_index(int m, int n) { return m < n / 2 ? m : m - n; }

// Spectral Laplacian on the grid.
FieldState laplacian(const FieldState& u);

// Spectral gradient; the second component is the zero field for d = 1.
std::array<FieldState, 2> gradient(const FieldState& u);

// Sobolev norm ||u||_p, ||u||_p^2 = <(-Laplacian)^p u, u> + <u, u> for p >= 1
// and the plain L^2 norm for p = 0, evaluated through plane-wave multipliers.
double sobolev_norm(const FieldState& u, int p);

// L^{2m} norm of |u| raised to the power 2m, i.e. integral of |u|^{2m} by grid
// quadrature (used by the dissipation identity).
double lebesgue_power_integral(const FieldState& u, double exponent_2m);

}  // namespace wnlse
