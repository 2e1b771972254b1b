#pragma once

#include <string>
#include <vector>

#include "wnlse/field.hpp"
#include "wnlse/potential.hpp"

namespace wnlse {

// Eigenpairs {lambda_k, zeta_k} of A_V = -Laplacian + V on the grid, truncated
// to the first M modes. The zeta_k are real grid fields, orthonormal under
// grid quadrature; together they are the coordinate system for everything else.
struct SpectralBasis {
    Grid grid;
    int truncation = 0;                           // M
    std::vector<double> eigenvalues;              // ascending, length M
    std::vector<std::vector<double>> eigenfunctions;  // M real fields of size N^d
    double quadrature_weight = 0.0;               // (2pi/N)^d
    int planewave_cutoff = 0;                     // K used in Galerkin assembly
    Potential potential;

    double eigenvalue(int k) const { return eigenvalues[static_cast<std::size_t>(k)]; }
};

// Galerkin assembly of A_V in the real trigonometric basis with per-axis
// cutoff K = floor(N/3) (2/3 dealiasing headroom), followed by a dense
// symmetric eigensolve; the leading `truncation` eigenpairs are kept.
SpectralBasis assemble_operator(const Potential& potential, const Grid& grid, int truncation);

// Least-squares fit of log(lambda_k) against log(k) over the upper half of the
// spectrum; the slope estimates Weyl's exponent 2/d.
struct WeylFit {
    double exponent = 0.0;
    double prefactor = 0.0;  // exp(intercept)
};
WeylFit weyl_fit(const SpectralBasis& basis);

// v_k = <u, zeta_k> by grid quadrature.
ModeVector mode_transform(const FieldState& u, const SpectralBasis& basis);

// u = sum_k v_k zeta_k.
FieldState mode_inverse(const ModeVector& v, const SpectralBasis& basis);

// |v|_p = sqrt(sum |v_k|^2 lambda_k^p).
double hp_norm(const ModeVector& v, const SpectralBasis& basis, double p);

// JSON export/import of a basis (schema: dim, N, M, eigenvalues, eigenvectors
// row-major, potential description, format_version).
std::string basis_to_json(const SpectralBasis& basis);
SpectralBasis basis_from_json(const std::string& text);
void save_basis(const SpectralBasis& basis, const std::string& path);
SpectralBasis load_basis(const std::string& path);

}  // namespace wnlse
