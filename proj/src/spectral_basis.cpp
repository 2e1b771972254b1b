#include "wnlse/spectral_basis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wnlse {

namespace {

constexpr int kBasisFormatVersion = 1;

// Real orthonormal trig functions on one axis:
//   e_0 = 1/sqrt(2pi), e_{2k-1} = cos(kx)/sqrt(pi), e_{2k} = sin(kx)/sqrt(pi).
double axis_function(int idx, double x) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(kTwoPi);
    static const double inv_sqrt_pi = 1.0 / std::sqrt(kTwoPi / 2.0);
    if (idx == 0) return inv_sqrt_2pi;
    const int k = (idx + 1) / 2;
    return (idx % 2 == 1) ? std::cos(k * x) * inv_sqrt_pi : std::sin(k * x) * inv_sqrt_pi;
}

int axis_wavenumber(int idx) { return (idx + 1) / 2; }

}  // namespace

SpectralBasis assemble_operator(const Potential& potential, const Grid& grid, int truncation) {
    grid.validate();
    if (potential.grid != grid)
        throw std::invalid_argument("assemble_operator: potential lives on a different grid");
    if (potential.min_value() < 1.0 - 1e-12)
        throw std::domain_error("assemble_operator: potential must satisfy min V >= 1");

    const int n = grid.points_per_axis;
    const int cutoff = n / 3;  // per-axis wavenumber cutoff K
    const int axis_dim = 2 * cutoff + 1;
    const double max_modes = std::pow(double(n) / 3.0, grid.dim);
    if (truncation < 1 || double(truncation) > max_modes)
        throw std::invalid_argument("assemble_operator: truncation must satisfy 1 <= M <= (N/3)^d");

    const std::size_t points = grid.total_points();
    const int dim = grid.dim == 1 ? axis_dim : axis_dim * axis_dim;

    // tabulate the basis functions on the grid
    Eigen::MatrixXd B(dim, static_cast<Eigen::Index>(points));
    Eigen::VectorXd lap_diag(dim);
    for (int i = 0; i < dim; ++i) {
        const int ix = grid.dim == 1 ? i : i % axis_dim;
        const int iy = grid.dim == 1 ? 0 : i / axis_dim;
        const int kx = axis_wavenumber(ix);
        const int ky = grid.dim == 1 ? 0 : axis_wavenumber(iy);
        lap_diag(i) = double(kx) * kx + double(ky) * ky;
        for (std::size_t g = 0; g < points; ++g) {
            const auto x = grid.point(g);
            double val = axis_function(ix, x[0]);
            if (grid.dim == 2) val *= axis_function(iy, x[1]);
            B(i, static_cast<Eigen::Index>(g)) = val;
        }
    }

    // Galerkin matrix: diagonal Laplacian plus quadrature of V against basis pairs
    const double w = grid.cell_measure();
    Eigen::VectorXd vw(static_cast<Eigen::Index>(points));
    for (std::size_t g = 0; g < points; ++g)
        vw(static_cast<Eigen::Index>(g)) = potential.values[g] * w;
    Eigen::MatrixXd A = B * vw.asDiagonal() * B.transpose();
    A.diagonal() += lap_diag;
    A = 0.5 * (A + A.transpose()).eval();  // scrub quadrature round-off asymmetry

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("assemble_operator: eigensolve failed");

    SpectralBasis basis;
    basis.grid = grid;
    basis.truncation = truncation;
    basis.quadrature_weight = w;
    basis.planewave_cutoff = cutoff;
    basis.potential = potential;
    basis.eigenvalues.resize(static_cast<std::size_t>(truncation));
    basis.eigenfunctions.assign(static_cast<std::size_t>(truncation),
                                std::vector<double>(points, 0.0));
    for (int k = 0; k < truncation; ++k) {
        basis.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
        Eigen::VectorXd zeta = B.transpose() * solver.eigenvectors().col(k);
        // deterministic sign convention: first non-negligible entry positive
        for (Eigen::Index g = 0; g < zeta.size(); ++g) {
            if (std::abs(zeta(g)) > 1e-8) {
                if (zeta(g) < 0) zeta = -zeta;
                break;
            }
        }
        for (std::size_t g = 0; g < points; ++g)
            basis.eigenfunctions[static_cast<std::size_t>(k)][g] =
                zeta(static_cast<Eigen::Index>(g));
    }
    return basis;
}

WeylFit weyl_fit(const SpectralBasis& basis) {
    const int m = basis.truncation;
    if (m < 16)
        throw std::invalid_argument("weyl_fit: need at least 16 modes");
    const int lo = m / 2;  // upper half of the spectrum, 0-based index lo..m-1
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int k = lo; k < m; ++k) {
        const double x = std::log(double(k + 1));
        const double y = std::log(basis.eigenvalues[static_cast<std::size_t>(k)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double denom = count * sxx - sx * sx;
    WeylFit fit;
    fit.exponent = (count * sxy - sx * sy) / denom;
    fit.prefactor = std::exp((sy - fit.exponent * sx) / count);
    return fit;
}

ModeVector mode_transform(const FieldState& u, const SpectralBasis& basis) {
    if (u.grid != basis.grid)
        throw std::invalid_argument("mode_transform: field grid does not match basis grid");
    const std::size_t points = basis.grid.total_points();
    ModeVector v(static_cast<std::size_t>(basis.truncation));
    for (int k = 0; k < basis.truncation; ++k) {
        const std::vector<double>& zeta = basis.eigenfunctions[static_cast<std::size_t>(k)];
        cplx acc(0.0, 0.0);
        for (std::size_t g = 0; g < points; ++g) acc += u.values[g] * zeta[g];
        v[static_cast<std::size_t>(k)] = acc * basis.quadrature_weight;
    }
    return v;
}

FieldState mode_inverse(const ModeVector& v, const SpectralBasis& basis) {
    if (v.size() != static_cast<std::size_t>(basis.truncation))
        throw std::invalid_argument("mode_inverse: mode count does not match basis truncation");
    FieldState u(basis.grid);
    const std::size_t points = basis.grid.total_points();
    for (int k = 0; k < basis.truncation; ++k) {
        const cplx vk = v[static_cast<std::size_t>(k)];
        if (vk == cplx(0.0, 0.0)) continue;
        const std::vector<double>& zeta = basis.eigenfunctions[static_cast<std::size_t>(k)];
        for (std::size_t g = 0; g < points; ++g) u.values[g] += vk * zeta[g];
    }
    return u;
}

double hp_norm(const ModeVector& v, const SpectralBasis& basis, double p) {
    if (v.size() != static_cast<std::size_t>(basis.truncation))
        throw std::invalid_argument("hp_norm: mode count does not match basis truncation");
    double total = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        total += std::norm(v[k]) * std::pow(basis.eigenvalues[k], p);
    return std::sqrt(total);
}

std::string basis_to_json(const SpectralBasis& basis) {
    nlohmann::json j;
    j["format_version"] = kBasisFormatVersion;
    j["dim"] = basis.grid.dim;
    j["N"] = basis.grid.points_per_axis;
    j["M"] = basis.truncation;
    j["planewave_cutoff"] = basis.planewave_cutoff;
    j["eigenvalues"] = basis.eigenvalues;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& zeta : basis.eigenfunctions) rows.push_back(zeta);
    j["eigenvectors"] = std::move(rows);
    const PotentialDescription& d = basis.potential.description;
    nlohmann::json pj;
    pj["kind"] = potential_kind_name(d.kind);
    pj["constant"] = d.constant;
    pj["applied_shift"] = d.applied_shift;
    pj["seed"] = d.seed;
    pj["degree"] = d.degree;
    pj["amplitude"] = d.amplitude;
    nlohmann::json terms = nlohmann::json::array();
    for (const TrigTerm& t : d.terms)
        terms.push_back({{"wavevector", {t.wavevector[0], t.wavevector[1]}},
                         {"cos", t.cos_amp},
                         {"sin", t.sin_amp}});
    pj["terms"] = std::move(terms);
    j["potential"] = std::move(pj);
    return j.dump(2);
}

SpectralBasis basis_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != kBasisFormatVersion)
        throw std::runtime_error("basis_from_json: unsupported format_version");
    Grid grid(j.at("dim").get<int>(), j.at("N").get<int>());

    PotentialDescription desc;
    const nlohmann::json& pj = j.at("potential");
    desc.kind = potential_kind_from_name(pj.at("kind").get<std::string>());
    desc.constant = pj.at("constant").get<double>();
    desc.applied_shift = pj.value("applied_shift", 0.0);
    desc.seed = pj.value("seed", std::uint64_t(0));
    desc.degree = pj.value("degree", 0);
    desc.amplitude = pj.value("amplitude", 0.0);
    for (const auto& tj : pj.at("terms")) {
        TrigTerm t;
        t.wavevector = {tj.at("wavevector")[0].get<int>(), tj.at("wavevector")[1].get<int>()};
        t.cos_amp = tj.at("cos").get<double>();
        t.sin_amp = tj.at("sin").get<double>();
        desc.terms.push_back(t);
    }

    SpectralBasis basis;
    basis.grid = grid;
    basis.truncation = j.at("M").get<int>();
    basis.planewave_cutoff = j.value("planewave_cutoff", grid.points_per_axis / 3);
    basis.quadrature_weight = grid.cell_measure();
    basis.potential = potential_from_description(grid, desc);
    basis.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    for (const auto& row : j.at("eigenvectors"))
        basis.eigenfunctions.push_back(row.get<std::vector<double>>());
    if (basis.eigenvalues.size() != static_cast<std::size_t>(basis.truncation) ||
        basis.eigenfunctions.size() != static_cast<std::size_t>(basis.truncation))
        throw std::runtime_error("basis_from_json: inconsistent mode counts");
    for (const auto& zeta : basis.eigenfunctions)
        if (zeta.size() != grid.total_points())
            throw std::runtime_error("basis_from_json: eigenvector length mismatch");
    return basis;
}

void save_basis(const SpectralBasis& basis, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_basis: cannot open " + path);
    out << basis_to_json(basis) << '\n';
}

SpectralBasis load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_basis: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return basis_from_json(text);
}

}  // namespace wnlse
