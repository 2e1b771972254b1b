#include "wnlse/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wnlse/rng.hpp"

namespace wnlse {

namespace {

constexpr long kMcChunk = 512;
constexpr long kMaxQuadratureEvals = 2'000'000;

std::vector<std::size_t> active_modes(const ModeVector& v) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != cplx(0.0, 0.0)) idx.push_back(k);
    return idx;
}

// Walk the tensor-product angle grid {2pi j / nodes}^angles, invoking
// visit(theta_values) for every node combination.
template <typename Visit>
void for_each_quadrature_node(int angles, int nodes, Visit&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(angles), 0);
    std::vector<double> theta(static_cast<std::size_t>(angles), 0.0);
    const double step = kTwoPi / nodes;
    for (;;) {
        for (int a = 0; a < angles; ++a) theta[static_cast<std::size_t>(a)] = step * idx[a];
        visit(theta);
        int a = 0;
        for (; a < angles; ++a) {
            if (++idx[static_cast<std::size_t>(a)] < nodes) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a == angles) return;
    }
}

double pow_long(int base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

}  // namespace

AverageEstimate partial_average(const RealVectorFn& f, const ModeVector& v, int first_angles,
                                int nodes_per_angle) {
    const int m = static_cast<int>(v.size());
    if (first_angles < 1 || first_angles > std::min(m, 4))
        throw std::invalid_argument("partial_average: angle count must lie in [1, min(M, 4)]");
    if (nodes_per_angle < 4)
        throw std::invalid_argument("partial_average: need at least 4 nodes per angle");
    if (pow_long(nodes_per_angle, first_angles) > double(kMaxQuadratureEvals))
        throw std::invalid_argument("partial_average: quadrature budget exceeded");

    std::vector<double> acc;
    long count = 0;
    ModeVector w = v;
    for_each_quadrature_node(first_angles, nodes_per_angle, [&](const std::vector<double>& theta) {
        for (int a = 0; a < first_angles; ++a)
            w[static_cast<std::size_t>(a)] =
                v[static_cast<std::size_t>(a)] * std::polar(1.0, theta[static_cast<std::size_t>(a)]);
        std::vector<double> val = f(w);
        if (acc.empty()) acc.assign(val.size(), 0.0);
        if (val.size() != acc.size())
            throw std::runtime_error("partial_average: observable changed size");
        for (std::size_t i = 0; i < val.size(); ++i) acc[i] += val[i];
        ++count;
    });
    AverageEstimate est;
    est.samples = count;
    est.method = AveragingMethod::TensorQuadrature;
    est.value.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) est.value[i] = acc[i] / double(count);
    est.std_error.assign(acc.size(), 0.0);
    return est;
}

AverageEstimate full_average_mc(const RealVectorFn& f, const ModeVector& v, long samples,
                                std::uint64_t seed) {
    if (samples < 16)
        throw std::invalid_argument("full_average_mc: need at least 16 samples");
    const std::size_t m = v.size();
    std::vector<double> mean, m2;  // Welford accumulators
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    ModeVector w(m);
    long done = 0;
    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        auto engine = seeded_engine(seed, chunk);
        const long here = std::min(kMcChunk, samples - done);
        for (long s = 0; s < here; ++s) {
            for (std::size_t k = 0; k < m; ++k) w[k] = v[k] * std::polar(1.0, uni(engine));
            std::vector<double> val = f(w);
            if (mean.empty()) {
                mean.assign(val.size(), 0.0);
                m2.assign(val.size(), 0.0);
            }
            if (val.size() != mean.size())
                throw std::runtime_error("full_average_mc: observable changed size");
            const double count = double(done + s + 1);
            for (std::size_t i = 0; i < val.size(); ++i) {
                const double delta = val[i] - mean[i];
                mean[i] += delta / count;
                m2[i] += delta * (val[i] - mean[i]);
            }
        }
        done += here;
    }
    AverageEstimate est;
    est.samples = samples;
    est.method = AveragingMethod::MonteCarlo;
    est.value = mean;
    est.std_error.resize(mean.size());
    const double n = double(samples);
    for (std::size_t i = 0; i < mean.size(); ++i)
        est.std_error[i] = std::sqrt(std::max(0.0, m2[i]) / (n - 1.0) / n);
    return est;
}

EffectiveFieldEstimate effective_field(const ModeVector& v, const NonlinearitySpec& spec,
                                       const SpectralBasis& basis,
                                       const AveragingBudget& budget) {
    if (spec.is_zero()) {
        EffectiveFieldEstimate est;
        est.field = ModeField(v.size());
        est.std_error.assign(v.size(), 0.0);
        est.method = AveragingMethod::ClosedForm;
        est.samples = 1;
        return est;
    }
    return effective_field(
        v, [&](const ModeVector& w) { return eval_P(w, spec, basis); }, budget);
}

EffectiveFieldEstimate effective_field(const ModeVector& v, const ModeFieldFn& p_eval,
                                       const AveragingBudget& budget) {
    const std::size_t m = v.size();
    EffectiveFieldEstimate est;
    est.field = ModeField(m);
    est.std_error.assign(m, 0.0);

    const std::vector<std::size_t> active = active_modes(v);
    const bool quad =
        budget.method == AveragingMethod::TensorQuadrature ||
        (budget.method == AveragingMethod::Auto &&
         static_cast<int>(active.size()) <= budget.max_quadrature_angles);
    if (budget.method == AveragingMethod::ClosedForm)
        throw std::invalid_argument("effective_field: closed form is not a generic method here");

    if (quad) {
        if (pow_long(budget.nodes_per_angle, static_cast<int>(active.size())) >
            double(kMaxQuadratureEvals))
            throw std::invalid_argument("effective_field: quadrature budget exceeded");
        std::vector<cplx> acc(m, cplx(0.0, 0.0));
        long count = 0;
        ModeVector w = v;
        for_each_quadrature_node(
            static_cast<int>(active.size()), budget.nodes_per_angle,
            [&](const std::vector<double>& theta) {
                for (std::size_t a = 0; a < active.size(); ++a)
                    w[active[a]] = v[active[a]] * std::polar(1.0, theta[a]);
                const ModeField P = p_eval(w);
                // rotate back: inactive components average to zero exactly
                for (std::size_t a = 0; a < active.size(); ++a)
                    acc[active[a]] += P[active[a]] * std::polar(1.0, -theta[a]);
                ++count;
            });
        est.method = AveragingMethod::TensorQuadrature;
        est.samples = count;
        for (std::size_t a = 0; a < active.size(); ++a)
            est.field[active[a]] = acc[active[a]] / double(count);
        return est;
    }

    // Monte Carlo over all angles (Welford accumulation per component)
    if (budget.samples < 16)
        throw std::invalid_argument("effective_field: need at least 16 samples");
    std::vector<cplx> mean(m, cplx(0.0, 0.0));
    std::vector<double> m2_re(m, 0.0), m2_im(m, 0.0);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    ModeVector w(m);
    std::vector<double> theta(m, 0.0);
    long done = 0;
    for (std::uint64_t chunk = 0; done < budget.samples; ++chunk) {
        auto engine = seeded_engine(budget.seed, chunk);
        const long here = std::min(kMcChunk, budget.samples - done);
        for (long s = 0; s < here; ++s) {
            for (std::size_t k = 0; k < m; ++k) {
                theta[k] = uni(engine);
                w[k] = v[k] * std::polar(1.0, theta[k]);
            }
            const ModeField P = p_eval(w);
            const double count = double(done + s + 1);
            for (std::size_t k = 0; k < m; ++k) {
                const cplx r = P[k] * std::polar(1.0, -theta[k]);
                const cplx delta = r - mean[k];
                mean[k] += delta / count;
                const cplx delta2 = r - mean[k];
                m2_re[k] += delta.real() * delta2.real();
                m2_im[k] += delta.imag() * delta2.imag();
            }
        }
        done += here;
    }
    est.method = AveragingMethod::MonteCarlo;
    est.samples = budget.samples;
    const double n = double(budget.samples);
    for (std::size_t k = 0; k < m; ++k) {
        est.field[k] = mean[k];
        const double var = std::max(0.0, m2_re[k] + m2_im[k]) / (n - 1.0);
        est.std_error[k] = std::sqrt(var / n);
    }
    return est;
}

std::vector<double> cgl_effective_linear(const SpectralBasis& basis, const Potential& potential) {
    if (potential.grid != basis.grid)
        throw std::invalid_argument("cgl_effective_linear: potential grid mismatch");
    const std::size_t points = basis.grid.total_points();
    std::vector<double> diag(static_cast<std::size_t>(basis.truncation), 0.0);
    for (int k = 0; k < basis.truncation; ++k) {
        const std::vector<double>& zeta = basis.eigenfunctions[static_cast<std::size_t>(k)];
        double mk = 0.0;
        for (std::size_t g = 0; g < points; ++g) mk += potential.values[g] * zeta[g] * zeta[g];
        mk *= basis.quadrature_weight;
        diag[static_cast<std::size_t>(k)] = -basis.eigenvalues[static_cast<std::size_t>(k)] + mk;
    }
    return diag;
}

CubicResonantTable build_cubic_resonant_table(const SpectralBasis& basis) {
    const int m = basis.truncation;
    const std::size_t points = basis.grid.total_points();
    CubicResonantTable table;
    table.modes = m;
    table.mean_potential.resize(static_cast<std::size_t>(m));
    table.quartic_overlap.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k) {
        const std::vector<double>& zk = basis.eigenfunctions[static_cast<std::size_t>(k)];
        double mk = 0.0;
        for (std::size_t g = 0; g < points; ++g)
            mk += basis.potential.values[g] * zk[g] * zk[g];
        table.mean_potential[static_cast<std::size_t>(k)] = mk * basis.quadrature_weight;
        for (int a = k; a < m; ++a) {
            const std::vector<double>& za = basis.eigenfunctions[static_cast<std::size_t>(a)];
            double c = 0.0;
            for (std::size_t g = 0; g < points; ++g) {
                const double prod = zk[g] * za[g];
                c += prod * prod;
            }
            c *= basis.quadrature_weight;
            table.quartic_overlap[static_cast<std::size_t>(a) * m + k] = c;
            table.quartic_overlap[static_cast<std::size_t>(k) * m + a] = c;
        }
    }
    return table;
}

std::vector<double> resonant_cubic_amplitude(const ModeVector& v,
                                             const CubicResonantTable& table) {
    const int m = table.modes;
    if (v.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("resonant_cubic_amplitude: size mismatch");
    std::vector<double> rho(static_cast<std::size_t>(m), 0.0);
    std::vector<double> amp2(static_cast<std::size_t>(m), 0.0);
    for (int a = 0; a < m; ++a) amp2[static_cast<std::size_t>(a)] = std::norm(v[static_cast<std::size_t>(a)]);
    for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int a = 0; a < m; ++a) s += table.overlap(a, k) * amp2[static_cast<std::size_t>(a)];
        rho[static_cast<std::size_t>(k)] =
            2.0 * s - table.overlap(k, k) * amp2[static_cast<std::size_t>(k)];
    }
    return rho;
}

bool closed_form_action_rate_available(const NonlinearitySpec& spec) {
    if (spec.is_zero()) return true;
    if (spec.has_dissipative_power() && std::abs(spec.exp_p - 1.0) > 1e-12) return false;
    return true;  // Hamiltonian part contributes nothing to <F> for any exponent
}

AverageEstimate averaged_action_rate(const ModeVector& v, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const AveragingBudget& budget) {
    const std::size_t m = v.size();
    const bool closed_ok = closed_form_action_rate_available(spec);
    const bool want_closed =
        budget.method == AveragingMethod::ClosedForm ||
        (budget.method == AveragingMethod::Auto && closed_ok);
    if (budget.method == AveragingMethod::ClosedForm && !closed_ok)
        throw std::invalid_argument(
            "averaged_action_rate: no closed form for this nonlinearity (needs p = 1)");

    if (want_closed && closed_ok) {
        AverageEstimate est;
        est.method = AveragingMethod::ClosedForm;
        est.samples = 1;
        est.value.assign(m, 0.0);
        est.std_error.assign(m, 0.0);
        if (spec.is_zero()) return est;
        std::vector<double> diag(m, 0.0);
        if (spec.has_laplacian()) {
            const std::vector<double> lin = cgl_effective_linear(basis, basis.potential);
            for (std::size_t k = 0; k < m; ++k) diag[k] = lin[k];
        }
        if (spec.has_dissipative_power()) {
            const CubicResonantTable table = build_cubic_resonant_table(basis);
            const std::vector<double> rho = resonant_cubic_amplitude(v, table);
            for (std::size_t k = 0; k < m; ++k) diag[k] -= spec.gamma_r * rho[k];
        }
        for (std::size_t k = 0; k < m; ++k) est.value[k] = std::norm(v[k]) * diag[k];
        return est;
    }

    const auto f = [&](const ModeVector& w) { return eval_F(w, spec, basis); };
    const std::vector<std::size_t> active = active_modes(v);
    const bool quad =
        budget.method == AveragingMethod::TensorQuadrature ||
        (budget.method == AveragingMethod::Auto &&
         static_cast<int>(active.size()) <= budget.max_quadrature_angles);
    if (quad) {
        // quadrature over the active angles only; F does not depend on the rest
        if (pow_long(budget.nodes_per_angle, static_cast<int>(active.size())) >
            double(kMaxQuadratureEvals))
            throw std::invalid_argument("averaged_action_rate: quadrature budget exceeded");
        std::vector<double> acc(m, 0.0);
        long count = 0;
        ModeVector w = v;
        for_each_quadrature_node(static_cast<int>(active.size()), budget.nodes_per_angle,
                                 [&](const std::vector<double>& theta) {
                                     for (std::size_t a = 0; a < active.size(); ++a)
                                         w[active[a]] =
                                             v[active[a]] * std::polar(1.0, theta[a]);
                                     const std::vector<double> val = f(w);
                                     for (std::size_t i = 0; i < val.size(); ++i)
                                         acc[i] += val[i];
                                     ++count;
                                 });
        AverageEstimate est;
        est.method = AveragingMethod::TensorQuadrature;
        est.samples = count;
        est.value.resize(m);
        est.std_error.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) est.value[i] = acc[i] / double(count);
        return est;
    }
    return full_average_mc(f, v, budget.samples, budget.seed);
}

double verify_r3_null(const ModeVector& v, const NonlinearitySpec& spec,
                      const SpectralBasis& basis, const AveragingBudget& budget) {
    if (spec.kind != NonlinearityKind::Cgl && spec.kind != NonlinearityKind::CubicHamiltonian)
        throw std::invalid_argument("verify_r3_null: needs a CGL-family nonlinearity");
    if (spec.gamma_i == 0.0) return 0.0;
    NonlinearitySpec ham = spec;
    ham.kind = NonlinearityKind::CubicHamiltonian;
    ham.gamma_r = 0.0;
    ham.include_laplacian_dissipation = false;
    const EffectiveFieldEstimate r3 = effective_field(v, ham, basis, budget);
    double worst = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        worst = std::max(worst, std::abs(std::real(v[k] * std::conj(r3.field[k]))));
    return worst;
}

}  // namespace wnlse
