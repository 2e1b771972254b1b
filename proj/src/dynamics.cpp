#include "wnlse/dynamics.hpp"

#include <cmath>
#include <functional>
#include <memory>

#include "wnlse/fourier.hpp"

namespace wnlse {

std::string scheme_name(Scheme s) {
    return s == Scheme::StrangExactPhase ? "strang_exact_phase" : "etd_rk2";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "strang_exact_phase") return Scheme::StrangExactPhase;
    if (name == "etd_rk2") return Scheme::EtdRk2;
    throw std::invalid_argument("unknown integrator scheme: " + name);
}

namespace {

bool finite(const ModeVector& v) {
    for (const cplx& z : v.coeffs)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void append_record(TrajectoryRecord& traj, double tau, const ModeVector& v,
                   const SpectralBasis& basis) {
    traj.times.push_back(tau);
    traj.states.push_back(v);
    traj.actions.push_back(actions(v));
    traj.hp_norms.push_back({hp_norm(v, basis, 0.0), hp_norm(v, basis, 1.0),
                             hp_norm(v, basis, 2.0)});
}

// phi_1(z) = (e^z - 1)/z and phi_2(z) = (e^z - z - 1)/z^2 with series fallback.
cplx phi1(cplx z) {
    if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return (std::exp(z) - 1.0) / z;
}
cplx phi2(cplx z) {
    if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
    return (std::exp(z) - z - 1.0) / (z * z);
}

// One explicit midpoint step of v' = rhs(v).
template <typename Rhs>
ModeVector midpoint_step(const ModeVector& v, double dt, Rhs&& rhs) {
    const std::size_t m = v.size();
    const ModeField k1 = rhs(v);
    ModeVector mid(m);
    for (std::size_t k = 0; k < m; ++k) mid[k] = v[k] + 0.5 * dt * k1[k];
    const ModeField k2 = rhs(mid);
    ModeVector out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = v[k] + dt * k2[k];
    return out;
}

// Shared stepping loop: advances with `step(v, dt)`, records on cadence,
// stops on blow-up.
template <typename Step>
TrajectoryRecord run_loop(TrajectorySource source, const ModeVector& v0,
                          const SpectralBasis& basis, const IntegratorConfig& cfg, Step&& step) {
    cfg.validate();
    TrajectoryRecord traj;
    traj.source = source;

    ModeVector v = v0;
    append_record(traj, 0.0, v, basis);
    if (hp_norm(v, basis, 2.0) >= cfg.blowup_threshold) {
        traj.diverged = true;
        traj.divergence_time = 0.0;
        return traj;
    }

    const long n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt_slow - 1e-12));
    for (long j = 1; j <= n_steps; ++j) {
        const double tau_prev = (j - 1) * cfg.dt_slow;
        const double tau = std::min(j * cfg.dt_slow, cfg.t_final);
        const double dt = tau - tau_prev;
        if (dt <= 0.0) break;
        v = step(v, dt);
        if (!finite(v)) throw integration_error("integration produced NaN/Inf");
        const bool last = (j == n_steps) || tau >= cfg.t_final;
        const bool blowup = hp_norm(v, basis, 2.0) >= cfg.blowup_threshold;
        if (j % cfg.record_every == 0 || last || blowup) append_record(traj, tau, v, basis);
        if (blowup) {
            traj.diverged = true;
            traj.divergence_time = tau;
            break;
        }
    }
    return traj;
}

}  // namespace

TrajectoryRecord integrate_perturbed(const ModeVector& v0, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const IntegratorConfig& cfg) {
    spec.validate();
    if (v0.size() != static_cast<std::size_t>(basis.truncation))
        throw std::invalid_argument("integrate_perturbed: v0 does not match basis truncation");

    const std::size_t m = v0.size();
    const auto rhs = [&](const ModeVector& v) { return eval_P(v, spec, basis); };

    if (cfg.scheme == Scheme::StrangExactPhase) {
        std::vector<cplx> half_phase(m);
        double cached_dt = -1.0;
        auto step = [&, m](const ModeVector& v, double dt) {
            if (dt != cached_dt) {
                for (std::size_t k = 0; k < m; ++k)
                    half_phase[k] =
                        std::polar(1.0, -basis.eigenvalues[k] * dt / (2.0 * cfg.epsilon));
                cached_dt = dt;
            }
            ModeVector w(m);
            for (std::size_t k = 0; k < m; ++k) w[k] = half_phase[k] * v[k];
            if (!spec.is_zero()) w = midpoint_step(w, dt, rhs);
            for (std::size_t k = 0; k < m; ++k) w[k] = half_phase[k] * w[k];
            return w;
        };
        return run_loop(TrajectorySource::Perturbed, v0, basis, cfg, step);
    }

    // ETD2RK with the exact diagonal phase factor
    std::vector<cplx> ez(m), f1(m), f2(m);
    double cached_dt = -1.0;
    auto step = [&, m](const ModeVector& v, double dt) {
        if (dt != cached_dt) {
            for (std::size_t k = 0; k < m; ++k) {
                const cplx z(0.0, -basis.eigenvalues[k] * dt / cfg.epsilon);
                ez[k] = std::exp(z);
                f1[k] = dt * phi1(z);
                f2[k] = dt * phi2(z);
            }
            cached_dt = dt;
        }
        const ModeField p0 = rhs(v);
        ModeVector a(m);
        for (std::size_t k = 0; k < m; ++k) a[k] = ez[k] * v[k] + f1[k] * p0[k];
        const ModeField p1 = rhs(a);
        ModeVector out(m);
        for (std::size_t k = 0; k < m; ++k) out[k] = a[k] + f2[k] * (p1[k] - p0[k]);
        return out;
    };
    return run_loop(TrajectorySource::Perturbed, v0, basis, cfg, step);
}

TrajectoryRecord integrate_effective(const ModeVector& v0, const NonlinearitySpec& spec,
                                     const SpectralBasis& basis, const IntegratorConfig& cfg,
                                     const AveragingBudget& budget) {
    spec.validate();
    if (v0.size() != static_cast<std::size_t>(basis.truncation))
        throw std::invalid_argument("integrate_effective: v0 does not match basis truncation");
    const std::size_t m = v0.size();

    std::vector<double> diag(m, 0.0);
    if (spec.has_laplacian()) diag = cgl_effective_linear(basis, basis.potential);

    // remainder of the effective field beyond the exact diagonal
    const bool diss_cubic =
        !spec.has_dissipative_power() || std::abs(spec.exp_p - 1.0) < 1e-12;
    const bool ham_cubic =
        !spec.has_hamiltonian_power() || std::abs(spec.exp_q - 1.0) < 1e-12;
    const bool closed = diss_cubic && ham_cubic;

    std::function<ModeField(const ModeVector&)> remainder;
    bool remainder_zero = false;
    if (closed) {
        // For CGL the effective equation is R^1 + R^2 (the Hamiltonian average
        // only rotates phases and never moves actions); a pure Hamiltonian
        // nonlinearity keeps its average so that v' = R(v) holds literally.
        const bool keep_ham =
            spec.kind == NonlinearityKind::CubicHamiltonian && spec.gamma_i != 0.0;
        const bool keep_diss = spec.has_dissipative_power();
        if (!keep_ham && !keep_diss) {
            remainder_zero = true;
        } else {
            auto table = std::make_shared<CubicResonantTable>(build_cubic_resonant_table(basis));
            remainder = [table, keep_diss, keep_ham, spec](const ModeVector& v) {
                const std::vector<double> rho = resonant_cubic_amplitude(v, *table);
                ModeField r(v.size());
                for (std::size_t k = 0; k < v.size(); ++k) {
                    cplx coeff(0.0, 0.0);
                    if (keep_diss) coeff -= spec.gamma_r * rho[k];
                    if (keep_ham) coeff -= cplx(0.0, spec.gamma_i * rho[k]);
                    r[k] = coeff * v[k];
                }
                return r;
            };
        }
    } else {
        remainder = [&spec, &basis, &budget, diag](const ModeVector& v) {
            EffectiveFieldEstimate est = effective_field(v, spec, basis, budget);
            for (std::size_t k = 0; k < v.size(); ++k)
                est.field[k] -= diag[k] * v[k];
            return est.field;
        };
    }

    std::vector<double> half_decay(m);
    double cached_dt = -1.0;
    auto step = [&, m](const ModeVector& v, double dt) {
        if (dt != cached_dt) {
            for (std::size_t k = 0; k < m; ++k) half_decay[k] = std::exp(0.5 * dt * diag[k]);
            cached_dt = dt;
        }
        ModeVector w(m);
        for (std::size_t k = 0; k < m; ++k) w[k] = half_decay[k] * v[k];
        if (!remainder_zero && !spec.is_zero()) w = midpoint_step(w, dt, remainder);
        for (std::size_t k = 0; k < m; ++k) w[k] = half_decay[k] * w[k];
        return w;
    };
    return run_loop(TrajectorySource::Effective, v0, basis, cfg, step);
}

std::vector<ActionVector> averaged_actions(const TrajectoryRecord& traj) {
    if (traj.source != TrajectorySource::Effective)
        throw std::invalid_argument("averaged_actions: trajectory must come from the effective flow");
    return traj.actions;
}

std::vector<std::vector<double>> residual_xi(const TrajectoryRecord& traj,
                                             const NonlinearitySpec& spec,
                                             const SpectralBasis& basis,
                                             const AveragingBudget& budget) {
    const std::size_t n = traj.size();
    const std::size_t m = static_cast<std::size_t>(basis.truncation);
    std::vector<std::vector<double>> xi(n, std::vector<double>(m, 0.0));
    if (n == 0) return xi;

    // <F_k> at the lifted state of each recorded action vector
    std::vector<std::vector<double>> rate(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ModeVector lifted = lift(traj.actions[j], AngleVector(m));
        rate[j] = averaged_action_rate(lifted, spec, basis, budget).value;
    }

    std::vector<double> integral(m, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double h = traj.times[j] - traj.times[j - 1];
        for (std::size_t k = 0; k < m; ++k) {
            integral[k] += 0.5 * h * (rate[j - 1][k] + rate[j][k]);
            xi[j][k] = traj.actions[j][k] - traj.actions[0][k] - integral[k];
        }
    }
    return xi;
}

DissipationReport dissipation_check(const TrajectoryRecord& traj, const NonlinearitySpec& spec,
                                    const SpectralBasis& basis) {
    if (!spec.has_laplacian())
        throw std::invalid_argument(
            "dissipation_check: requires the CGL flow with the Delta dissipation term");
    const std::size_t n = traj.size();
    DissipationReport report;
    report.b2 = std::pow(spec.gamma_r, -1.0 / (2.0 * spec.exp_p));

    std::vector<double> n0sq(n), rhs(n), n0(n);
    for (std::size_t j = 0; j < n; ++j) {
        const FieldState u = mode_inverse(traj.states[j], basis);
        const double s0 = sobolev_norm(u, 0);
        const double s1 = sobolev_norm(u, 1);
        n0[j] = s0;
        n0sq[j] = s0 * s0;
        rhs[j] = -2.0 * s1 * s1 + 2.0 * s0 * s0 -
                 2.0 * spec.gamma_r * lebesgue_power_integral(u, 2.0 * spec.exp_p + 2.0);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double slope = (n0sq[j + 1] - n0sq[j - 1]) / (traj.times[j + 1] - traj.times[j - 1]);
        report.residuals.push_back(slope - rhs[j]);
    }
    report.bound_satisfied.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double bound = std::min(report.b2, std::exp(traj.times[j]) * n0[0]);
        report.bound_satisfied[j] = n0[j] <= bound + 1e-8 ? 1 : 0;
    }
    return report;
}

}  // namespace wnlse
