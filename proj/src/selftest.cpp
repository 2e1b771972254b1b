#include "wnlse/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "wnlse/fourier.hpp"
#include "wnlse/rng.hpp"
#include "wnlse/study.hpp"

namespace wnlse {

namespace {

struct Check {
    std::ostream& out;
    int failures = 0;

    void operator()(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << detail << ")\n";
        if (!ok) ++failures;
    }
};

ModeVector random_modes(std::size_t m, std::uint64_t seed, double scale = 1.0) {
    auto engine = seeded_engine(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ModeVector v(m);
    for (std::size_t k = 0; k < m; ++k)
        v[k] = scale * cplx(uni(engine), uni(engine)) / double(k + 1);
    return v;
}

}  // namespace

int run_selftest(const std::string& tolerance_path, std::ostream& out) {
    std::ifstream in(tolerance_path);
    if (!in) {
        out << "selftest: cannot open tolerance file: " << tolerance_path << "\n";
        return 1;
    }
    nlohmann::json tol;
    in >> tol;
    Check check{out};

    const SimulationConfig ref = reference_cgl_config();
    const Potential potential = build_potential(ref);
    const SpectralBasis basis = assemble_operator(potential, ref.grid, ref.truncation);

    // orthonormality of the eigenbasis under grid quadrature
    {
        double worst = 0.0;
        for (int a = 0; a < basis.truncation; ++a)
            for (int b = a; b < basis.truncation; ++b) {
                double dot = 0.0;
                for (std::size_t g = 0; g < basis.grid.total_points(); ++g)
                    dot += basis.eigenfunctions[a][g] * basis.eigenfunctions[b][g];
                dot *= basis.quadrature_weight;
                worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
            }
        const double lim = tol.at("orthonormality").get<double>();
        check("orthonormality", worst <= lim, "residual " + format_g17(worst));
    }

    // spectral identity <A^m u, u> = |v|_m^2
    {
        double worst = 0.0;
        const ModeVector v = random_modes(static_cast<std::size_t>(basis.truncation), 7);
        for (int m = 0; m <= 2; ++m) {
            FieldState u = mode_inverse(v, basis);
            for (int rep = 0; rep < m; ++rep) {
                FieldState lap = laplacian(u);
                for (std::size_t g = 0; g < u.values.size(); ++g)
                    u.values[g] = -lap.values[g] + basis.potential.values[g] * u.values[g];
            }
            const FieldState u0 = mode_inverse(v, basis);
            double pair = 0.0;
            for (std::size_t g = 0; g < u.values.size(); ++g)
                pair += std::real(u.values[g] * std::conj(u0.values[g]));
            pair *= basis.quadrature_weight;
            const double hp2 = hp_norm(v, basis, double(m));
            worst = std::max(worst, std::abs(pair - hp2 * hp2) / (hp2 * hp2));
        }
        const double lim = tol.at("spectral_identity_rel").get<double>();
        check("spectral identity", worst <= lim, "rel residual " + format_g17(worst));
    }

    // mode round trip
    {
        const ModeVector v = random_modes(static_cast<std::size_t>(basis.truncation), 11);
        const ModeVector w = mode_transform(mode_inverse(v, basis), basis);
        double worst = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k)
            worst = std::max(worst, std::abs(v[k] - w[k]));
        check("round trip", worst <= tol.at("round_trip").get<double>(),
              "residual " + format_g17(worst));
    }

    // rotation isometry and lift consistency
    {
        const ModeVector v = random_modes(static_cast<std::size_t>(basis.truncation), 13);
        AngleVector theta(v.size());
        auto engine = seeded_engine(17);
        std::uniform_real_distribution<double> uni(0.0, kTwoPi);
        for (auto& a : theta.angles) a = uni(engine);
        const ModeVector r = rotate(v, theta);
        double worst = 0.0;
        for (double p : {0.0, 1.0, 2.0})
            worst = std::max(worst, std::abs(hp_norm(r, basis, p) - hp_norm(v, basis, p)));
        check("rotation isometry", worst <= tol.at("rotation_isometry").get<double>(),
              "residual " + format_g17(worst));

        const ActionVector I = actions(v);
        const ModeVector lifted = lift(I, theta);
        const ActionVector I2 = actions(lifted);
        const AngleVector phi = angles(lifted);
        double worst2 = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            worst2 = std::max(worst2, std::abs(I2[k] - I[k]));
            double dphi = std::abs(reduce_angle(phi[k] - theta[k]));
            dphi = std::min(dphi, kTwoPi - dphi);
            worst2 = std::max(worst2, dphi);
        }
        check("lift consistency", worst2 <= tol.at("lift_consistency").get<double>(),
              "residual " + format_g17(worst2));
    }

    // linear flow conserves actions
    {
        NonlinearitySpec zero;
        IntegratorConfig ic = ref.integrator;
        ic.epsilon = 0.05;
        const ModeVector v0 = build_initial_modes(ref, basis);
        const TrajectoryRecord traj = integrate_perturbed(v0, zero, basis, ic);
        double drift = 0.0;
        for (std::size_t j = 0; j < traj.size(); ++j)
            drift = std::max(drift, action_distance_linf(traj.actions[j], traj.actions[0]));
        check("linear action conservation", drift <= tol.at("linear_action_drift").get<double>(),
              "drift " + format_g17(drift));
    }

    // generic averager on basis vectors reproduces the closed-form linear part
    {
        NonlinearitySpec lap_only;
        lap_only.kind = NonlinearityKind::Cgl;
        lap_only.include_laplacian_dissipation = true;
        const std::vector<double> diag = cgl_effective_linear(basis, basis.potential);
        AveragingBudget budget;
        double worst = 0.0;
        for (int k = 0; k < std::min(basis.truncation, 6); ++k) {
            ModeVector e(static_cast<std::size_t>(basis.truncation));
            e[static_cast<std::size_t>(k)] = cplx(0.8, -0.3);
            const EffectiveFieldEstimate est = effective_field(e, lap_only, basis, budget);
            for (std::size_t i = 0; i < e.size(); ++i) {
                const cplx expect = diag[i] * e[i];
                worst = std::max(worst, std::abs(est.field[i] - expect));
            }
        }
        check("effective linear part", worst <= tol.at("effective_linear_match").get<double>(),
              "residual " + format_g17(worst));
    }

    // averaging identity: MC <F_k> vs quadrature (v_k, R_k) on a 3-mode basis
    {
        const Grid small_grid(1, 16);
        const Potential small_pot = make_constant_potential(small_grid, 1.0);
        const SpectralBasis small = assemble_operator(small_pot, small_grid, 3);
        NonlinearitySpec cgl;
        cgl.kind = NonlinearityKind::Cgl;
        cgl.gamma_r = 1.0;
        cgl.gamma_i = 1.0;
        cgl.include_laplacian_dissipation = true;
        const ModeVector v = random_modes(3, 23);
        AveragingBudget quad_budget;
        quad_budget.method = AveragingMethod::TensorQuadrature;
        const EffectiveFieldEstimate r = effective_field(v, cgl, small, quad_budget);
        const auto f = [&](const ModeVector& w) { return eval_F(w, cgl, small); };
        const AverageEstimate mc = full_average_mc(f, v, 10000, 99);
        const double sigmas = tol.at("averaging_identity_sigmas").get<double>();
        bool ok = true;
        double worst_pull = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double target = std::real(v[k] * std::conj(r.field[k]));
            const double pull = std::abs(mc.value[k] - target) /
                                std::max(mc.std_error[k], 1e-300);
            worst_pull = std::max(worst_pull, pull);
            if (pull > sigmas) ok = false;
        }
        check("averaging identity", ok, "worst pull " + format_g17(worst_pull) + " sigma");

        const double r3 = verify_r3_null(v, cgl, small, quad_budget);
        check("R3 nullity", r3 <= tol.at("r3_null").get<double>(), "max pairing " + format_g17(r3));
    }

    // Weyl exponent
    {
        const Grid wg(1, 256);
        const SpectralBasis wb = assemble_operator(make_constant_potential(wg, 1.0), wg, 64);
        const WeylFit fit = weyl_fit(wb);
        const double rel = std::abs(fit.exponent - 2.0) / 2.0;
        check("weyl exponent", rel <= tol.at("weyl_exponent_rel").get<double>(),
              "exponent " + format_g17(fit.exponent));
    }

    // reference epsilon-sweep regression (frozen pilot anchors)
    {
        const StudyResult study = convergence_study(ref, 2, false);
        bool decreasing = true;
        for (std::size_t i = 1; i < study.rows.size(); ++i) {
            if (*study.rows[i].sup_err_q0 >= *study.rows[i - 1].sup_err_q0) decreasing = false;
            if (study.rows[i].sup_xi >= study.rows[i - 1].sup_xi) decreasing = false;
        }
        const double ratio = *study.rows.back().sup_err_q0 / *study.rows.front().sup_err_q0;
        check("sweep monotonicity", decreasing,
              "e(0.2) " + format_g17(*study.rows.front().sup_err_q0) + " ... e(0.025) " +
                  format_g17(*study.rows.back().sup_err_q0));
        check("sweep contraction", ratio <= tol.at("reference_e_ratio_max").get<double>(),
              "ratio " + format_g17(ratio));
        check("a-priori bound", study.sup_v2 <= tol.at("apriori_sup_v2").get<double>(),
              "sup |v|_2 " + format_g17(study.sup_v2));
        check("anchor e(0.2)",
              *study.rows.front().sup_err_q0 <= tol.at("reference_e02_max").get<double>(),
              "e(0.2) " + format_g17(*study.rows.front().sup_err_q0));
        check("anchor sup_xi(0.2)",
              study.rows.front().sup_xi <= tol.at("reference_xi02_max").get<double>(),
              "sup_xi(0.2) " + format_g17(study.rows.front().sup_xi));
    }

    out << (check.failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: " + std::to_string(check.failures) +
                                      " check(s) failed\n");
    return check.failures;
}

}  // namespace wnlse
