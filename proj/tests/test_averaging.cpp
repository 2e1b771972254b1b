#include <doctest.h>

#include "test_helpers.hpp"

using namespace wnlse;
using testutil::cubic_cgl;
using testutil::random_angles;
using testutil::random_modes;
using testutil::reference_basis;
using testutil::small_basis_m3;
using testutil::small_trig_basis_m3;

namespace {

AveragingBudget quad_budget() {
    AveragingBudget b;
    b.method = AveragingMethod::TensorQuadrature;
    return b;
}

AveragingBudget mc_budget(long samples, std::uint64_t seed) {
    AveragingBudget b;
    b.method = AveragingMethod::MonteCarlo;
    b.samples = samples;
    b.seed = seed;
    return b;
}

}  // namespace

TEST_CASE("partial averages") {
    const SpectralBasis& basis = small_basis_m3();
    const ModeVector v = random_modes(3, 61);
    SUBCASE("action observables are angle-invariant") {
        const auto f = [](const ModeVector& w) {
            return std::vector<double>{0.5 * std::norm(w[0])};
        };
        for (int n : {1, 2, 3}) {
            const AverageEstimate est = partial_average(f, v, n, 8);
            CHECK(est.value[0] == doctest::Approx(0.5 * std::norm(v[0])).epsilon(1e-12));
            CHECK(est.std_error[0] == 0.0);
            CHECK(est.method == AveragingMethod::TensorQuadrature);
        }
    }
    SUBCASE("mean of a pure harmonic over the circle vanishes") {
        const auto f = [](const ModeVector& w) {
            return std::vector<double>{w[0].real()};
        };
        const AverageEstimate est = partial_average(f, v, 1, 4);
        CHECK(std::abs(est.value[0]) <= 1e-14);
    }
    SUBCASE("cubic action field: partial average over all angles matches Monte Carlo") {
        const NonlinearitySpec spec = cubic_cgl();
        const auto f = [&](const ModeVector& w) { return eval_F(w, spec, basis); };
        const AverageEstimate quad = partial_average(f, v, 3, 8);
        const AverageEstimate mc = full_average_mc(f, v, 20000, 7);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(mc.value[k] - quad.value[k]) <= 3.0 * mc.std_error[k] + 1e-12);
    }
    SUBCASE("budget violations are configuration errors") {
        const auto f = [](const ModeVector&) { return std::vector<double>{0.0}; };
        CHECK_THROWS_AS(partial_average(f, v, 4, 8), std::invalid_argument);  // N > min(M, 4)
        CHECK_THROWS_AS(partial_average(f, v, 1, 3), std::invalid_argument);  // too few nodes
    }
}

TEST_CASE("Monte Carlo averages") {
    const SpectralBasis& basis = small_basis_m3();
    const ModeVector v = random_modes(3, 67);
    SUBCASE("action observables have zero variance") {
        const auto f = [](const ModeVector& w) {
            return std::vector<double>{0.5 * std::norm(w[1])};
        };
        const AverageEstimate est = full_average_mc(f, v, 256, 5);
        CHECK(est.value[0] == doctest::Approx(0.5 * std::norm(v[1])).epsilon(1e-12));
        CHECK(est.std_error[0] <= 1e-14);
    }
    SUBCASE("harmonic averages vanish within three standard errors") {
        const auto f = [](const ModeVector& w) {
            return std::vector<double>{w[0].real()};
        };
        const AverageEstimate est = full_average_mc(f, v, 4096, 11);
        CHECK(std::abs(est.value[0]) <= 3.0 * est.std_error[0]);
    }
    SUBCASE("standard error scales like samples^(-1/2)") {
        const NonlinearitySpec spec = cubic_cgl();
        const auto f = [&](const ModeVector& w) { return eval_F(w, spec, basis); };
        const AverageEstimate small = full_average_mc(f, v, 2048, 13);
        const AverageEstimate big = full_average_mc(f, v, 8192, 13);
        for (std::size_t k = 0; k < 3; ++k) {
            const double ratio = big.std_error[k] / small.std_error[k];
            CHECK(ratio == doctest::Approx(0.5).epsilon(0.25));  // quadrupling halves the error
        }
    }
    SUBCASE("fixed seed reproduces bit-identical estimates") {
        const auto f = [&](const ModeVector& w) { return eval_F(w, cubic_cgl(), basis); };
        const AverageEstimate a = full_average_mc(f, v, 1024, 17);
        const AverageEstimate b = full_average_mc(f, v, 1024, 17);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(a.value[k] == b.value[k]);
            CHECK(a.std_error[k] == b.std_error[k]);
        }
    }
    SUBCASE("sample floor") {
        const auto f = [](const ModeVector&) { return std::vector<double>{0.0}; };
        CHECK_THROWS_AS(full_average_mc(f, v, 8, 1), std::invalid_argument);
    }
}

TEST_CASE("effective field") {
    SUBCASE("zero spec") {
        const EffectiveFieldEstimate est =
            effective_field(random_modes(3, 71), NonlinearitySpec{}, small_basis_m3(), {});
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(est.field[k]) == 0.0);
    }
    SUBCASE("pure Laplacian dissipation averages to the closed-form diagonal") {
        const SpectralBasis& basis = small_trig_basis_m3();
        const NonlinearitySpec lap = cubic_cgl(0.0, 0.0, true);
        const std::vector<double> diag = cgl_effective_linear(basis, basis.potential);
        const ModeVector v = random_modes(3, 73);
        const EffectiveFieldEstimate est = effective_field(v, lap, basis, quad_budget());
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(std::abs(est.field[k] - diag[k] * v[k]) <= 1e-10);
            CHECK(diag[k] <= 1e-12);  // -<(-Delta) zeta, zeta> is nonpositive
        }
    }
    SUBCASE("constant potential diagonal is 1 - lambda_k") {
        const SpectralBasis& basis = small_basis_m3();
        const std::vector<double> diag = cgl_effective_linear(basis, basis.potential);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(diag[k] == doctest::Approx(1.0 - basis.eigenvalue(static_cast<int>(k)))
                                 .epsilon(1e-12));
    }
    SUBCASE("single active angle: generic averager on a full-size basis") {
        const SpectralBasis& basis = reference_basis();
        const NonlinearitySpec lap = cubic_cgl(0.0, 0.0, true);
        const std::vector<double> diag = cgl_effective_linear(basis, basis.potential);
        ModeVector e(static_cast<std::size_t>(basis.truncation));
        e[4] = cplx(0.6, 0.8);
        const EffectiveFieldEstimate est = effective_field(e, lap, basis, {});
        CHECK(est.method == AveragingMethod::TensorQuadrature);
        for (std::size_t k = 0; k < e.size(); ++k)
            CHECK(std::abs(est.field[k] - diag[k] * e[k]) <= 1e-10);
    }
}

TEST_CASE("resonant closed form matches the quadrature average") {
    const SpectralBasis& basis = small_trig_basis_m3();
    const CubicResonantTable table = build_cubic_resonant_table(basis);
    const ModeVector v = random_modes(3, 79);
    const std::vector<double> rho = resonant_cubic_amplitude(v, table);
    const std::vector<double> diag = cgl_effective_linear(basis, basis.potential);

    SUBCASE("dissipative and Hamiltonian cubic averages") {
        const NonlinearitySpec spec = cubic_cgl(1.3, 0.6, true);
        const EffectiveFieldEstimate est = effective_field(v, spec, basis, quad_budget());
        for (std::size_t k = 0; k < 3; ++k) {
            const cplx expected =
                (diag[k] - spec.gamma_r * rho[k] - cplx(0.0, spec.gamma_i * rho[k])) * v[k];
            CHECK(std::abs(est.field[k] - expected) <= 1e-10);
        }
    }
    SUBCASE("mean potential diagonal matches the linear part") {
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(diag[k] == doctest::Approx(-basis.eigenvalue(static_cast<int>(k)) +
                                             table.mean_potential[k])
                                 .epsilon(1e-12));
    }
}

TEST_CASE("rotation equivariance of the effective field") {
    const SpectralBasis& basis = small_trig_basis_m3();
    const NonlinearitySpec spec = cubic_cgl();
    SUBCASE("quadrature version is exact to 1e-8") {
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
            const ModeVector v = random_modes(3, 400 + trial);
            const AngleVector theta = random_angles(3, 500 + trial);
            const EffectiveFieldEstimate a =
                effective_field(rotate(v, theta), spec, basis, quad_budget());
            const EffectiveFieldEstimate b = effective_field(v, spec, basis, quad_budget());
            cplx diff = 0.0;
            double worst = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                diff = a.field[k] - b.field[k] * std::polar(1.0, theta[k]);
                worst = std::max(worst, std::abs(diff));
            }
            CHECK(worst <= 1e-8);
        }
    }
    SUBCASE("Monte Carlo version agrees within three combined standard errors") {
        const ModeVector v = random_modes(3, 83);
        const AngleVector theta = random_angles(3, 89);
        const EffectiveFieldEstimate a =
            effective_field(rotate(v, theta), spec, basis, mc_budget(8192, 3));
        const EffectiveFieldEstimate b = effective_field(v, spec, basis, mc_budget(8192, 4));
        for (std::size_t k = 0; k < 3; ++k) {
            const double combined =
                std::sqrt(a.std_error[k] * a.std_error[k] + b.std_error[k] * b.std_error[k]);
            CHECK(std::abs(a.field[k] - b.field[k] * std::polar(1.0, theta[k])) <=
                  3.0 * combined + 1e-12);
        }
    }
}

TEST_CASE("averaging identity <(v_k, P_k)> = (v_k, R_k)") {
    const SpectralBasis& basis = small_basis_m3();
    const NonlinearitySpec spec = cubic_cgl();
    const ModeVector v = random_modes(3, 97);
    const EffectiveFieldEstimate r = effective_field(v, spec, basis, quad_budget());
    const auto f = [&](const ModeVector& w) { return eval_F(w, spec, basis); };
    const AverageEstimate mc = full_average_mc(f, v, 10000, 21);
    for (std::size_t k = 0; k < 3; ++k) {
        const double pairing = std::real(v[k] * std::conj(r.field[k]));
        CHECK(std::abs(mc.value[k] - pairing) <= 3.0 * mc.std_error[k] + 1e-12);
    }
}

TEST_CASE("averaged action rate") {
    SUBCASE("closed form equals tensor quadrature on a small basis") {
        const SpectralBasis& basis = small_trig_basis_m3();
        const NonlinearitySpec spec = cubic_cgl(1.1, 0.4, true);
        const ModeVector v = random_modes(3, 101);
        AveragingBudget closed;
        closed.method = AveragingMethod::ClosedForm;
        const AverageEstimate a = averaged_action_rate(v, spec, basis, closed);
        const AverageEstimate b = averaged_action_rate(v, spec, basis, quad_budget());
        CHECK(a.method == AveragingMethod::ClosedForm);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(a.value[k] == doctest::Approx(b.value[k]).epsilon(1e-10));
    }
    SUBCASE("closed form matches Monte Carlo on the reference basis") {
        const SpectralBasis& basis = reference_basis();
        const NonlinearitySpec spec = cubic_cgl();
        const ModeVector v = random_modes(static_cast<std::size_t>(basis.truncation), 103);
        const AverageEstimate closed = averaged_action_rate(v, spec, basis, {});
        CHECK(closed.method == AveragingMethod::ClosedForm);
        const AverageEstimate mc =
            averaged_action_rate(v, spec, basis, mc_budget(8192, 23));
        for (std::size_t k = 0; k < v.size(); ++k)
            CHECK(std::abs(closed.value[k] - mc.value[k]) <= 3.5 * mc.std_error[k] + 1e-12);
    }
    SUBCASE("averages depend on the actions only") {
        const SpectralBasis& basis = small_trig_basis_m3();
        const NonlinearitySpec spec = cubic_cgl();
        const ModeVector v = random_modes(3, 107);
        const ModeVector w = rotate(v, random_angles(3, 109));
        const AverageEstimate a = averaged_action_rate(v, spec, basis, quad_budget());
        const AverageEstimate b = averaged_action_rate(w, spec, basis, quad_budget());
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(a.value[k] == doctest::Approx(b.value[k]).epsilon(1e-10));
    }
    SUBCASE("zero spec averages to zero") {
        const AverageEstimate est =
            averaged_action_rate(random_modes(3, 113), NonlinearitySpec{}, small_basis_m3(), {});
        for (double x : est.value) CHECK(x == 0.0);
    }
    SUBCASE("Monte Carlo estimates are angle-invariant within noise") {
        const SpectralBasis& basis = small_trig_basis_m3();
        const NonlinearitySpec spec = cubic_cgl();
        const ModeVector v = random_modes(3, 149);
        const ModeVector w = rotate(v, random_angles(3, 151));
        const AverageEstimate a = averaged_action_rate(v, spec, basis, mc_budget(8192, 7));
        const AverageEstimate b = averaged_action_rate(w, spec, basis, mc_budget(8192, 8));
        for (std::size_t k = 0; k < 3; ++k) {
            const double combined =
                std::sqrt(a.std_error[k] * a.std_error[k] + b.std_error[k] * b.std_error[k]);
            CHECK(std::abs(a.value[k] - b.value[k]) <= 3.0 * combined + 1e-12);
        }
    }
    SUBCASE("closed form refuses non-cubic dissipative exponents") {
        NonlinearitySpec spec = cubic_cgl();
        spec.exp_p = 1.5;
        AveragingBudget closed;
        closed.method = AveragingMethod::ClosedForm;
        CHECK_THROWS_AS(
            averaged_action_rate(random_modes(3, 117), spec, small_basis_m3(), closed),
            std::invalid_argument);
    }
}

TEST_CASE("partial averages converge to the full average as N grows") {
    const SpectralBasis& basis = small_trig_basis_m3();
    const NonlinearitySpec spec = cubic_cgl();
    const ModeVector v = random_modes(3, 131);
    const auto f = [&](const ModeVector& w) { return eval_F(w, spec, basis); };
    const AverageEstimate full = partial_average(f, v, 3, 8);
    double previous_gap = 1e300;
    for (int n : {1, 2, 3}) {
        const AverageEstimate part = partial_average(f, v, n, 8);
        double gap = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            gap = std::max(gap, std::abs(part.value[k] - full.value[k]));
        CHECK(gap <= previous_gap + 1e-12);
        previous_gap = gap;
    }
    CHECK(previous_gap <= 1e-12);  // N = M recovers the full average
}

TEST_CASE("Hamiltonian average does no action work") {
    SUBCASE("gamma_i = 0 vanishes identically") {
        const NonlinearitySpec spec = cubic_cgl(1.0, 0.0, true);
        CHECK(verify_r3_null(random_modes(3, 137), spec, small_basis_m3(), quad_budget()) == 0.0);
    }
    SUBCASE("single mode pairing is zero to round-off") {
        ModeVector e1(3);
        e1[0] = cplx(0.8, -0.4);
        const double r = verify_r3_null(e1, cubic_cgl(), small_basis_m3(), quad_budget());
        CHECK(r <= 1e-10);
    }
    SUBCASE("generic vector under quadrature") {
        const double r = verify_r3_null(random_modes(3, 139), cubic_cgl(), small_trig_basis_m3(),
                                        quad_budget());
        CHECK(r <= 1e-8);
    }
    SUBCASE("non-cubic Hamiltonian exponent still pairs to zero under quadrature") {
        NonlinearitySpec spec = cubic_cgl();
        spec.exp_q = 2.0;
        const double r =
            verify_r3_null(random_modes(3, 141), spec, small_trig_basis_m3(), quad_budget());
        CHECK(r <= 1e-8);
    }
}
