#include <doctest.h>

#include "test_helpers.hpp"

using namespace wnlse;
using testutil::random_angles;
using testutil::random_modes;
using testutil::reference_basis;

TEST_CASE("actions are half squared amplitudes") {
    ModeVector v(4);
    v[0] = cplx(1.0, 0.0);
    v[1] = cplx(0.0, 3.0);
    const ActionVector I = actions(v);
    CHECK(I[0] == 0.5);
    CHECK(I[1] == 4.5);
    CHECK(I[2] == 0.0);
    CHECK(I[3] == 0.0);
}

TEST_CASE("action norm identity |actions(v)|~_p = |v|_p^2") {
    const SpectralBasis& basis = reference_basis();
    const ModeVector v = random_modes(static_cast<std::size_t>(basis.truncation), 5);
    for (double p : {0.0, 1.0, 2.0}) {
        const double lhs = action_norm(actions(v), basis, p);
        const double rhs = std::pow(hp_norm(v, basis, p), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    ActionVector zero(static_cast<std::size_t>(basis.truncation));
    CHECK(action_norm(zero, basis, 1.0) == 0.0);
}

TEST_CASE("angles use the [0, 2pi) branch and the zero convention") {
    ModeVector v(3);
    v[0] = cplx(0.0, 1.0);
    v[1] = cplx(0.0, 0.0);
    v[2] = cplx(1.0, -1.0);
    const AngleVector phi = angles(v);
    CHECK(phi[0] == doctest::Approx(kTwoPi / 4.0).epsilon(1e-14));
    CHECK(phi[1] == 0.0);
    CHECK(phi[2] == doctest::Approx(7.0 * kTwoPi / 8.0).epsilon(1e-14));
    for (double a : phi.angles) {
        CHECK(a >= 0.0);
        CHECK(a < kTwoPi);
    }
}

TEST_CASE("near-zero components follow the zero-angle convention") {
    ModeVector v(1);
    v[0] = cplx(1e-15, -1e-15);
    CHECK(angles(v)[0] == 0.0);
}

TEST_CASE("rotation") {
    const std::size_t m = 6;
    const ModeVector v = random_modes(m, 23);
    SUBCASE("zero angles is the identity") {
        const ModeVector w = rotate(v, AngleVector(m));
        for (std::size_t k = 0; k < m; ++k) CHECK(v[k] == w[k]);
    }
    SUBCASE("pi on the first mode flips its sign") {
        AngleVector theta(m);
        theta[0] = kTwoPi / 2.0;
        const ModeVector w = rotate(v, theta);
        CHECK(std::abs(w[0] + v[0]) <= 1e-15);
        for (std::size_t k = 1; k < m; ++k) CHECK(w[k] == v[k]);
    }
    SUBCASE("actions are exactly invariant") {
        const AngleVector theta = random_angles(m, 29);
        const ActionVector a = actions(v);
        const ActionVector b = actions(rotate(v, theta));
        for (std::size_t k = 0; k < m; ++k)
            CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-15));
    }
    SUBCASE("group law theta then eta equals theta + eta") {
        const AngleVector theta = random_angles(m, 31);
        const AngleVector eta = random_angles(m, 37);
        const ModeVector lhs = rotate(rotate(v, theta), eta);
        AngleVector sum(m);
        for (std::size_t k = 0; k < m; ++k) sum[k] = reduce_angle(theta[k] + eta[k]);
        const ModeVector rhs = rotate(v, sum);
        for (std::size_t k = 0; k < m; ++k) CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-12);
    }
    SUBCASE("length mismatch is a shape error") {
        CHECK_THROWS_AS(rotate(v, AngleVector(m + 1)), std::invalid_argument);
    }
}

TEST_CASE("rotation is an isometry of every hp norm") {
    const SpectralBasis& basis = reference_basis();
    const std::size_t m = static_cast<std::size_t>(basis.truncation);
    const ModeVector v = random_modes(m, 41);
    const ModeVector w = rotate(v, random_angles(m, 43));
    for (double p : {0.0, 1.0, 2.0})
        CHECK(hp_norm(w, basis, p) == doctest::Approx(hp_norm(v, basis, p)).epsilon(1e-12));
}

TEST_CASE("lift is a right inverse of the action map") {
    SUBCASE("unit action and zero angle") {
        ActionVector I(3);
        I[0] = 0.5;
        const ModeVector v = lift(I, AngleVector(3));
        CHECK(std::abs(v[0] - cplx(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(v[1]) == 0.0);
    }
    SUBCASE("zero actions lift to zero") {
        const ModeVector v = lift(ActionVector(4), random_angles(4, 47));
        for (const cplx& z : v.coeffs) CHECK(std::abs(z) == 0.0);
    }
    SUBCASE("round trip (actions, angles) of a lift") {
        const std::size_t m = 8;
        auto engine = seeded_engine(53);
        std::uniform_real_distribution<double> uni(0.1, 2.0);
        ActionVector I(m);
        for (auto& a : I.actions) a = uni(engine);
        const AngleVector theta = random_angles(m, 59);
        const ModeVector v = lift(I, theta);
        const ActionVector I2 = actions(v);
        const AngleVector phi = angles(v);
        for (std::size_t k = 0; k < m; ++k) {
            CHECK(I2[k] == doctest::Approx(I[k]).epsilon(1e-12));
            double gap = std::abs(phi[k] - theta[k]);
            gap = std::min(gap, kTwoPi - gap);
            CHECK(gap <= 1e-12);
        }
    }
    SUBCASE("negative action is a domain error") {
        ActionVector I(2);
        I[1] = -0.25;
        CHECK_THROWS_AS(lift(I, AngleVector(2)), std::domain_error);
    }
}
