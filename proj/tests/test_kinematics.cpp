#include "volkov/errors.hpp"
#include "volkov/kinematics.hpp"

#include <doctest.h>

#include <cmath>

using namespace volkov;

TEST_CASE("designer reproduces the three designed out-of-field velocities") {
    CHECK(std::abs(design_va(0.2, 3.0, 3.0)) < 1e-12);
    CHECK(design_va(0.0, 3.0, 3.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(design_va(-4.1, 3.0, 3.0) - 19.545) < 1e-3);
    // v_f* = 1 - 1/X makes the designer denominator vanish
    CHECK_THROWS_AS(design_va(-3.0, 3.0, 3.0), DesignerSingular);
}

TEST_CASE("designer and in-field velocity are inverse maps") {
    for (int i = 0; i < 50; ++i) {
        const double vf = -5.0 + 5.9 * i / 49.0;
        if (std::abs(vf + 3.0) < 1e-6) continue;
        CHECK(peak_velocity_infield(design_va(vf, 3.0, 3.0), 3.0, 3.0) == doctest::Approx(vf).epsilon(1e-10));
    }
}

TEST_CASE("reference point and drift constants") {
    const ReferencePoint p = ReferencePoint::at(3.0);
    CHECK(p.P3 == doctest::Approx(-4.0 / 3.0));
    CHECK(p.E == doctest::Approx(5.0 / 3.0));
    CHECK(p.eta(0.0) == doctest::Approx(1.6667).epsilon(3e-5));
    CHECK(p.eta(-0.3) == doctest::Approx(1.2667).epsilon(3e-5));
    const double v1 = drift_velocity_1d(p.velocity(), 3.0, 3.0);
    CHECK(v1 == doctest::Approx(-0.2414).epsilon(2e-4));
    CHECK(drift_velocity_1d(p.velocity(), 0.0, 3.0) == doctest::Approx(-0.8));
    CHECK(v1 / (1 - v1) == doctest::Approx(-0.1944).epsilon(3e-4));
    CHECK(peak_velocity_infield(-0.3, 3.0, 3.0) == doctest::Approx(0.019).epsilon(0.01));
    CHECK(peak_velocity_infield(19.5, 3.0, 3.0) == doctest::Approx(-4.1).epsilon(0.002));
}

TEST_CASE("on-shell solutions satisfy the constraint on every branch regime") {
    for (double va : {-0.3, 0.0, 0.5, 1.0, -1.0, 19.5, -1.4}) {
        CorrelationSpec spec;
        spec.v_a = va;
        const double eta0 = spec.mean_eta();
        const OnShellMomentum ref = on_shell(spec, eta0, 0.0);
        CHECK(ref.minus() == doctest::Approx(3.0).epsilon(1e-12));
        for (double p1 : {0.0, 0.01, -0.05}) {
            const OnShellMomentum p = on_shell(spec, eta0, p1);
            CHECK(p.E - va * p.p3 == doctest::Approx(eta0).epsilon(1e-12));
            CHECK(p.E * p.E == doctest::Approx(1.0 + p1 * p1 + p.p3 * p.p3).epsilon(1e-12));
            CHECK(p.E > 0.0);
        }
    }
}

TEST_CASE("free slope along the eta curve equals v_a") {
    for (double va : {-0.3, 0.0, 19.5}) {
        CorrelationSpec spec;
        spec.v_a = va;
        const SlopeCheck s = slope_check(spec, spec.mean_eta(), 0.0);
        CHECK(std::abs(s.free_slope - va) < 1e-6);
    }
}

TEST_CASE("dressed slope equals the designed in-field velocity") {
    for (double vf : {0.2, 0.0, -4.1}) {
        CorrelationSpec spec;
        spec.v_a = design_va(vf, 3.0, 3.0);
        const SlopeCheck s = slope_check(spec, spec.mean_eta(), 3.0);
        CHECK(std::abs(s.dressed_slope - vf) < 1e-3);
    }
}

TEST_CASE("dressed momentum lies on the shifted mass shell") {
    const FourVector p{std::sqrt(1 + 0.01 + 4.0), 0.1, 0.0, 2.0};
    const DressedMomentum q = dressed_momentum(p, 3.0);
    CHECK(q.mass_squared() == doctest::Approx(1.0 + 4.5).epsilon(1e-12));
    CHECK(q.q.minus() == doctest::Approx(p.minus()).epsilon(1e-14));
    CHECK(q.q.x1 == p.x1);
}

TEST_CASE("lambda surface is stationary in q_- at the expectation point") {
    for (double vf : {0.2, 0.0, -4.1, -0.5}) {
        const double va = design_va(vf, 3.0, 3.0);
        const double eta = ReferencePoint::at(3.0).eta(va);
        const double h = 1e-4;
        const double d = (lambda_surface(eta, 3.0 + h, va, vf, 3.0) - lambda_surface(eta, 3.0 - h, va, vf, 3.0)) / (2 * h);
        CHECK(std::abs(d) < 1e-7);
    }
    // luminal frame: lambda reduces to q_-
    CHECK(lambda_surface(1.3, 2.7, 0.4, 1.0, 3.0) == doctest::Approx(2.7));
}

TEST_CASE("singularity guard flags v_a = P3/E and evanescent slices") {
    const ReferencePoint ref = ReferencePoint::at(3.0);
    const SingularityDiagnostic s = singularity_guard(ref.velocity(), ref.eta(ref.velocity()), 0.0);
    CHECK(s.singular);
    CHECK_FALSE(s.message.empty());
    CHECK(singularity_guard(0.0, 0.5, 0.0).evanescent);
    CHECK(singularity_guard(1.0, 2.0, 0.0).branch_notice);
    CHECK_FALSE(singularity_guard(-0.3, ref.eta(-0.3), 0.0).singular);
    CorrelationSpec spec;
    spec.v_a = 0.0;
    CHECK_THROWS_AS(on_shell(spec, 0.5, 0.0), EvanescentMode);
}
