#include "volkov/errors.hpp"
#include "volkov/lifetime.hpp"
#include "volkov/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace volkov;

TEST_CASE("closed-form lifetimes for the v_a = 19.5 case") {
    CorrelationSpec designed;
    designed.v_a = design_va(-4.1, 3.0, 3.0);
    CHECK(lifetime_constant_field(designed, 3.0, 1.0) == doctest::Approx(0.35746).epsilon(1e-3));
    CorrelationSpec plain;
    plain.v_a = 19.5;
    CHECK(lifetime_field_free(plain, 1.0) == doctest::Approx(0.098522).epsilon(1e-3));
}

TEST_CASE("envelope length round-trips through the width") {
    CorrelationSpec spec;
    spec.v_a = -0.3;
    for (EtaShape shape : {EtaShape::Envelope, EtaShape::Spectral}) {
        const double d = width_for_length(spec, shape, 10.0, 3e5);
        CHECK(envelope_length(spec, EtaWeight(spec.mean_eta(), d, 10.0, shape)) == doctest::Approx(3e5).epsilon(1e-9));
    }
}

TEST_CASE("edges are symmetric about the envelope centre") {
    CorrelationSpec spec;
    spec.v_a = 0.0;
    const Edges e = edge_trajectories(spec, nullptr, 1000.0, 0.0);
    CHECK(e.rising == doctest::Approx(-e.falling));
    CHECK(e.rising - e.falling == doctest::Approx(2000.0 / 1.8));
}

TEST_CASE("numeric root-find agrees with the constant-field closed form") {
    std::mt19937 rng(20261018);
    std::uniform_real_distribution<double> vf(-5.0, 0.9), xi(0.5, 4.0), len(1e3, 1e5);
    int checked = 0;
    while (checked < 20) {
        CorrelationSpec spec;
        const double amp = xi(rng), target = vf(rng), dx3 = len(rng);
        try {
            spec.v_a = design_va(target, amp, 3.0);
            singularity_guard(spec.v_a, spec.mean_eta());
        } catch (const Error&) {
            continue;
        }
        const double analytic = lifetime_constant_field(spec, amp, dx3);
        if (!std::isfinite(analytic) || analytic > 1e7) continue;
        const PlaneWaveField f(0.01, 0.0, -1.0, FieldProfile::constant(amp));
        const double span = 10.0 * analytic + 1e3;
        const FieldIntegrals cache(f, -span - 700.0, span + 700.0);
        const LifetimeReport rep = peak_lifetime(spec, f, &cache, dx3, -span, span);
        CAPTURE(spec.v_a);
        CAPTURE(amp);
        CAPTURE(dx3);
        REQUIRE(rep.delta_x0_numeric);
        CHECK(*rep.delta_x0_numeric == doctest::Approx(analytic).epsilon(0.01));
        CHECK(rep.analytic_form == "constant-field");
        ++checked;
    }
}

TEST_CASE("field-free lifetime from the root-find") {
    CorrelationSpec spec;
    spec.v_a = 19.5;
    const PlaneWaveField none(0.01, 0.0, -1.0, FieldProfile{});
    const LifetimeReport rep = peak_lifetime(spec, none, nullptr, 3e5, -1e6, 1e6);
    REQUIRE(rep.delta_x0_numeric);
    CHECK(rep.analytic_form == "field-free");
    CHECK(*rep.delta_x0_numeric == doctest::Approx(lifetime_field_free(spec, 3e5)).epsilon(0.01));
}

TEST_CASE("measured window on a synthetic decaying peak") {
    DensityField d;
    d.grid.x3_min = -50;
    d.grid.x3_max = 50;
    d.grid.x3_steps = 101;
    d.grid.xm_min = -100;
    d.grid.xm_max = 100;
    d.grid.xm_steps = 201;
    const double sigma = 40.0;
    for (std::size_t j = 0; j < d.grid.xm_steps; ++j) {
        const double xm = d.grid.xm_at(j), a = std::exp(-xm * xm / (sigma * sigma));
        for (std::size_t i = 0; i < d.grid.x3_steps; ++i) {
            const double x3 = d.grid.x3_at(i);
            d.values.push_back(0.01 + a * std::exp(-x3 * x3 / 20.0));
        }
    }
    const MeasuredWindow w = measure_lifetime_window(d, 0.9);
    const double expected = sigma * std::sqrt(-std::log(0.9));
    CHECK(w.hi == doctest::Approx(expected).epsilon(0.02));
    CHECK(w.lo == doctest::Approx(-expected).epsilon(0.02));
    CHECK_FALSE(w.lo_clipped);
    CHECK_FALSE(w.hi_clipped);
}
