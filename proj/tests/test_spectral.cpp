#include "volkov/errors.hpp"
#include "volkov/kinematics.hpp"
#include "volkov/spectral.hpp"
#include "volkov/synthesis.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace volkov;

namespace {

double integrate_sq(const QuadratureRule& q, const std::function<double(double)>& f) {
    double s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]) * f(q.nodes[i]);
    return s;
}

// 90%-intensity half-width of |int N(eta) exp(i eta t) d eta|^2 in units of 1/width, by plain trapezoid.
double calibration_oracle(const EtaWeight& N) {
    const double a = N.center() - N.support_half_width(), b = N.center() + N.support_half_width();
    const int n = 20000;
    auto intensity = [&](double t) {
        std::complex<double> s = 0;
        for (int i = 0; i <= n; ++i) {
            const double e = a + (b - a) * i / n;
            s += (i == 0 || i == n ? 0.5 : 1.0) * N(e) * std::polar(1.0, (e - N.center()) * t);
        }
        return std::norm(s);
    };
    const double i0 = intensity(0.0);
    double lo = 0, hi = 5.0 / N.width();
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (intensity(mid) > 0.9 * i0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) * N.width();
}

} // namespace

TEST_CASE("weights are unit-normalised in |.|^2") {
    for (EtaShape shape : {EtaShape::Spectral, EtaShape::Envelope}) {
        const EtaWeight N(1.3, 0.01, 10.0, shape);
        CHECK(integrate_sq(N.rule(2048), [&](double e) { return N(e); }) == doctest::Approx(1.0).epsilon(1e-8));
    }
    const TransverseWeight T(170.0);
    CHECK(integrate_sq(T.rule(256), [&](double p) { return T(p); }) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("spectral second moment matches the Gamma-function form") {
    const EtaWeight N(2.0, 0.05, 4.0, EtaShape::Spectral);
    const QuadratureRule q = N.rule(2048);
    double m2 = 0;
    for (std::size_t i = 0; i < q.size(); ++i) m2 += q.weights[i] * N(q.nodes[i]) * N(q.nodes[i]) * std::pow(q.nodes[i] - 2.0, 2);
    CHECK(m2 == doctest::Approx(N.second_moment_analytic()).epsilon(1e-8));
}

TEST_CASE("envelope calibration constant") {
    // envelope shape: intensity exp(-|t|^n), so the 90% point is (-ln 0.9)^(1/n)
    for (double n : {2.0, 6.0, 10.0}) CHECK(envelope_calibration(EtaShape::Envelope, n) == doctest::Approx(std::pow(-std::log(0.9), 1.0 / n)).epsilon(1e-3));
    const EtaWeight env(0.0, 1.0, 10.0, EtaShape::Envelope);
    CHECK(calibration_oracle(env) == doctest::Approx(envelope_calibration(EtaShape::Envelope, 10.0)).epsilon(2e-3));
    const EtaWeight spec(0.0, 1.0, 10.0, EtaShape::Spectral);
    CHECK(calibration_oracle(spec) == doctest::Approx(envelope_calibration(EtaShape::Spectral, 10.0)).epsilon(2e-3));
}

TEST_CASE("node moments: no eta-p1 correlation and <p1^2> = 1/w^2") {
    CorrelationSpec spec;
    spec.v_a = -0.3;
    const ModalDistribution d{spec, EtaWeight(spec.mean_eta(), 1e-4), TransverseWeight(170.0)};
    const Wavepacket wp(d, {64, 128}, nullptr);
    CHECK(std::abs(wp.moments().eta_p1_cov) < 1e-10);
    CHECK(wp.moments().p1_sq == doctest::Approx(1.0 / (170.0 * 170.0)).epsilon(1e-6));
    CHECK(wp.dropped_nodes() == 0);
}

TEST_CASE("jacobian factor vanishes at the singular velocity") {
    CorrelationSpec spec;
    spec.v_a = 0.0;
    CHECK(jacobian_factor(spec, 5.0 / 3.0, 0.0) == doctest::Approx(std::sqrt(0.8)));
}

TEST_CASE("ridge curvature follows the designed in-field velocity") {
    const double w = 4.0 * std::numbers::pi;
    auto ridge = [&](double vf) {
        CorrelationSpec spec;
        spec.v_a = design_va(vf, 3.0, 3.0);
        const ModalDistribution d{spec, EtaWeight(spec.mean_eta(), 0.01, 10.0, EtaShape::Spectral), TransverseWeight(w)};
        const double r0 = ridge_q3_over_qminus(d, 3.0, 0.0), r1 = ridge_q3_over_qminus(d, 3.0, 1.0 / w);
        return (r1 - r0) / std::abs(r0);
    };
    CHECK(ridge(0.0) > 0.0);
    CHECK(ridge(-0.5) < 0.0);
    CHECK(std::abs(ridge(-4.1)) < 1e-3);

    CorrelationSpec spec;
    spec.v_a = 0.0;
    const ModalDistribution d{spec, EtaWeight(spec.mean_eta(), 0.01), TransverseWeight(w)};
    const double flat = ridge_q3_over_qminus(d, 0.0, 1.0 / w) - ridge_q3_over_qminus(d, 0.0, 0.0);
    CHECK(std::abs(flat) < 2.0 / (w * w * 9.0));
}

TEST_CASE("momentum map skips evanescent points") {
    CorrelationSpec spec;
    spec.v_a = 0.0;
    const ModalDistribution d{spec, EtaWeight(spec.mean_eta(), 0.5, 10.0, EtaShape::Spectral), TransverseWeight(10.0)};
    const MomentumMap m = momentum_density_map(d, 3.0, {0.5, 1.0, 5.0 / 3.0, 2.0}, {-0.1, 0.0, 0.1});
    CHECK(m.skipped == 6);
    CHECK(m.rows.size() == 6);
    for (const auto& r : m.rows) CHECK(r.weight >= 0.0);
}
