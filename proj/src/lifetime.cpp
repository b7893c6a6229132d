#include "volkov/lifetime.hpp"
#include "volkov/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

namespace volkov {

EnvelopeModel envelope_model(const CorrelationSpec& spec, const EtaWeight& N) {
    EnvelopeModel m;
    m.c_N = envelope_calibration(N.shape(), N.order());
    m.delta_eta = N.width();
    m.prefactor = std::abs(spec.v_a - spec.reference().velocity());
    m.delta_x3 = m.c_N * m.prefactor / m.delta_eta;
    return m;
}

double envelope_length(const CorrelationSpec& spec, const EtaWeight& N) { return envelope_model(spec, N).delta_x3; }

double width_for_length(const CorrelationSpec& spec, EtaShape shape, double order, double delta_x3) {
    if (!(delta_x3 > 0.0)) throw ValidationError("envelope length must be > 0");
    const double pre = std::abs(spec.v_a - spec.reference().velocity());
    if (pre == 0.0) throw SingularSlice("v_a = P3/E: envelope length undefined");
    return envelope_calibration(shape, order) * pre / delta_x3;
}

Edges edge_trajectories(const CorrelationSpec& spec, const FieldIntegrals* field, double delta_x3, double x) {
    const ReferencePoint ref = spec.reference();
    const double P = spec.P_minus;
    const double I2bar = field ? field->at(x).I2bar : 0.0;
    const double centre = ref.P3 / P * x + I2bar / (2.0 * P * P);
    const double half = delta_x3 / (1.0 - ref.velocity());
    return {centre + half, centre - half};
}

double lifetime_constant_field(const CorrelationSpec& spec, double xi, double delta_x3) {
    const ReferencePoint ref = spec.reference();
    const double v1 = drift_velocity_1d(ref.velocity(), xi, spec.P_minus);
    const double vf = peak_velocity_infield(spec.v_a, xi, spec.P_minus);
    if (vf == v1) throw NoIntersection("peak co-moves with the envelope");
    return 2.0 * delta_x3 / (1.0 - ref.velocity()) * std::abs((1.0 - v1) / (vf - v1));
}

double lifetime_field_free(const CorrelationSpec& spec, double delta_x3) {
    const double d = std::abs(spec.v_a - spec.reference().velocity());
    if (d == 0.0) throw NoIntersection("peak co-moves with the envelope");
    return 2.0 * delta_x3 / d;
}

namespace {

// Smallest |x| root of g on the side given by dir, scanning outward from 0.
std::optional<double> first_root(const std::function<double(double)>& g, double limit, int dir, std::size_t steps) {
    if (limit <= 0) return std::nullopt;
    const double h = limit / static_cast<double>(steps);
    double a = 0.0, ga = g(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double b = dir * h * static_cast<double>(i);
        const double gb = g(b);
        if (ga == 0.0) return a;
        if ((ga < 0) != (gb < 0)) {
            std::uintmax_t it = 200;
            const double lo = std::min(a, b), hi = std::max(a, b);
            const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), it);
            return 0.5 * (r.first + r.second);
        }
        a = b;
        ga = gb;
    }
    return std::nullopt;
}

} // namespace

LifetimeReport peak_lifetime(const CorrelationSpec& spec, const PlaneWaveField& field, const FieldIntegrals* cache,
                             double delta_x3, double x_lo, double x_hi) {
    if (spec.v_a == 1.0) throw ValidationError("lifetime: v_a = 1 is not covered by the edge model");
    LifetimeReport rep;
    rep.delta_x3 = delta_x3;
    const FieldProfile::Kind kind = field.active() ? field.profile().kind : FieldProfile::Kind::None;
    try {
        if (kind == FieldProfile::Kind::None) {
            rep.delta_x0_analytic = lifetime_field_free(spec, delta_x3);
            rep.analytic_form = "field-free";
        } else if (kind == FieldProfile::Kind::Constant) {
            rep.delta_x0_analytic = lifetime_constant_field(spec, field.profile().xi_star, delta_x3);
            rep.analytic_form = "constant-field";
        }
    } catch (const NoIntersection& e) {
        rep.note = e.what();
    }

    const double P = spec.P_minus;
    const double drift = spec.v_a / (1.0 - spec.v_a);
    auto I2bar = [&](double x) { return cache ? cache->at(x).I2bar : 0.0; };
    auto xf3 = [&](double x) { return drift * x + I2bar(x) / (2.0 * P * P); };
    auto g_rise = [&](double x) { return xf3(x) - edge_trajectories(spec, cache, delta_x3, x).rising; };
    auto g_fall = [&](double x) { return xf3(x) - edge_trajectories(spec, cache, delta_x3, x).falling; };

    const std::size_t steps = 20000;
    std::optional<double> right, left;
    const std::function<double(double)> edges[2] = {g_rise, g_fall};
    for (const auto& fn : edges) {
        if (auto r = first_root(fn, x_hi, +1, steps)) right = right ? std::min(*right, *r) : *r;
        if (auto l = first_root(fn, -x_lo, -1, steps)) left = left ? std::max(*left, *l) : *l;
    }
    if (!right || !left) {
        rep.no_intersection = true;
        if (rep.note.empty()) rep.note = "peak stays inside the envelope over the searched range";
        if (left) rep.roots.push_back(*left);
        if (right) rep.roots.push_back(*right);
        return rep;
    }
    rep.roots = {*left, *right};
    rep.delta_x_minus = *right - *left;
    rep.delta_x0_numeric = std::abs((*right + xf3(*right)) - (*left + xf3(*left)));
    return rep;
}

MeasuredWindow measure_lifetime_window(const DensityField& field, double level) {
    const SpacetimeGrid& g = field.grid;
    if (g.xm_steps < 3) throw ValidationError("lifetime window needs at least three x_- rows");
    const double dxm = g.dxm();
    const std::size_t j0 = static_cast<std::size_t>(
        std::clamp(std::round((0.0 - g.xm_min) / dxm), 0.0, static_cast<double>(g.xm_steps - 1)));
    auto row_peak = [&](std::size_t j) -> std::optional<double> {
        try {
            return peak_locate(field.row(j), g.x3_steps, g.x3_min, g.dx3()).value;
        } catch (const FlatSlice&) {
            return std::nullopt;
        }
    };
    const auto ref = row_peak(j0);
    if (!ref) throw FlatSlice("no distinguishable peak at x_- = 0");
    const double target = level * *ref;
    MeasuredWindow w;
    auto walk = [&](int dir, double& edge, bool& clipped) {
        std::size_t j = j0;
        double prev = *ref;
        for (;;) {
            if ((dir > 0 && j + 1 >= g.xm_steps) || (dir < 0 && j == 0)) {
                edge = g.xm_at(j);
                clipped = true;
                return;
            }
            const std::size_t k = dir > 0 ? j + 1 : j - 1;
            const auto v = row_peak(k);
            if (!v || *v < target) {
                const double cur = v ? *v : 0.0;
                const double t = (prev - target) / (prev - cur);
                edge = g.xm_at(j) + dir * dxm * std::clamp(t, 0.0, 1.0);
                return;
            }
            prev = *v;
            j = k;
        }
    };
    walk(+1, w.hi, w.hi_clipped);
    walk(-1, w.lo, w.lo_clipped);
    return w;
}

} // namespace volkov
