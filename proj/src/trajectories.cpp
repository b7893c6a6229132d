#include "volkov/trajectories.hpp"
#include "volkov/errors.hpp"

#include <algorithm>
#include <cmath>

namespace volkov {

double TrajectoryRange::at(std::size_t i) const {
    if (steps < 2) return x_min;
    return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

TrajectoryRecord peak_trajectory(const CorrelationSpec& spec, const FieldIntegrals* field, const TrajectoryRange& range) {
    if (spec.v_a == 1.0) throw ValidationError("peak trajectory: v_a = 1 moves at dx3/dx0 = 1 at any amplitude");
    const double P = spec.P_minus;
    const double drift = spec.v_a / (1.0 - spec.v_a);
    TrajectoryRecord r;
    r.samples.resize(range.steps);
    for (std::size_t i = 0; i < range.steps; ++i) {
        const double x = range.at(i);
        const FieldIntegrals::Values f = field ? field->at(x) : FieldIntegrals::Values{};
        TrajectorySample& s = r.samples[i];
        s.x_minus = x;
        s.xf1 = -f.I1 / P;
        s.xf3 = drift * x + f.I2 / (2.0 * P * P);
        s.xf3_tilde = drift * x + f.I2bar / (2.0 * P * P);
    }
    return r;
}

TrajectoryRecord expectation_trajectory(const Moments& m, const FieldIntegrals* field, const TrajectoryRange& range) {
    TrajectoryRecord r;
    r.samples.resize(range.steps);
    for (std::size_t i = 0; i < range.steps; ++i) {
        const double x = range.at(i);
        const FieldIntegrals::Values f = field ? field->at(x) : FieldIntegrals::Values{};
        TrajectorySample& s = r.samples[i];
        s.x_minus = x;
        s.ex1 = -m.inv_pm * f.I1;
        s.ex3 = m.p3_over_pm * x + 0.5 * m.inv_pm2 * f.I2;
        s.ex3_tilde = m.p3_over_pm * x + 0.5 * m.inv_pm2 * f.I2bar;
    }
    return r;
}

TrajectoryRecord trajectories(const Wavepacket& wp, const TrajectoryRange& range) {
    TrajectoryRecord peak = peak_trajectory(wp.distribution().spec, wp.field(), range);
    const TrajectoryRecord ex = expectation_trajectory(wp.moments(), wp.field(), range);
    for (std::size_t i = 0; i < peak.samples.size(); ++i) {
        peak.samples[i].ex1 = ex.samples[i].ex1;
        peak.samples[i].ex3 = ex.samples[i].ex3;
        peak.samples[i].ex3_tilde = ex.samples[i].ex3_tilde;
    }
    return peak;
}

double cycle_averaged_peak_velocity(const CorrelationSpec& spec, double xi) {
    if (spec.v_a == 1.0) throw ValidationError("cycle-averaged peak velocity: v_a = 1 is the luminal special case");
    return spec.v_a / (1.0 - spec.v_a) + xi * xi / (4.0 * spec.P_minus * spec.P_minus);
}

double expectation_velocity(const Moments& m, double xi) { return m.p3_over_pm + 0.25 * xi * xi * m.inv_pm2; }

double expectation_velocity_approx(const CorrelationSpec& spec, double w, double xi) {
    const ReferencePoint ref = spec.reference();
    const double v1 = drift_velocity_1d(ref.velocity(), xi, spec.P_minus);
    const double vf = peak_velocity_infield(spec.v_a, xi, spec.P_minus);
    if (std::abs(vf - v1) < 1e-12) throw SingularSlice("v_f = v_1D in the expectation-velocity expansion");
    return v1 / (1.0 - v1) + (1.0 - vf * v1) / (2.0 * spec.P_minus * spec.P_minus * (vf - v1)) / (w * w);
}

std::vector<ComovingSample> comoving_transform(const TrajectoryRecord& record, double v, bool expectation) {
    const double drift = v / (1.0 - v);
    std::vector<ComovingSample> out;
    out.reserve(record.samples.size());
    for (const auto& s : record.samples) {
        const double x1 = expectation ? s.ex1 : s.xf1;
        const double x3 = expectation ? s.ex3 : s.xf3;
        out.push_back({s.x_minus, x1, x3 - drift * s.x_minus});
    }
    return out;
}

LoopMetrics loop_metrics(const std::vector<ComovingSample>& loop, double omega) {
    LoopMetrics m;
    if (loop.size() < 8) throw ValidationError("loop needs at least eight samples");
    const auto& a = loop.front();
    const auto& b = loop.back();
    m.gap = std::hypot(b.x1 - a.x1, b.x3 - a.x3);
    double x1lo = INFINITY, x1hi = -INFINITY, x3lo = INFINITY, x3hi = -INFINITY;
    for (const auto& s : loop) {
        x1lo = std::min(x1lo, s.x1);
        x1hi = std::max(x1hi, s.x1);
        x3lo = std::min(x3lo, s.x3);
        x3hi = std::max(x3hi, s.x3);
    }
    m.extent = std::max(x1hi - x1lo, x3hi - x3lo);
    m.x1_amplitude = 0.5 * (x1hi - x1lo);

    const Eigen::Index n = static_cast<Eigen::Index>(loop.size());
    Eigen::MatrixXd A(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = loop[static_cast<std::size_t>(i)].x_minus;
        A(i, 0) = 1.0;
        A(i, 1) = x;
        A(i, 2) = std::cos(2.0 * omega * x);
        A(i, 3) = std::sin(2.0 * omega * x);
        y(i) = loop[static_cast<std::size_t>(i)].x3;
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    m.x3_amplitude = std::hypot(c(2), c(3));
    m.x3_other = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(n));

    double mean = 0;
    for (const auto& s : loop) mean += s.x3;
    mean /= static_cast<double>(loop.size());
    for (std::size_t i = 1; i < loop.size(); ++i) {
        const double p = loop[i - 1].x3 - mean, q = loop[i].x3 - mean;
        if ((p < 0 && q >= 0) || (p >= 0 && q < 0)) ++m.x3_zero_crossings;
    }
    return m;
}

} // namespace volkov
