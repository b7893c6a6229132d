#pragma once

#include "volkov/field.hpp"
#include "volkov/kinematics.hpp"
#include "volkov/synthesis.hpp"

#include <vector>

namespace volkov {

struct TrajectorySample {
    double x_minus = 0;
    double xf1 = 0, xf2 = 0, xf3 = 0, xf3_tilde = 0;
    double ex1 = 0, ex2 = 0, ex3 = 0, ex3_tilde = 0;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
};

struct TrajectoryRange {
    double x_min = 0, x_max = 0;
    std::size_t steps = 2;
    double at(std::size_t i) const;
};

// x_f1 = -I1/P_-, x_f3 = [v_a/(1-v_a)] x_- + I2/(2 P_-^2); tilde uses the cycle-averaged I2.
TrajectoryRecord peak_trajectory(const CorrelationSpec& spec, const FieldIntegrals* field, const TrajectoryRange& range);

// <x1> = -<1/p_-> I1, <x3> = <p3/p_-> x_- + <1/p_-^2> I2/2 with |N|^2 |T|^2 weights.
TrajectoryRecord expectation_trajectory(const Moments& moments, const FieldIntegrals* field,
                                        const TrajectoryRange& range);

// Both parts in one record.
TrajectoryRecord trajectories(const Wavepacket& wp, const TrajectoryRange& range);

double cycle_averaged_peak_velocity(const CorrelationSpec& spec, double xi);

// Cycle-averaged d<x3>/dx_- from the node moments at local amplitude xi.
double expectation_velocity(const Moments& moments, double xi);

double expectation_velocity_approx(const CorrelationSpec& spec, double w, double xi);

// dx3/dx_- to dx3/dx0.
inline double lightfront_to_lab(double s) { return s / (1.0 + s); }
inline double lab_to_lightfront(double v) { return v / (1.0 - v); }

struct ComovingSample {
    double x_minus = 0, x1 = 0, x3 = 0;
};

// x3 -> x3 - v x0 with x0 taken on the drift worldline, i.e. x3 - [v/(1-v)] x_-.
std::vector<ComovingSample> comoving_transform(const TrajectoryRecord& record, double v, bool expectation);

struct LoopMetrics {
    double gap = 0;          // |end - start| in the (x1, x3') plane
    double extent = 0;       // largest extent of the loop
    double x1_amplitude = 0; // half peak-to-peak
    double x3_amplitude = 0; // amplitude of the 2 omega component
    double x3_other = 0;     // residual after removing mean, drift and 2 omega
    int x3_zero_crossings = 0;
};

LoopMetrics loop_metrics(const std::vector<ComovingSample>& loop, double omega);

} // namespace volkov
