#pragma once

#include "volkov/field.hpp"
#include "volkov/spectral.hpp"
#include "volkov/synthesis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace volkov {

struct EnvelopeModel {
    double delta_x3 = 0;   // 90%-intensity half-length in x3 - (P3/E) x0
    double delta_eta = 0;
    double prefactor = 0;  // |v_a - P3/E|
    double c_N = 0;
};

EnvelopeModel envelope_model(const CorrelationSpec& spec, const EtaWeight& N);
double envelope_length(const CorrelationSpec& spec, const EtaWeight& N);
// Width of N giving the requested envelope length.
double width_for_length(const CorrelationSpec& spec, EtaShape shape, double order, double delta_x3);

struct Edges {
    double rising = 0;  // centre + half-length
    double falling = 0; // centre - half-length
};

Edges edge_trajectories(const CorrelationSpec& spec, const FieldIntegrals* field, double delta_x3, double x_minus);

struct LifetimeReport {
    double delta_x3 = 0;
    std::optional<double> delta_x0_analytic;
    std::string analytic_form;           // "constant-field", "field-free" or empty
    std::optional<double> delta_x0_numeric;
    std::optional<double> delta_x_minus;
    std::vector<double> roots;           // x_- of the exits nearest x_- = 0
    bool no_intersection = false;
    std::string note;
};

// Duration in x0 for a constant amplitude xi.
double lifetime_constant_field(const CorrelationSpec& spec, double xi, double delta_x3);
// Field-free duration.
double lifetime_field_free(const CorrelationSpec& spec, double delta_x3);

// Root-find x~_f3 against both edges on [x_lo, x_hi].
LifetimeReport peak_lifetime(const CorrelationSpec& spec, const PlaneWaveField& field, const FieldIntegrals* cache,
                             double delta_x3, double x_lo, double x_hi);

// Contiguous x_- window around 0 where the slice peak is located and its value stays
// above `level` times the value at the row nearest x_- = 0.
struct MeasuredWindow {
    double lo = 0, hi = 0;
    bool lo_clipped = false, hi_clipped = false;
};

MeasuredWindow measure_lifetime_window(const DensityField& field, double level = 0.9);

} // namespace volkov
