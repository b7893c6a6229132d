#pragma once

#include "volkov/field.hpp"
#include "volkov/kinematics.hpp"
#include "volkov/spectral.hpp"
#include "volkov/synthesis.hpp"
#include "volkov/trajectories.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace volkov {

struct SpectralParams {
    EtaShape shape = EtaShape::Envelope;
    double order = 10.0;
    std::optional<double> delta_eta; // exactly one of delta_eta / delta_x3
    std::optional<double> delta_x3;
    double w = 170.0;
    Spin spin = Spin::Up;
};

struct FieldParams {
    std::string profile = "none"; // none | constant | super_gaussian | tabulated
    double xi = 0.0;              // |e| xi_* / m
    double charge_sign = -1.0;
    double omega = 0.01;
    double phase = 0.0;
    double fwhm = 0.0;
    double order = 2.0;
    double center = 0.0;
    std::vector<std::pair<double, double>> table;
    int samples = 256; // per carrier period in the integral cache
};

struct Expectation {
    double value = 0.0;
    double tolerance = 0.0;
};

struct Scenario {
    std::string name = "custom";
    std::optional<double> v_a;
    std::optional<DesignTarget> target;
    // Rounded design target that a given v_a stands for; only annotates outputs.
    std::optional<double> nominal_v_fstar;
    Branch branch = Branch::Auto;
    double P_minus = 3.0;
    SpectralParams spectral;
    FieldParams field;
    SpacetimeGrid grid{-3.0e5, 3.0e5, 200, -3.0e5, 3.0e5, 200};
    std::optional<TrajectoryRange> trajectory; // defaults to the grid x_- range
    QuadratureSizes quadrature;
    bool auto_escalate = true;
    bool enforce_nyquist = true;
    bool convergence_probe = true;
    std::string out_dir = "out";
    unsigned workers = 0;
    // Derived quantity name -> value it must reproduce.
    std::map<std::string, Expectation> expect;
};

// Everything derived from a validated scenario.
struct Resolved {
    Scenario scenario;
    CorrelationSpec spec;
    double mean_eta = 0, P3 = 0, E = 0, r = 0;
    double v_1d_xi = 0, v_1d_0 = 0, v_f_xi = 0, v_1d_ratio = 0, Y = 0;
    double delta_eta = 0, delta_x3 = 0, c_N = 0;
    std::optional<double> designed_va; // when the target was given

    ModalDistribution distribution() const;
    PlaneWaveField field() const;
    // Integral cache covering [lo, hi] plus one carrier period on each side.
    std::shared_ptr<const FieldIntegrals> integrals(double lo, double hi) const;
    std::shared_ptr<const FieldIntegrals> grid_integrals() const;
    TrajectoryRange trajectory_range() const;
    double xi_star() const;
    DensityOptions density_options() const;
    nlohmann::json derived() const;
};

Scenario parse_scenario_text(const std::string& yaml_text);
Scenario load_scenario(const std::string& path);

// Schema errors are collected into one ValidationError; singularity guards throw NumericalError.
Resolved validate(const Scenario& scenario);

nlohmann::json to_json(const Scenario& scenario);
// SHA-256 over the canonical JSON, ignoring out_dir and workers.
std::string scenario_hash(const Scenario& scenario);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

std::string branch_name(Branch b);
std::string shape_name(EtaShape s);

} // namespace volkov
