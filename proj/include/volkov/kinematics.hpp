#pragma once

#include "volkov/algebra.hpp"

#include <optional>
#include <string>

namespace volkov {

enum class Branch { Negative, Positive, Auto };

struct DesignTarget {
    double v_fstar = 0.0;
    double xi_star = 0.0; // |e| xi_* / m
};

// On-shell expectation point with p_- = P_minus and p_perp = 0.
struct ReferencePoint {
    double P_minus = 3.0;
    double P3 = 0.0;
    double E = 0.0;

    static ReferencePoint at(double P_minus);
    double velocity() const { return P3 / E; }
    double eta(double v_a) const { return E - v_a * P3; }
};

struct CorrelationSpec {
    double v_a = 0.0;
    Branch branch = Branch::Auto;
    double P_minus = 3.0;
    std::optional<DesignTarget> target;

    ReferencePoint reference() const { return ReferencePoint::at(P_minus); }
    double mean_eta() const { return reference().eta(v_a); }
    // Sign s in p3 = (eta v_a + s sqrt(D)) / (1 - v_a^2).
    double root_sign() const;
};

struct OnShellMomentum {
    double eta = 0, p1 = 0, p2 = 0, p3 = 0, E = 0;

    double minus() const { return E - p3; }
    FourVector four() const { return {E, p1, p2, p3}; }
};

double longitudinal_momentum(const CorrelationSpec& spec, double eta, double p_perp);
OnShellMomentum on_shell(const CorrelationSpec& spec, double eta, double p1, double p2 = 0.0);

struct DressedMomentum {
    FourVector q;
    FourVector p;
    double xi_star = 0.0;

    double mass_squared() const { return minkowski_dot(q, q); }
};

// q = p + [e^2 xi*^2 / (4 p_-)] n
DressedMomentum dressed_momentum(const FourVector& p, double xi_star);

double lambda_surface(double eta, double q_minus, double v_a, double v_fstar, double xi_star);

// Out-of-field velocity whose in-field peak velocity at xi_star is v_fstar.
double design_va(double v_fstar, double xi_star, double P_minus);

// (v_a + (1 - v_a) Y) / (1 + (1 - v_a) Y), Y = e^2 xi^2 / (4 P_-^2)
double peak_velocity_infield(double v_a, double xi, double P_minus);

double drift_velocity_1d(double P3_over_E, double xi, double P_minus);

struct SlopeCheck {
    double free_slope = 0.0;
    double dressed_slope = 0.0;
};

// Finite-difference slopes along the fixed-eta curve near p_perp = 0.
SlopeCheck slope_check(const CorrelationSpec& spec, double eta0, double xi_star);

struct SingularityDiagnostic {
    bool singular = false;    // v_a = p3/E within 1e-9
    bool evanescent = false;  // no real p3 at this eta
    bool branch_notice = false; // |v_a| = 1: single finite branch
    double margin = 0.0;      // |p3/E - v_a|
    std::string message;
};

SingularityDiagnostic singularity_guard(double v_a, double eta, double p_perp = 0.0);

} // namespace volkov
