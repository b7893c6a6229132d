#include "volkov/kinematics.hpp"
#include "volkov/errors.hpp"

#include <cmath>
#include <sstream>

namespace volkov {

namespace {

constexpr double kSingularTol = 1e-9;

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// Root of (eta + v p3)^2 = M2 + p3^2 with sign s; stable for either sign of eta v.
double shell_root(double eta, double v, double M2, double s, double sqrtD) {
    const double kappa = 1.0 - v * v;
    const double ev = eta * v;
    if (ev == 0.0 || sgn(ev) == s) return (ev + s * sqrtD) / kappa;
    return -(eta * eta - M2) / (ev - s * sqrtD);
}

} // namespace

ReferencePoint ReferencePoint::at(double P_minus) {
    if (!(P_minus > 0.0)) throw ValidationError("P_minus must be > 0");
    ReferencePoint r;
    r.P_minus = P_minus;
    r.P3 = (kMass * kMass - P_minus * P_minus) / (2.0 * P_minus);
    r.E = (kMass * kMass + P_minus * P_minus) / (2.0 * P_minus);
    return r;
}

double CorrelationSpec::root_sign() const {
    const double kappa = 1.0 - v_a * v_a;
    switch (branch) {
    case Branch::Negative: return kappa < 0.0 ? 1.0 : -1.0;
    case Branch::Positive: return kappa < 0.0 ? -1.0 : 1.0;
    case Branch::Auto: break;
    }
    // The root through the expectation point: sign(P3 - v_a E).
    const ReferencePoint r = reference();
    return sgn(r.P3 - v_a * r.E);
}

double longitudinal_momentum(const CorrelationSpec& spec, double eta, double p_perp) {
    const double v = spec.v_a;
    const double M2 = kMass * kMass + p_perp * p_perp;
    const double kappa = 1.0 - v * v;
    double p3;
    if (kappa == 0.0) {
        if (!(eta > 0.0)) throw EvanescentMode("eta must be > 0 when |v_a| = 1 (eta = " + fmt(eta) + ")");
        p3 = -v * (eta * eta - M2) / (2.0 * eta);
    } else {
        const double D = eta * eta - kappa * M2;
        const double tol = 1e-14 * std::max(eta * eta, M2);
        if (D < -tol)
            throw EvanescentMode("negative radicand at eta = " + fmt(eta) + ", p_perp = " + fmt(p_perp) +
                                 ", v_a = " + fmt(v));
        p3 = shell_root(eta, v, M2, spec.root_sign(), std::sqrt(std::max(D, 0.0)));
    }
    const double E = std::sqrt(M2 + p3 * p3);
    if (std::abs(E - (eta + v * p3)) > 1e-9 * std::max(1.0, E))
        throw NegativeEnergy("branch root at eta = " + fmt(eta) + ", v_a = " + fmt(v) +
                             " does not satisfy E = eta + v_a p3");
    if (std::abs(p3 / E - v) < kSingularTol)
        throw SingularSlice("v_a = p3/E = " + fmt(v) + " at eta = " + fmt(eta));
    return p3;
}

OnShellMomentum on_shell(const CorrelationSpec& spec, double eta, double p1, double p2) {
    OnShellMomentum m;
    m.eta = eta;
    m.p1 = p1;
    m.p2 = p2;
    m.p3 = longitudinal_momentum(spec, eta, std::hypot(p1, p2));
    m.E = std::sqrt(kMass * kMass + p1 * p1 + p2 * p2 + m.p3 * m.p3);
    return m;
}

DressedMomentum dressed_momentum(const FourVector& p, double xi_star) {
    const double pm = p.minus();
    if (!(pm > 0.0)) throw ValidationError("dressed_momentum requires p_- > 0");
    const double c = xi_star * xi_star / (4.0 * pm);
    DressedMomentum d;
    d.p = p;
    d.q = {p.t + c, p.x1, p.x2, p.x3 + c};
    d.xi_star = xi_star;
    return d;
}

double lambda_surface(double eta, double q_minus, double v_a, double v_fstar, double xi_star) {
    if (v_a == 1.0) throw ValidationError("lambda surface undefined for v_a = 1");
    if (!(q_minus > 0.0)) throw ValidationError("lambda surface requires q_- > 0");
    return (1.0 - v_fstar) / (1.0 - v_a) * eta - (v_a - v_fstar) / (1.0 - v_a) * q_minus +
           (1.0 - v_fstar) * xi_star * xi_star / (4.0 * q_minus);
}

double design_va(double v_fstar, double xi_star, double P_minus) {
    if (!(P_minus > 0.0)) throw ValidationError("P_minus must be > 0");
    const double X = xi_star * xi_star / (4.0 * P_minus * P_minus);
    const double den = 1.0 - (1.0 - v_fstar) * X;
    if (std::abs(den) < 1e-12)
        throw DesignerSingular("1 - (1 - v_f*) X vanishes for v_f* = " + fmt(v_fstar));
    return (v_fstar - (1.0 - v_fstar) * X) / den;
}

double peak_velocity_infield(double v_a, double xi, double P_minus) {
    if (!(P_minus > 0.0)) throw ValidationError("P_minus must be > 0");
    const double Y = xi * xi / (4.0 * P_minus * P_minus);
    return (v_a + (1.0 - v_a) * Y) / (1.0 + (1.0 - v_a) * Y);
}

double drift_velocity_1d(double P3_over_E, double xi, double P_minus) {
    return peak_velocity_infield(P3_over_E, xi, P_minus);
}

SlopeCheck slope_check(const CorrelationSpec& spec, double eta0, double xi_star) {
    // Secant between two transverse momenta close to the axis; p3 is even in p_perp.
    const double pa = 0.002, pb = 0.006;
    const OnShellMomentum a = on_shell(spec, eta0, pa);
    const OnShellMomentum b = on_shell(spec, eta0, pb);
    SlopeCheck s;
    s.free_slope = (b.E - a.E) / (b.p3 - a.p3);
    const DressedMomentum qa = dressed_momentum(a.four(), xi_star);
    const DressedMomentum qb = dressed_momentum(b.four(), xi_star);
    s.dressed_slope = (qb.q.t - qa.q.t) / (qb.q.x3 - qa.q.x3);
    return s;
}

SingularityDiagnostic singularity_guard(double v_a, double eta, double p_perp) {
    SingularityDiagnostic d;
    const double M2 = kMass * kMass + p_perp * p_perp;
    const double kappa = 1.0 - v_a * v_a;
    if (kappa == 0.0) {
        d.branch_notice = true;
        d.message = "|v_a| = 1: single finite branch";
        if (!(eta > 0.0)) {
            d.evanescent = true;
            d.message += "; no positive-energy root";
        }
        return d;
    }
    const double D = eta * eta - kappa * M2;
    if (D < -1e-14 * std::max(eta * eta, M2)) {
        d.evanescent = true;
        d.message = "negative radicand";
        return d;
    }
    const double sD = std::sqrt(std::max(D, 0.0));
    d.margin = INFINITY;
    for (double s : {-1.0, 1.0}) {
        const double p3 = shell_root(eta, v_a, M2, s, sD);
        if (!std::isfinite(p3)) continue;
        const double E = std::sqrt(M2 + p3 * p3);
        if (std::abs(E - (eta + v_a * p3)) > 1e-9 * std::max(1.0, E)) continue;
        d.margin = std::min(d.margin, std::abs(p3 / E - v_a));
    }
    if (!std::isfinite(d.margin)) {
        d.evanescent = true;
        d.message = "no positive-energy root";
        return d;
    }
    // Tangency of the eta plane with the shell: |v| = sqrt(1 - eta^2/M^2). The root-based
    // margin only resolves this to ~sqrt(eps), so test the velocity directly as well.
    double tangent = INFINITY;
    if (eta * eta < M2) {
        const double vt = std::sqrt(1.0 - eta * eta / M2);
        tangent = std::min(std::abs(v_a - vt), std::abs(v_a + vt));
    }
    if (d.margin < kSingularTol || tangent < kSingularTol) {
        d.singular = true;
        d.margin = std::min(d.margin, tangent);
        d.message = "v_a coincides with p3/E";
    }
    return d;
}

} // namespace volkov
