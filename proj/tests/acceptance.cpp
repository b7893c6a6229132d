// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include "volkov/commands.hpp"
#include "volkov/errors.hpp"
#include "volkov/kinematics.hpp"
#include "volkov/lifetime.hpp"
#include "volkov/scenario.hpp"
#include "volkov/trajectories.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

using namespace volkov;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Outcome designer() {
    Outcome o;
    const double a = design_va(0.2, 3.0, 3.0), b = design_va(0.0, 3.0, 3.0), c = design_va(-4.1, 3.0, 3.0);
    o.require(std::abs(a) < 1e-12, "v_f*=0.2 -> 0");
    o.require(std::abs(b + 1.0 / 3.0) < 1e-12, "v_f*=0 -> -1/3");
    o.require(std::abs(c - 19.545) < 1e-3, "v_f*=-4.1 -> 19.545");
    // rounded presets: v_a = -0.3, 0, 19.5 give v_f = 0.019, 0.2, -4.1
    const double fa = peak_velocity_infield(-0.3, 3.0, 3.0), fb = peak_velocity_infield(0.0, 3.0, 3.0),
                 fc = peak_velocity_infield(19.5, 3.0, 3.0);
    o.require(std::abs(fa - 0.019) < 5e-4 && std::abs(fb - 0.2) < 5e-3 && std::abs(fc + 4.1) < 0.05, "rounded preset values");
    o.detail << "v_a = " << num(a) << ", " << num(b) << ", " << num(c) << "; v_f(-0.3, 0, 19.5) = " << num(fa) << ", "
             << num(fb) << ", " << num(fc);
    return o;
}

Outcome round_trip() {
    Outcome o;
    double worst = 0;
    int n = 0;
    for (int i = 0; i < 50; ++i) {
        const double vf = -5.0 + 5.9 * i / 49.0;
        if (std::abs(vf + 3.0) < 1e-6) continue;
        worst = std::max(worst, std::abs(peak_velocity_infield(design_va(vf, 3.0, 3.0), 3.0, 3.0) - vf));
        ++n;
    }
    o.require(n == 50 && worst < 1e-10, "identity to 1e-10");
    o.detail << n << " values, max error " << num(worst);
    return o;
}

Outcome constants() {
    Outcome o;
    const ReferencePoint p = ReferencePoint::at(3.0);
    const double e0 = p.eta(0.0), e3 = p.eta(-0.3);
    const double v1 = drift_velocity_1d(p.velocity(), 3.0, 3.0), v0 = drift_velocity_1d(p.velocity(), 0.0, 3.0);
    const double ratio = v1 / (1.0 - v1);
    o.require(std::abs(e0 - 1.6667) < 0.005 && std::abs(e3 - 1.2667) < 0.005, "<eta>");
    o.require(std::abs(v1 + 0.2414) < 0.005 && std::abs(v0 + 0.8) < 0.005, "v_1D");
    o.require(std::abs(ratio + 0.1944) < 5e-4, "v_1D/(1-v_1D)");
    o.detail << "<eta> = " << num(e0) << ", " << num(e3) << "; v_1D = " << num(v1) << ", " << num(v0) << "; ratio "
             << num(ratio);
    return o;
}

Outcome algebra() {
    Outcome o;
    const GammaBasis& G = GammaBasis::dirac();
    double anti = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            anti = std::max(anti, (G[a] * G[b] + G[b] * G[a] - 2.0 * metric(a, b) * Matrix4::Identity()).norm());
    const double nil = (G.minus() * G.minus()).norm();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> mom(-5.0, 5.0), pot(-10.0, 10.0);
    double norm_err = 0, dirac = 0;
    for (int i = 0; i < 1000; ++i) {
        const double p1 = mom(rng), p2 = mom(rng), p3 = mom(rng);
        const FourVector p{std::sqrt(1.0 + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3};
        const Spin s = i % 2 ? Spin::Up : Spin::Down;
        const Bispinor u = free_spinor(p, s);
        const Bispinor V = dressed_bispinor(u, p.minus(), pot(rng));
        norm_err = std::max(norm_err, std::abs((dirac_adjoint(V) * G.minus() * V)(0, 0) - 2.0 * p.minus()) / (2.0 * p.minus()));
        dirac = std::max(dirac, ((G.slash(p) - kMass * Matrix4::Identity()) * u).norm() / u.norm());
    }
    o.require(anti == 0.0 && nil == 0.0, "exact anticommutators");
    o.require(norm_err < 1e-12, "Vbar gamma_- V = 2 p_-");
    o.require(dirac < 1e-12, "Dirac residual");
    o.detail << "anticommutator " << num(anti) << ", gamma_-^2 " << num(nil) << ", norm " << num(norm_err) << ", residual "
             << num(dirac);
    return o;
}

Outcome translation() {
    Outcome o;
    double worst = 0;
    for (double v_a : {0.0, -0.3}) {
        CorrelationSpec spec;
        spec.v_a = v_a;
        const Wavepacket wp({spec, EtaWeight(spec.mean_eta(), 1e-3), TransverseWeight(170.0)}, {64, 64}, nullptr);
        const double eta = spec.mean_eta();
        const FourVector base{0.0, 15.0, 0.0, 40.0};
        const double d0 = lightfront_density(wp.partial(base, eta));
        for (double T : {-2e5, -3e3, 17.0, 5e4, 3e5})
            worst = std::max(worst, std::abs(lightfront_density(wp.partial({T, base.x1, 0.0, base.x3 + v_a * T}, eta)) - d0) / d0);
    }
    o.require(worst < 1e-4, "invariance to 1e-4");
    o.detail << "v_a in {0, -0.3}, 5 offsets, max relative change " << num(worst);
    return o;
}

struct Fig2Run {
    Resolved r;
    DensityField field;
    LifetimeReport life;
};

std::vector<Fig2Run>& fig2_runs() {
    static std::vector<Fig2Run> runs = [] {
        std::vector<Fig2Run> out;
        for (const char* name : {"fig2a", "fig2b", "fig2c"}) {
            Resolved r = validate(preset(name));
            const auto cache = r.grid_integrals();
            const Wavepacket wp(r.distribution(), r.scenario.quadrature, cache, r.scenario.spectral.spin);
            DensityField f = density_grid(wp, r.scenario.grid, r.density_options());
            LifetimeReport life = lifetime_report(r);
            out.push_back({std::move(r), std::move(f), std::move(life)});
        }
        return out;
    }();
    return runs;
}

Outcome tracking() {
    Outcome o;
    for (const Fig2Run& run : fig2_runs()) {
        const Resolved& r = run.r;
        const SpacetimeGrid& g = run.field.grid;
        o.require(run.life.roots.size() == 2, r.scenario.name + " predicted window");
        if (run.life.roots.size() != 2) continue;
        const double lo = std::max(run.life.roots[0], g.xm_min), hi = std::min(run.life.roots[1], g.xm_max);
        double worst = 0;
        int rows = 0;
        for (const TrackedPeak& p : track_peaks(r, run.field)) {
            if (p.x_minus < lo || p.x_minus > hi) continue;
            ++rows;
            worst = p.flat ? INFINITY : std::max(worst, std::abs(p.x3 - p.xf3_tilde) / g.dx3());
        }
        // slope of the tracked analytic curve at the pulse centre, in the lab frame
        const auto cache = r.integrals(-10.0, 10.0);
        const TrajectoryRecord rec = peak_trajectory(r.spec, cache.get(), {-1.0, 1.0, 3});
        const double vf = lightfront_to_lab((rec.samples[2].xf3_tilde - rec.samples[0].xf3_tilde) / 2.0);
        const Wavepacket wp(r.distribution(), r.scenario.quadrature, nullptr);
        const double vexp = lightfront_to_lab(expectation_velocity(wp.moments(), r.xi_star()));
        const double nominal = r.scenario.nominal_v_fstar.value_or(r.v_f_xi);
        const double vf_tol = r.scenario.name == "fig2a" ? 5e-4 : 0.05;
        const double vf_ref = r.scenario.name == "fig2a" ? 0.019 : nominal;
        o.require(rows > 0 && worst <= 1.0, r.scenario.name + " within one x3 step");
        o.require(run.field.probe_change < 0.005, r.scenario.name + " quadrature doubling");
        o.require(std::abs(vf - vf_ref) < vf_tol, r.scenario.name + " v_f");
        o.require(std::abs(vexp + 0.24) < 0.005, r.scenario.name + " <v3>");
        o.detail << r.scenario.name << ": " << rows << " rows, max |peak - xf3~| = " << num(worst) << " step, v_f = " << num(vf)
                 << ", <v3> = " << num(vexp) << ", doubling change " << num(run.field.probe_change) << "; ";
    }
    return o;
}

Outcome norm() {
    Outcome o;
    const Resolved r = validate(preset("norm"));
    const auto dir = std::filesystem::temp_directory_path() / "volkov_acceptance_norm";
    const nlohmann::json s = run_density(r, dir.string(), true);
    std::filesystem::remove_all(dir);
    double worst = 0;
    for (const auto& slice : s.at("norms").at("slices")) {
        const double n = slice.at("norm").get<double>();
        worst = std::max(worst, std::abs(n - 1.0));
        o.detail << "x_- = " << num(slice.at("x_minus").get<double>()) << ": " << num(n) << "; ";
    }
    o.require(s.at("norms").at("slices").size() == 3 && worst < 0.01, "norm 1 within 1%");
    return o;
}

Outcome figure_eight() {
    Outcome o;
    const Resolved r = validate(preset("fig3"));
    const TrajectoryRange range = r.trajectory_range();
    const auto cache = r.integrals(range.x_min, range.x_max);
    const LoopMetrics m = loop_metrics(comoving_transform(peak_trajectory(r.spec, cache.get(), range), r.v_f_xi, false),
                                       r.scenario.field.omega);
    o.require(m.gap < 0.01 * m.extent, "closure");
    o.require(std::abs(m.x1_amplitude - 100.0) <= 2.0, "x1 amplitude");
    o.require(std::abs(m.x3_amplitude - 12.5) <= 0.25, "x3 amplitude at 2 omega");
    o.detail << "gap/extent " << num(m.gap / m.extent) << ", x1 " << num(m.x1_amplitude) << ", x3(2w) " << num(m.x3_amplitude);
    return o;
}

Outcome slopes() {
    Outcome o;
    double free_err = 0, dressed_err = 0;
    for (double v_a : {-0.3, 0.0, 0.5, 19.5}) {
        CorrelationSpec spec;
        spec.v_a = v_a;
        free_err = std::max(free_err, std::abs(slope_check(spec, spec.mean_eta(), 0.0).free_slope - v_a));
    }
    for (double target : {0.0, 0.2, -4.1}) {
        CorrelationSpec spec;
        spec.v_a = design_va(target, 3.0, 3.0);
        const SlopeCheck s = slope_check(spec, spec.mean_eta(), 3.0);
        dressed_err = std::max(dressed_err, std::abs(s.dressed_slope - target));
        o.detail << "v_f* " << num(target) << ": dressed " << num(s.dressed_slope) << "; ";
    }
    o.require(free_err < 1e-6, "free slope = v_a");
    o.require(dressed_err < 1e-3, "dressed slope = v_f*");
    o.detail << "max free error " << num(free_err);
    return o;
}

Outcome lifetime() {
    Outcome o;
    CorrelationSpec c;
    c.v_a = design_va(-4.1, 3.0, 3.0);
    CorrelationSpec plain;
    plain.v_a = 19.5;
    const double b5 = lifetime_constant_field(c, 3.0, 1.0), b6 = lifetime_field_free(plain, 1.0);
    o.require(std::abs(b5 / 0.3575 - 1.0) < 1e-3, "constant-field closed form 0.3575");
    o.require(std::abs(b6 / 0.0985 - 1.0) < 1e-3, "field-free closed form 0.0985");

    const double dx3 = 3e5;
    const PlaneWaveField constant(0.01, 0.0, -1.0, FieldProfile::constant(3.0));
    const double span = 10.0 * b5 * dx3;
    const FieldIntegrals cache(constant, -span - 700.0, span + 700.0);
    const LifetimeReport rc = peak_lifetime(c, constant, &cache, dx3, -span, span);
    const LifetimeReport rf = peak_lifetime(plain, PlaneWaveField(0.01, 0.0, -1.0, FieldProfile{}), nullptr, dx3, -span, span);
    const double nc = rc.delta_x0_numeric.value_or(NAN) / (b5 * dx3), nf = rf.delta_x0_numeric.value_or(NAN) / (b6 * dx3);
    o.require(std::abs(nc - 1.0) < 0.01 && std::abs(nf - 1.0) < 0.01, "root-find within 1%");
    o.detail << "closed forms " << num(b5) << ", " << num(b6) << "; root-find/closed " << num(nc) << ", " << num(nf) << "; ";

    for (const Fig2Run& run : fig2_runs()) {
        if (run.life.roots.size() != 2) {
            o.require(false, run.r.scenario.name + " predicted roots");
            continue;
        }
        try {
            const MeasuredWindow w = measure_lifetime_window(run.field);
            const double pred = run.life.roots[1] - run.life.roots[0];
            const double ratio = (w.hi - w.lo) / pred;
            o.require(!w.lo_clipped && !w.hi_clipped && std::abs(ratio - 1.0) < 0.25, run.r.scenario.name + " window");
            o.detail << run.r.scenario.name << " window/prediction " << num(ratio) << "; ";
        } catch (const NumericalError& e) {
            o.require(false, run.r.scenario.name + std::string(" window: ") + e.what());
        }
    }
    return o;
}

Outcome curvature() {
    Outcome o;
    double d[3];
    const char* names[3] = {"fig4a", "fig4c", "fig4b"};
    for (int i = 0; i < 3; ++i) {
        const Resolved r = validate(preset(names[i]));
        const Wavepacket wp(r.distribution(), r.scenario.quadrature, nullptr);
        d[i] = expectation_velocity(wp.moments(), r.xi_star()) - r.v_1d_ratio;
        o.detail << names[i] << " " << num(d[i]) << "; ";
    }
    o.require(d[0] > 1e-3, "v_f*=0 above");
    o.require(std::abs(d[1]) < 1e-3, "v_f*=-4.1 at");
    o.require(d[2] < -1e-3, "v_f*=-0.5 below");
    return o;
}

} // namespace

int main() {
    spdlog::set_level(spdlog::level::warn);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"designer", designer},       {"round-trip", round_trip}, {"constants", constants},
        {"algebra", algebra},         {"translation", translation}, {"tracking", tracking},
        {"norm", norm},               {"figure-eight", figure_eight}, {"slopes", slopes},
        {"lifetime", lifetime},       {"curvature-signs", curvature},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", name, o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failures += o.ok ? 0 : 1;
    }
    return failures;
}
