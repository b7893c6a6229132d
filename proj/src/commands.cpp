#include "volkov/commands.hpp"
#include "volkov/errors.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <numbers>

namespace volkov {

OutputMeta meta_for(const Resolved& r) { return {scenario_hash(r.scenario), r.derived()}; }

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json lifetime_json(const LifetimeReport& rep) {
    return {{"delta_x3", rep.delta_x3},
            {"delta_x0_analytic", opt(rep.delta_x0_analytic)},
            {"analytic_form", rep.analytic_form},
            {"delta_x0_numeric", opt(rep.delta_x0_numeric)},
            {"delta_x_minus", opt(rep.delta_x_minus)},
            {"roots", rep.roots},
            {"no_intersection", rep.no_intersection},
            {"note", rep.note}};
}

Wavepacket make_wavepacket(const Resolved& r, std::shared_ptr<const FieldIntegrals> cache) {
    return Wavepacket(r.distribution(), r.scenario.quadrature, std::move(cache), r.scenario.spectral.spin);
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec, const OutputMeta& meta) {
    CsvWriter csv(path, {"x_minus", "xf1", "xf3", "xf3_tilde", "ex1", "ex3", "ex3_tilde"}, meta);
    for (const auto& s : rec.samples) csv.row({s.x_minus, s.xf1, s.xf3, s.xf3_tilde, s.ex1, s.ex3, s.ex3_tilde});
    csv.close();
}

nlohmann::json resolution_json(const ResolutionReport& rep) {
    return {{"dx3_limit", rep.dx3_limit},        {"grid_ok", rep.grid_ok},
            {"eta_required", rep.eta_required},  {"p1_required", rep.p1_required},
            {"eta_available", rep.eta_available}, {"p1_available", rep.p1_available},
            {"nodes_ok", rep.nodes_ok}};
}

struct DensityRun {
    nlohmann::json summary;
    DensityField field;
};

DensityRun density_impl(const Resolved& r, const std::string& out_dir, bool slice_norms) {
    ensure_directory(out_dir);
    const auto cache = r.grid_integrals();
    const Wavepacket wp = make_wavepacket(r, cache);
    DensityRun run;
    run.field = density_grid(wp, r.scenario.grid, r.density_options());
    const DensityField& df = run.field;
    const SpacetimeGrid& g = df.grid;
    const OutputMeta meta = meta_for(r);

    CsvWriter csv(join_path(out_dir, "density.csv"), {"x_minus", "x3", "density"}, meta);
    for (std::size_t j = 0; j < g.xm_steps; ++j)
        for (std::size_t i = 0; i < g.x3_steps; ++i) csv.row({g.xm_at(j), g.x3_at(i), df.at(j, i)});
    csv.close();

    nlohmann::json norms;
    norms["momentum_space_before_rescale"] = wp.moments().E_over_pm;
    norms["norm_scale"] = wp.norm_scale();
    if (slice_norms) {
        nlohmann::json slices = nlohmann::json::array();
        const Moments& m = wp.moments();
        const double half1 = 1500.0 / 170.0 * r.scenario.spectral.w;
        const double half3 = 0.5 * (g.x3_max - g.x3_min);
        const std::size_t rows[3] = {0, g.xm_steps / 2, g.xm_steps - 1};
        for (std::size_t j : rows) {
            const double xm = g.xm_at(j);
            const FieldIntegrals::Values f = cache ? cache->at(xm) : FieldIntegrals::Values{};
            const double c1 = -m.inv_pm * f.I1;
            const double c3 = m.p3_over_pm * xm + 0.5 * m.inv_pm2 * f.I2;
            const double n = slice_norm(wp, xm, c1 - half1, c1 + half1, 101, c3 - half3, c3 + half3, g.x3_steps);
            slices.push_back({{"x_minus", xm}, {"norm", n}});
        }
        norms["slices"] = slices;
    }

    nlohmann::json side;
    side["scenario"] = to_json(r.scenario);
    side["quadrature"] = {{"requested", {r.scenario.quadrature.n_eta, r.scenario.quadrature.n_p1}},
                          {"used", {df.sizes.n_eta, df.sizes.n_p1}}};
    side["x1_rule"] = g.x1_rule == SpacetimeGrid::X1Rule::Peak ? "peak" : "constant";
    side["resolution"] = resolution_json(df.resolution);
    side["convergence_probe"] = {{"relative_change", df.probe_change}, {"x_minus_rows", df.probe_rows}};
    side["norms"] = norms;
    write_json(join_path(out_dir, "density.json"), side, meta);

    run.summary = {{"density_csv", join_path(out_dir, "density.csv")},
                   {"points", g.xm_steps * g.x3_steps},
                   {"quadrature_used", {df.sizes.n_eta, df.sizes.n_p1}},
                   {"probe_change", df.probe_change},
                   {"norms", norms}};
    return run;
}

} // namespace

nlohmann::json run_design(const std::vector<Resolved>& scenarios, const std::string& out_dir) {
    ensure_directory(out_dir);
    nlohmann::json rows = nlohmann::json::array();
    OutputMeta meta{"", nlohmann::json::array()};
    for (const Resolved& r : scenarios) {
        meta.scenario_hash += (meta.scenario_hash.empty() ? "" : "+") + scenario_hash(r.scenario);
        meta.derived.push_back(r.derived());
    }
    if (scenarios.size() == 1) meta = meta_for(scenarios.front());
    CsvWriter csv(join_path(out_dir, "design.csv"),
                  {"v_a", "xi_star", "v_f_xi", "v_fstar_target", "v_a_designed", "v_1d_xi", "dressed_slope"}, meta);
    for (const Resolved& r : scenarios) {
        const double xi = r.xi_star();
        const double target =
            r.scenario.target ? r.scenario.target->v_fstar : r.scenario.nominal_v_fstar.value_or(r.v_f_xi);
        double designed = NAN;
        try {
            designed = design_va(target, xi, r.spec.P_minus);
        } catch (const DesignerSingular&) {
        }
        const SlopeCheck sc = slope_check(r.spec, r.mean_eta, xi);
        csv.row({r.spec.v_a, xi, r.v_f_xi, target, designed, r.v_1d_xi, sc.dressed_slope});
        nlohmann::json row = {{"name", r.scenario.name},          {"v_a", r.spec.v_a},
                              {"xi_star", xi},                    {"v_f_xi", r.v_f_xi},
                              {"v_fstar_target", target},         {"v_a_designed", std::isnan(designed) ? nlohmann::json(nullptr) : nlohmann::json(designed)},
                              {"free_slope", sc.free_slope},      {"dressed_slope", sc.dressed_slope},
                              {"derived", r.derived()}};
        if (!std::isnan(designed) && std::abs(designed - r.spec.v_a) > 1e-9)
            row["annotation"] = "v_f = " + format_number(r.v_f_xi) + " (exact at v_a = " + format_number(r.spec.v_a) +
                                ") vs " + format_number(target) + " (designed at v_a = " + format_number(designed) + ")";
        rows.push_back(row);
    }
    csv.close();
    nlohmann::json body = {{"rows", rows}};
    write_json(join_path(out_dir, "design.json"), body, meta);
    return body;
}

nlohmann::json run_density(const Resolved& r, const std::string& out_dir, bool slice_norms) {
    return density_impl(r, out_dir, slice_norms).summary;
}

nlohmann::json run_trajectories(const Resolved& r, const std::string& out_dir) {
    ensure_directory(out_dir);
    const TrajectoryRange range = r.trajectory_range();
    const auto cache = r.integrals(range.x_min, range.x_max);
    const Wavepacket wp = make_wavepacket(r, cache);
    const TrajectoryRecord rec = trajectories(wp, range);
    const OutputMeta meta = meta_for(r);
    write_trajectory_csv(join_path(out_dir, "trajectory.csv"), rec, meta);
    const double xi = r.xi_star();
    nlohmann::json body = {{"samples", rec.samples.size()},
                           {"expectation_velocity_xi", expectation_velocity(wp.moments(), xi)},
                           {"expectation_velocity_0", expectation_velocity(wp.moments(), 0.0)},
                           {"peak_velocity_xi", r.v_f_xi}};
    body["expectation_velocity_lab_xi"] = lightfront_to_lab(body["expectation_velocity_xi"].get<double>());
    body["expectation_velocity_lab_0"] = lightfront_to_lab(body["expectation_velocity_0"].get<double>());
    write_json(join_path(out_dir, "trajectory.json"), body, meta);
    return body;
}

std::pair<double, double> lifetime_search_range(const Resolved& r) {
    const double rel = std::abs(r.spec.v_a / (1.0 - r.spec.v_a) - r.P3 / r.spec.P_minus);
    const double half = r.delta_x3 / (1.0 - r.r) / std::max(rel, 1e-12);
    return {-4.0 * half, 4.0 * half};
}

LifetimeReport lifetime_report(const Resolved& r) {
    const auto [lo, hi] = lifetime_search_range(r);
    const auto cache = r.integrals(lo, hi);
    return peak_lifetime(r.spec, r.field(), cache.get(), r.delta_x3, lo, hi);
}

nlohmann::json run_lifetime(const Resolved& r, const std::string& out_dir) {
    ensure_directory(out_dir);
    const LifetimeReport rep = lifetime_report(r);
    nlohmann::json body = lifetime_json(rep);
    body["delta_x3_convention"] = "90% intensity half-length of the field-free envelope";
    body["constant_field_estimate"] = lifetime_constant_field(r.spec, r.xi_star(), r.delta_x3);
    body["field_free_estimate"] = lifetime_field_free(r.spec, r.delta_x3);
    write_json(join_path(out_dir, "lifetime.json"), body, meta_for(r));
    return body;
}

std::vector<TrackedPeak> track_peaks(const Resolved& r, const DensityField& field) {
    const SpacetimeGrid& g = field.grid;
    const auto cache = r.grid_integrals();
    TrajectoryRange range{g.xm_min, g.xm_max, g.xm_steps};
    if (g.xm_steps < 2) range = {g.xm_min, g.xm_min, 1};
    const TrajectoryRecord rec = peak_trajectory(r.spec, cache.get(), range);
    std::vector<TrackedPeak> out;
    for (std::size_t j = 0; j < g.xm_steps; ++j) {
        TrackedPeak t;
        t.x_minus = g.xm_at(j);
        t.xf3_tilde = rec.samples[j].xf3_tilde;
        try {
            const PeakLocation p = peak_locate(field.row(j), g.x3_steps, g.x3_min, g.dx3());
            t.x3 = p.x3;
            t.value = p.value;
            t.contrast = p.contrast;
        } catch (const FlatSlice&) {
            t.flat = true;
            t.x3 = NAN;
        }
        out.push_back(t);
    }
    return out;
}

nlohmann::json run_figure1(const Resolved& base, const std::string& out_dir) {
    ensure_directory(out_dir);
    struct Case {
        const char* name;
        double v_a;
        bool field;
    };
    const Case cases[3] = {{"a", base.spec.v_a, false}, {"c", -0.3, false}, {"e", -0.3, true}};
    const SpacetimeGrid& g = base.scenario.grid;
    const double T = std::max(std::abs(g.xm_min), std::abs(g.xm_max));
    const double times[3] = {-T, 0.0, T};
    const double w = base.scenario.spectral.w;
    nlohmann::json summary = nlohmann::json::array();

    for (const Case& c : cases) {
        Scenario s = base.scenario;
        s.name = base.scenario.name + c.name;
        s.v_a = c.v_a;
        s.target.reset();
        s.expect.clear();
        if (c.field) {
            s.field.profile = "constant";
            s.field.xi = 3.0;
        } else {
            s.field.profile = "none";
        }
        const Resolved r = validate(s);
        const OutputMeta meta = meta_for(r);
        const double v = c.field ? r.v_f_xi : r.spec.v_a;
        const double x3_half = 0.5 * (g.x3_max - g.x3_min);
        const double xm_lo = times[0] - v * times[0] - x3_half - 4 * w, xm_hi = times[2] - v * times[2] + x3_half + 4 * w;
        const auto cache = r.integrals(std::min(xm_lo, -xm_hi), std::max(xm_hi, -xm_lo));
        const Wavepacket wp = make_wavepacket(r, cache);
        const double eta = r.mean_eta;

        CsvWriter snap(join_path(out_dir, std::string("fig1_") + c.name + "_snapshots.csv"),
                       {"x0", "x1", "x3", "amplitude"}, meta);
        CsvWriter peaks(join_path(out_dir, std::string("fig1_") + c.name + "_peaks.csv"), {"x0", "x1_peak", "x3_peak"},
                        meta);
        for (double x0 : times) {
            const double x3c = v * x0;
            const double xm_c = x0 - x3c;
            const double x1c = cache ? -cache->at(xm_c).I1 / r.spec.P_minus : 0.0;
            double best = -1, b1 = 0, b3 = 0;
            const std::size_t n1 = 61;
            for (std::size_t a = 0; a < n1; ++a) {
                const double x1 = x1c - 3.5 * w + 7.0 * w * static_cast<double>(a) / static_cast<double>(n1 - 1);
                for (std::size_t i = 0; i < g.x3_steps; ++i) {
                    const double x3 = x3c - x3_half + g.dx3() * static_cast<double>(i);
                    const double amp = lightfront_density(wp.partial({x0, x1, 0.0, x3}, eta));
                    snap.row({x0, x1, x3, amp});
                    if (amp > best) {
                        best = amp;
                        b1 = x1;
                        b3 = x3;
                    }
                }
            }
            peaks.row({x0, b1, b3});
        }
        snap.close();
        peaks.close();

        CsvWriter mom(join_path(out_dir, std::string("fig1_") + c.name + "_momentum.csv"),
                      {"p1", "p3", "E", "q3", "q0", "q_minus"}, meta);
        const double xi = c.field ? 3.0 : 0.0;
        for (int k = -60; k <= 60; ++k) {
            const double p1 = 3.0 / w * k / 60.0;
            const OnShellMomentum p = on_shell(r.spec, eta, p1);
            const DressedMomentum q = dressed_momentum(p.four(), xi);
            mom.row({p1, p.p3, p.E, q.q.x3, q.q.t, q.q.minus()});
        }
        mom.close();
        summary.push_back({{"case", c.name}, {"v_a", r.spec.v_a}, {"mean_eta", r.mean_eta}, {"peak_velocity", v}});
    }
    nlohmann::json body = {{"cases", summary}, {"snapshot_x0", times}};
    write_json(join_path(out_dir, "figure1.json"), body, meta_for(base));
    return body;
}

nlohmann::json run_figure2(const Resolved& r, const std::string& out_dir) {
    ensure_directory(out_dir);
    const OutputMeta meta = meta_for(r);
    DensityRun dens = density_impl(r, out_dir, false);
    const nlohmann::json traj = run_trajectories(r, out_dir);
    const nlohmann::json life = run_lifetime(r, out_dir);

    const std::vector<TrackedPeak> peaks = track_peaks(r, dens.field);
    CsvWriter csv(join_path(out_dir, "peaks.csv"), {"x_minus", "x3_peak", "density_peak", "contrast", "xf3_tilde", "flat"},
                  meta);
    for (const auto& p : peaks) csv.row({p.x_minus, p.x3, p.value, p.contrast, p.xf3_tilde, p.flat ? 1.0 : 0.0});
    csv.close();

    nlohmann::json body = {{"density", dens.summary}, {"trajectory", traj}, {"lifetime", life}};
    try {
        const MeasuredWindow mw = measure_lifetime_window(dens.field);
        body["measured_window"] = {{"lo", mw.lo}, {"hi", mw.hi}, {"lo_clipped", mw.lo_clipped}, {"hi_clipped", mw.hi_clipped}};
    } catch (const NumericalError& e) {
        body["measured_window"] = {{"error", e.what()}};
    }
    write_json(join_path(out_dir, "figure2.json"), body, meta);
    return body;
}

nlohmann::json run_figure3(const Resolved& r, const std::string& out_dir) {
    ensure_directory(out_dir);
    const OutputMeta meta = meta_for(r);
    const TrajectoryRange range = r.trajectory_range();
    const SpacetimeGrid& g = r.scenario.grid;
    const auto cache = r.integrals(std::min(range.x_min, g.xm_min), std::max(range.x_max, g.xm_max));
    const Wavepacket wp = make_wavepacket(r, cache);
    const TrajectoryRecord rec = trajectories(wp, range);

    const double v_peak = r.v_f_xi;
    const double v_exp = r.v_1d_xi;
    const auto peak_loop = comoving_transform(rec, v_peak, false);
    const auto exp_peak_frame = comoving_transform(rec, v_peak, true);
    const auto exp_loop = comoving_transform(rec, v_exp, true);

    CsvWriter csv(join_path(out_dir, "figure3_trajectory.csv"),
                  {"x_minus", "xf1", "xf3", "xf3_tilde", "ex1", "ex3", "ex3_tilde", "xf3_comoving", "ex3_comoving",
                   "ex3_comoving_1d"},
                  meta);
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const auto& s = rec.samples[i];
        csv.row({s.x_minus, s.xf1, s.xf3, s.xf3_tilde, s.ex1, s.ex3, s.ex3_tilde, peak_loop[i].x3, exp_peak_frame[i].x3,
                 exp_loop[i].x3});
    }
    csv.close();

    // transverse cut at the grid x_-
    const double xm = g.xm_min;
    const double x1c = cache ? -cache->at(xm).I1 / r.spec.P_minus : 0.0;
    const double w = r.scenario.spectral.w;
    CsvWriter cut(join_path(out_dir, "figure3_transverse.csv"), {"x_minus", "x1", "x3", "density"}, meta);
    const std::size_t n1 = 81;
    std::vector<double> row(g.x3_steps);
    for (std::size_t a = 0; a < n1; ++a) {
        const double x1 = x1c - 3.0 * w + 6.0 * w * static_cast<double>(a) / static_cast<double>(n1 - 1);
        wp.density_row(xm, x1, g.x3_min, g.dx3(), g.x3_steps, row.data());
        for (std::size_t i = 0; i < g.x3_steps; ++i) cut.row({xm, x1, g.x3_at(i), row[i]});
    }
    cut.close();

    const double omega = r.scenario.field.omega;
    const LoopMetrics pm = loop_metrics(peak_loop, omega);
    const LoopMetrics em = loop_metrics(exp_loop, omega);
    auto metrics = [](const LoopMetrics& m) {
        return nlohmann::json{{"gap", m.gap},
                              {"extent", m.extent},
                              {"x1_amplitude", m.x1_amplitude},
                              {"x3_amplitude", m.x3_amplitude},
                              {"x3_residual", m.x3_other},
                              {"x3_zero_crossings", m.x3_zero_crossings}};
    };
    nlohmann::json body = {{"peak_frame_velocity", v_peak},
                           {"expectation_frame_velocity", v_exp},
                           {"peak_loop", metrics(pm)},
                           {"expectation_loop", metrics(em)}};
    write_json(join_path(out_dir, "figure3.json"), body, meta);
    return body;
}

nlohmann::json run_figure4(const std::vector<Resolved>& panels, const std::string& out_dir) {
    ensure_directory(out_dir);
    nlohmann::json out = nlohmann::json::array();
    for (const Resolved& r : panels) {
        const ModalDistribution dist = r.distribution();
        const double xi = r.xi_star();
        const double w = r.scenario.spectral.w;
        const double span = 1.5 * dist.N.support_half_width();
        std::vector<double> etas, p1s;
        for (int i = 0; i <= 80; ++i) etas.push_back(r.mean_eta - span + 2.0 * span * i / 80.0);
        for (int i = 0; i <= 80; ++i) p1s.push_back(-3.0 / w + 6.0 / w * i / 80.0);
        const MomentumMap map = momentum_density_map(dist, xi, etas, p1s);
        const OutputMeta meta = meta_for(r);
        const std::string name = "figure4_" + r.scenario.name + ".csv";
        CsvWriter csv(join_path(out_dir, name), {"eta", "p1", "q3_over_qminus", "weight"}, meta);
        for (const auto& row : map.rows) csv.row({row.eta, row.p1, row.q3_over_qminus, row.weight});
        csv.close();

        const double ridge0 = ridge_q3_over_qminus(dist, xi, 0.0);
        const double ridge1 = ridge_q3_over_qminus(dist, xi, 1.0 / w);
        const Wavepacket wp(dist, r.scenario.quadrature, nullptr, r.scenario.spectral.spin);
        const double full = expectation_velocity(wp.moments(), xi);
        nlohmann::json approx = nullptr;
        try {
            approx = expectation_velocity_approx(r.spec, w, xi);
        } catch (const SingularSlice&) {
        }
        const double rel = (ridge1 - ridge0) / std::abs(ridge0);
        out.push_back({{"name", r.scenario.name},
                       {"csv", name},
                       {"v_fstar", r.scenario.target ? r.scenario.target->v_fstar : r.v_f_xi},
                       {"v_a", r.spec.v_a},
                       {"ridge_p1_0", ridge0},
                       {"ridge_p1_inv_w", ridge1},
                       {"ridge_relative_change", rel},
                       {"curvature", std::abs(rel) < 1e-3 ? "flat" : (rel > 0 ? "convex" : "concave")},
                       {"expectation_velocity", full},
                       {"expectation_velocity_approx", approx},
                       {"one_dimensional_velocity", r.v_1d_ratio},
                       {"skipped_points", map.skipped}});
    }
    nlohmann::json body = {{"panels", out}};
    write_json(join_path(out_dir, "figure4.json"), body, panels.empty() ? OutputMeta{} : meta_for(panels.front()));
    return body;
}

std::vector<std::pair<std::string, bool>> selftest() {
    std::vector<std::pair<std::string, bool>> res;
    auto check = [&](const std::string& name, auto&& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            spdlog::error("{}: {}", name, e.what());
        }
        res.emplace_back(name, ok);
    };
    check("gamma anticommutators", [] {
        const GammaBasis& G = GammaBasis::dirac();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const Matrix4 ac = G[a] * G[b] + G[b] * G[a];
                if ((ac - 2.0 * metric(a, b) * Matrix4::Identity()).norm() > 1e-14) return false;
            }
        return (G.minus() * G.minus()).norm() < 1e-14;
    });
    check("designer table", [] {
        return std::abs(design_va(0.2, 3.0, 3.0)) < 1e-12 && std::abs(design_va(0.0, 3.0, 3.0) + 1.0 / 3.0) < 1e-12 &&
               std::abs(design_va(-4.1, 3.0, 3.0) - 19.545) < 1e-3;
    });
    check("designer round trip", [] {
        for (int i = 0; i < 50; ++i) {
            const double vf = -5.0 + 5.9 * i / 49.0;
            const double va = design_va(vf, 3.0, 3.0);
            if (std::abs(peak_velocity_infield(va, 3.0, 3.0) - vf) > 1e-10) return false;
        }
        return true;
    });
    check("reference constants", [] {
        const ReferencePoint p = ReferencePoint::at(3.0);
        return std::abs(p.eta(0.0) - 5.0 / 3.0) < 1e-12 && std::abs(p.velocity() + 0.8) < 1e-12 &&
               std::abs(drift_velocity_1d(p.velocity(), 3.0, 3.0) + 0.2414) < 5e-4;
    });
    check("presets validate", [] {
        for (const auto& n : preset_names()) validate(preset(n));
        return true;
    });
    return res;
}

} // namespace volkov
