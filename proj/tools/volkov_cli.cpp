#include "volkov/commands.hpp"
#include "volkov/errors.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <regex>

using namespace volkov;

namespace {

struct Options {
    std::string scenario;
    std::string preset;
    std::string out;
    unsigned workers = 0;
    std::size_t quadrature = 0;
    std::string grid;
    bool slice_norms = false;
};

void apply_grid(Scenario& s, const std::string& text) {
    static const std::regex re(R"(^\s*([^:,]+):([^:,]+):(\d+)\s*,\s*([^:,]+):([^:,]+):(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ValidationError("--grid: expected x3min:x3max:steps,xminusmin:xminusmax:steps");
    try {
        s.grid.x3_min = std::stod(m[1]);
        s.grid.x3_max = std::stod(m[2]);
        s.grid.x3_steps = std::stoul(m[3]);
        s.grid.xm_min = std::stod(m[4]);
        s.grid.xm_max = std::stod(m[5]);
        s.grid.xm_steps = std::stoul(m[6]);
    } catch (const std::exception&) {
        throw ValidationError("--grid: numbers could not be parsed");
    }
}

Scenario with_overrides(Scenario s, const Options& o) {
    if (!o.out.empty()) s.out_dir = o.out;
    if (o.workers) s.workers = o.workers;
    if (o.quadrature) s.quadrature = {o.quadrature, o.quadrature};
    if (!o.grid.empty()) apply_grid(s, o.grid);
    return s;
}

// Scenario from --scenario / --preset, else the given defaults.
std::vector<Resolved> resolve(const Options& o, const std::vector<std::string>& defaults) {
    std::vector<Scenario> raw;
    if (!o.scenario.empty() && !o.preset.empty()) throw ValidationError("give --scenario or --preset, not both");
    if (!o.scenario.empty()) raw.push_back(load_scenario(o.scenario));
    else if (!o.preset.empty()) raw.push_back(preset(o.preset));
    else
        for (const auto& d : defaults) raw.push_back(preset(d));
    if (raw.empty()) throw ValidationError("a scenario is required (--scenario PATH or --preset NAME)");
    std::vector<Resolved> out;
    for (auto& s : raw) out.push_back(validate(with_overrides(s, o)));
    return out;
}

std::string out_dir(const Options& o, const Resolved& r, bool per_scenario) {
    const std::string base = o.out.empty() ? r.scenario.out_dir : o.out;
    return per_scenario ? join_path(base, r.scenario.name) : base;
}

} // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("volkov"));
    CLI::App app{"Arbitrary-velocity Volkov wavepackets"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "scenario file (YAML)");
        sub->add_option("--preset", o.preset, "built-in scenario name");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--workers", o.workers, "worker threads (0: all cores; VOLKOV_WORKERS overrides)");
        sub->add_option("--quadrature", o.quadrature, "nodes per momentum axis")->check(CLI::Range(4, 4096));
        sub->add_option("--grid", o.grid, "x3min:x3max:steps,xminusmin:xminusmax:steps");
    };
    auto* design = app.add_subcommand("design", "velocity designer table");
    auto* density = app.add_subcommand("density", "light-front density on an (x_-, x3) grid");
    auto* traj = app.add_subcommand("trajectories", "peak and expectation trajectories");
    auto* life = app.add_subcommand("lifetime", "peak lifetime inside the envelope");
    auto* f1 = app.add_subcommand("figure1", "partial-wavepacket snapshots and momentum curves");
    auto* f2 = app.add_subcommand("figure2", "density, trajectories and lifetime for the three designed cases");
    auto* f3 = app.add_subcommand("figure3", "co-moving trajectories and transverse cut");
    auto* f4 = app.add_subcommand("figure4", "dressed momentum-density maps");
    auto* self = app.add_subcommand("selftest", "quick internal checks");
    for (auto* s : {design, density, traj, life, f1, f2, f3, f4}) common(s);
    density->add_flag("--slice-norms", o.slice_norms, "integrate the density over three x_- slices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        nlohmann::json result;
        if (*design) {
            const auto rs = resolve(o, {"fig2a", "fig2b", "fig2c"});
            result = run_design(rs, out_dir(o, rs.front(), false));
        } else if (*density) {
            const auto rs = resolve(o, {});
            result = run_density(rs.front(), out_dir(o, rs.front(), false), o.slice_norms);
        } else if (*traj) {
            const auto rs = resolve(o, {});
            result = run_trajectories(rs.front(), out_dir(o, rs.front(), false));
        } else if (*life) {
            const auto rs = resolve(o, {});
            result = run_lifetime(rs.front(), out_dir(o, rs.front(), false));
        } else if (*f1) {
            const auto rs = resolve(o, {"fig1"});
            result = run_figure1(rs.front(), out_dir(o, rs.front(), false));
        } else if (*f2) {
            const auto rs = resolve(o, {"fig2a", "fig2b", "fig2c"});
            result = nlohmann::json::object();
            for (const auto& r : rs) result[r.scenario.name] = run_figure2(r, out_dir(o, r, true));
        } else if (*f3) {
            const auto rs = resolve(o, {"fig3"});
            result = run_figure3(rs.front(), out_dir(o, rs.front(), false));
        } else if (*f4) {
            const auto rs = resolve(o, {"fig4a", "fig4b", "fig4c"});
            result = run_figure4(rs, out_dir(o, rs.front(), false));
        } else if (*self) {
            bool all = true;
            for (const auto& [name, ok] : selftest()) {
                std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
                all = all && ok;
            }
            return all ? 0 : 3;
        }
        std::cout << result.dump(2) << '\n';
        return 0;
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 3;
    }
}
