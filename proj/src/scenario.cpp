#include "volkov/scenario.hpp"
#include "volkov/errors.hpp"
#include "volkov/lifetime.hpp"

#include <openssl/evp.h>
#include <spdlog/spdlog.h>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace volkov {

std::string branch_name(Branch b) {
    switch (b) {
    case Branch::Negative: return "negative";
    case Branch::Positive: return "positive";
    default: return "auto";
    }
}

std::string shape_name(EtaShape s) { return s == EtaShape::Spectral ? "spectral" : "envelope"; }

namespace {

// Collects schema problems with their key paths instead of stopping at the first.
class Reader {
public:
    std::vector<std::string> issues;

    void fail(const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); }

    void allow(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> keys) {
        if (!node) return;
        if (!node.IsMap()) {
            fail(path, "expected a mapping");
            return;
        }
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& kv : node) {
            const std::string k = kv.first.as<std::string>();
            if (!ok.count(k)) fail(path.empty() ? k : path + "." + k, "unknown key");
        }
    }

    template <class T> bool get(const YAML::Node& node, const char* key, const std::string& path, T& out) {
        if (!node || !node.IsMap() || !node[key]) return false;
        const YAML::Node v = node[key];
        try {
            out = v.as<T>();
            return true;
        } catch (const YAML::Exception&) {
            fail(join(path, key), "wrong type");
            return false;
        }
    }

    template <class T> bool get(const YAML::Node& node, const char* key, const std::string& path, std::optional<T>& out) {
        T tmp{};
        if (!get(node, key, path, tmp)) return false;
        out = tmp;
        return true;
    }

    // [min, max, steps]
    bool range(const YAML::Node& node, const char* key, const std::string& path, double& lo, double& hi,
               std::size_t& steps) {
        if (!node || !node.IsMap() || !node[key]) return false;
        const YAML::Node v = node[key];
        if (!v.IsSequence() || v.size() != 3) {
            fail(join(path, key), "expected [min, max, steps]");
            return false;
        }
        try {
            lo = v[0].as<double>();
            hi = v[1].as<double>();
            const long n = v[2].as<long>();
            if (n < 1) fail(join(path, key), "steps must be >= 1");
            else steps = static_cast<std::size_t>(n);
            if (n > 1 && !(hi > lo)) fail(join(path, key), "max must exceed min");
        } catch (const YAML::Exception&) {
            fail(join(path, key), "expected numbers");
            return false;
        }
        return true;
    }

    static std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
};

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ValidationError(std::string("scenario is not parseable: ") + e.what());
    }
    if (!root.IsMap()) throw ValidationError("scenario: expected a mapping at the top level");

    Reader rd;
    Scenario s;
    rd.allow(root, "", {"name", "correlation", "spectral", "field", "grid", "trajectory", "quadrature", "output", "expect"});
    rd.get(root, "name", "", s.name);

    const YAML::Node c = root["correlation"];
    rd.allow(c, "correlation", {"v_a", "target", "nominal_v_fstar", "branch", "P_minus"});
    rd.get(c, "v_a", "correlation", s.v_a);
    rd.get(c, "nominal_v_fstar", "correlation", s.nominal_v_fstar);
    if (c && c["target"]) {
        const YAML::Node t = c["target"];
        rd.allow(t, "correlation.target", {"v_fstar", "xi_star"});
        DesignTarget dt;
        const bool a = rd.get(t, "v_fstar", "correlation.target", dt.v_fstar);
        const bool b = rd.get(t, "xi_star", "correlation.target", dt.xi_star);
        if (!a) rd.fail("correlation.target.v_fstar", "required");
        if (!b) rd.fail("correlation.target.xi_star", "required");
        s.target = dt;
    }
    std::string branch;
    if (rd.get(c, "branch", "correlation", branch)) {
        if (branch == "auto") s.branch = Branch::Auto;
        else if (branch == "negative") s.branch = Branch::Negative;
        else if (branch == "positive") s.branch = Branch::Positive;
        else rd.fail("correlation.branch", "expected auto, negative or positive");
    }
    rd.get(c, "P_minus", "correlation", s.P_minus);

    const YAML::Node sp = root["spectral"];
    rd.allow(sp, "spectral", {"eta_shape", "order", "delta_eta", "delta_x3", "w", "spin"});
    std::string shape;
    if (rd.get(sp, "eta_shape", "spectral", shape)) {
        if (shape == "envelope") s.spectral.shape = EtaShape::Envelope;
        else if (shape == "spectral") s.spectral.shape = EtaShape::Spectral;
        else rd.fail("spectral.eta_shape", "expected envelope or spectral");
    }
    rd.get(sp, "order", "spectral", s.spectral.order);
    rd.get(sp, "delta_eta", "spectral", s.spectral.delta_eta);
    rd.get(sp, "delta_x3", "spectral", s.spectral.delta_x3);
    rd.get(sp, "w", "spectral", s.spectral.w);
    std::string spin;
    if (rd.get(sp, "spin", "spectral", spin)) {
        if (spin == "up") s.spectral.spin = Spin::Up;
        else if (spin == "down") s.spectral.spin = Spin::Down;
        else rd.fail("spectral.spin", "expected up or down");
    }

    const YAML::Node f = root["field"];
    rd.allow(f, "field",
             {"profile", "xi", "charge_sign", "omega", "phase", "fwhm", "order", "center", "table", "samples"});
    rd.get(f, "profile", "field", s.field.profile);
    rd.get(f, "xi", "field", s.field.xi);
    rd.get(f, "charge_sign", "field", s.field.charge_sign);
    rd.get(f, "omega", "field", s.field.omega);
    rd.get(f, "phase", "field", s.field.phase);
    rd.get(f, "fwhm", "field", s.field.fwhm);
    rd.get(f, "order", "field", s.field.order);
    rd.get(f, "center", "field", s.field.center);
    rd.get(f, "samples", "field", s.field.samples);
    if (f && f["table"]) {
        const YAML::Node t = f["table"];
        if (!t.IsSequence()) rd.fail("field.table", "expected a list of [x_minus, xi] pairs");
        else
            for (std::size_t i = 0; i < t.size(); ++i) {
                try {
                    if (!t[i].IsSequence() || t[i].size() != 2) throw YAML::Exception(YAML::Mark(), "pair");
                    s.field.table.emplace_back(t[i][0].as<double>(), t[i][1].as<double>());
                } catch (const YAML::Exception&) {
                    rd.fail("field.table[" + std::to_string(i) + "]", "expected [x_minus, xi]");
                }
            }
    }

    const YAML::Node g = root["grid"];
    rd.allow(g, "grid", {"x3", "x_minus", "x1_mode", "x1"});
    rd.range(g, "x3", "grid", s.grid.x3_min, s.grid.x3_max, s.grid.x3_steps);
    rd.range(g, "x_minus", "grid", s.grid.xm_min, s.grid.xm_max, s.grid.xm_steps);
    std::string mode;
    if (rd.get(g, "x1_mode", "grid", mode)) {
        if (mode == "peak") s.grid.x1_rule = SpacetimeGrid::X1Rule::Peak;
        else if (mode == "constant") s.grid.x1_rule = SpacetimeGrid::X1Rule::Constant;
        else rd.fail("grid.x1_mode", "expected peak or constant");
    }
    rd.get(g, "x1", "grid", s.grid.x1);

    const YAML::Node tr = root["trajectory"];
    rd.allow(tr, "trajectory", {"x_minus"});
    TrajectoryRange range;
    if (rd.range(tr, "x_minus", "trajectory", range.x_min, range.x_max, range.steps)) s.trajectory = range;

    const YAML::Node q = root["quadrature"];
    rd.allow(q, "quadrature", {"n_eta", "n_p1", "auto_escalate", "enforce_nyquist", "convergence_probe"});
    long ne = 0, np = 0;
    if (rd.get(q, "n_eta", "quadrature", ne)) {
        if (ne < 4) rd.fail("quadrature.n_eta", "must be >= 4");
        else s.quadrature.n_eta = static_cast<std::size_t>(ne);
    }
    if (rd.get(q, "n_p1", "quadrature", np)) {
        if (np < 4) rd.fail("quadrature.n_p1", "must be >= 4");
        else s.quadrature.n_p1 = static_cast<std::size_t>(np);
    }
    rd.get(q, "auto_escalate", "quadrature", s.auto_escalate);
    rd.get(q, "enforce_nyquist", "quadrature", s.enforce_nyquist);
    rd.get(q, "convergence_probe", "quadrature", s.convergence_probe);

    const YAML::Node o = root["output"];
    rd.allow(o, "output", {"dir", "workers"});
    rd.get(o, "dir", "output", s.out_dir);
    long workers = 0;
    if (rd.get(o, "workers", "output", workers)) {
        if (workers < 0) rd.fail("output.workers", "must be >= 0");
        else s.workers = static_cast<unsigned>(workers);
    }

    const YAML::Node ex = root["expect"];
    if (ex) {
        if (!ex.IsMap()) rd.fail("expect", "expected a mapping");
        else
            for (const auto& kv : ex) {
                const std::string k = kv.first.as<std::string>();
                try {
                    if (!kv.second.IsSequence() || kv.second.size() != 2) throw YAML::Exception(YAML::Mark(), "pair");
                    s.expect[k] = {kv.second[0].as<double>(), kv.second[1].as<double>()};
                } catch (const YAML::Exception&) {
                    rd.fail("expect." + k, "expected [value, tolerance]");
                }
            }
    }

    if (!rd.issues.empty()) throw ValidationError(rd.issues);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

double Resolved::xi_star() const {
    if (scenario.target) return scenario.target->xi_star;
    return scenario.field.profile == "none" ? 0.0 : field().profile().peak();
}

ModalDistribution Resolved::distribution() const {
    return {spec, EtaWeight(mean_eta, delta_eta, scenario.spectral.order, scenario.spectral.shape),
            TransverseWeight(scenario.spectral.w)};
}

PlaneWaveField Resolved::field() const {
    const FieldParams& f = scenario.field;
    FieldProfile p;
    if (f.profile == "constant") p = FieldProfile::constant(f.xi);
    else if (f.profile == "super_gaussian") p = FieldProfile::super_gaussian(f.xi, f.fwhm, f.order, f.center);
    else if (f.profile == "tabulated") p = FieldProfile::tabulated(f.table);
    return PlaneWaveField(f.omega, f.phase, f.charge_sign, p);
}

std::shared_ptr<const FieldIntegrals> Resolved::integrals(double lo, double hi) const {
    const PlaneWaveField f = field();
    if (!f.active()) return nullptr;
    const double pad = f.period();
    return std::make_shared<FieldIntegrals>(f, std::min(lo, 0.0) - pad, std::max(hi, 0.0) + pad, scenario.field.samples);
}

std::shared_ptr<const FieldIntegrals> Resolved::grid_integrals() const {
    const TrajectoryRange t = trajectory_range();
    return integrals(std::min(scenario.grid.xm_min, t.x_min), std::max(scenario.grid.xm_max, t.x_max));
}

TrajectoryRange Resolved::trajectory_range() const {
    if (scenario.trajectory) return *scenario.trajectory;
    return {scenario.grid.xm_min, scenario.grid.xm_max, 2001};
}

DensityOptions Resolved::density_options() const {
    DensityOptions o;
    o.workers = scenario.workers;
    o.auto_escalate = scenario.auto_escalate;
    o.enforce_nyquist = scenario.enforce_nyquist;
    o.convergence_probe = scenario.convergence_probe;
    return o;
}

nlohmann::json Resolved::derived() const {
    auto r6 = [](double v) { return std::round(v * 1e6) / 1e6; };
    nlohmann::json j;
    j["v_a"] = spec.v_a;
    j["branch"] = branch_name(spec.branch);
    j["P_minus"] = spec.P_minus;
    j["mean_eta"] = r6(mean_eta);
    j["P3"] = P3;
    j["E"] = E;
    j["r"] = r;
    j["xi_star"] = xi_star();
    j["Y"] = Y;
    j["v_1d_xi"] = v_1d_xi;
    j["v_1d_0"] = v_1d_0;
    j["v_1d_ratio"] = v_1d_ratio;
    j["v_f_xi"] = v_f_xi;
    j["delta_eta"] = delta_eta;
    j["delta_x3"] = delta_x3;
    j["delta_x3_convention"] = "90% intensity half-length of the field-free envelope";
    j["c_N"] = c_N;
    j["eta_shape"] = shape_name(scenario.spectral.shape);
    j["eta_order"] = scenario.spectral.order;
    j["w"] = scenario.spectral.w;
    j["field_profile"] = scenario.field.profile;
    j["field_order"] = scenario.field.order;
    if (designed_va) j["designed_v_a"] = *designed_va;
    return j;
}

Resolved validate(const Scenario& s) {
    std::vector<std::string> issues;
    auto fail = [&](const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); };

    if (s.v_a && s.target) fail("correlation", "give exactly one of v_a and target");
    if (!s.v_a && !s.target) fail("correlation", "one of v_a or target is required");
    if (s.v_a && !std::isfinite(*s.v_a)) fail("correlation.v_a", "must be finite");
    if (!(s.P_minus > 0)) fail("correlation.P_minus", "must be > 0");
    if (s.target && !(s.target->xi_star >= 0)) fail("correlation.target.xi_star", "must be >= 0");

    const SpectralParams& sp = s.spectral;
    if (sp.delta_eta && sp.delta_x3) fail("spectral", "give at most one of delta_eta and delta_x3");
    if (sp.delta_eta && !(*sp.delta_eta > 0)) fail("spectral.delta_eta", "must be > 0");
    if (sp.delta_x3 && !(*sp.delta_x3 > 0)) fail("spectral.delta_x3", "must be > 0");
    if (!(sp.order >= 1)) fail("spectral.order", "must be >= 1");
    if (!(sp.w > 0)) fail("spectral.w", "must be > 0");

    const FieldParams& f = s.field;
    static const std::set<std::string> profiles{"none", "constant", "super_gaussian", "tabulated"};
    if (!profiles.count(f.profile)) fail("field.profile", "expected none, constant, super_gaussian or tabulated");
    if (f.profile != "none" && f.profile != "tabulated" && !(f.xi >= 0)) fail("field.xi", "must be >= 0");
    if (f.charge_sign != 1.0 && f.charge_sign != -1.0) fail("field.charge_sign", "must be +1 or -1");
    if (!(f.omega > 0)) fail("field.omega", "must be > 0");
    if (f.profile == "super_gaussian") {
        if (!(f.fwhm > 0)) fail("field.fwhm", "must be > 0 for super_gaussian");
        if (!(f.order > 0)) fail("field.order", "must be > 0");
    }
    if (f.profile == "tabulated") {
        if (f.table.size() < 2) fail("field.table", "needs at least two samples");
        for (std::size_t i = 1; i < f.table.size(); ++i)
            if (!(f.table[i].first > f.table[i - 1].first)) {
                fail("field.table", "x_minus must be strictly ascending");
                break;
            }
    }
    if (f.samples < 64) fail("field.samples", "must be >= 64 per carrier period");
    if (s.grid.x3_steps < 3) fail("grid.x3", "needs >= 3 steps");
    if (!(s.grid.x3_max > s.grid.x3_min)) fail("grid.x3", "max must exceed min");
    if (s.grid.xm_steps < 1) fail("grid.x_minus", "needs >= 1 step");
    if (s.grid.xm_steps > 1 && !(s.grid.xm_max > s.grid.xm_min)) fail("grid.x_minus", "max must exceed min");
    if (s.trajectory && s.trajectory->steps < 2) fail("trajectory.x_minus", "needs >= 2 steps");
    if (s.quadrature.n_eta < 4) fail("quadrature.n_eta", "must be >= 4");
    if (s.quadrature.n_p1 < 4) fail("quadrature.n_p1", "must be >= 4");
    if (!issues.empty()) throw ValidationError(issues);

    Resolved r;
    r.scenario = s;
    double v_a = 0;
    if (s.target) {
        v_a = design_va(s.target->v_fstar, s.target->xi_star, s.P_minus);
        r.designed_va = v_a;
    } else {
        v_a = *s.v_a;
    }
    r.spec.v_a = v_a;
    r.spec.branch = s.branch;
    r.spec.P_minus = s.P_minus;
    r.spec.target = s.target;
    const ReferencePoint ref = r.spec.reference();
    r.P3 = ref.P3;
    r.E = ref.E;
    r.r = ref.velocity();
    r.mean_eta = ref.eta(v_a);

    const SingularityDiagnostic diag = singularity_guard(v_a, r.mean_eta, 0.0);
    if (diag.singular) throw SingularSlice("correlation.v_a: " + diag.message);
    if (diag.evanescent) throw EvanescentMode("correlation.v_a: " + diag.message);
    if (diag.branch_notice) spdlog::warn("{}", diag.message);

    const double xi = r.xi_star();
    r.Y = xi * xi / (4.0 * s.P_minus * s.P_minus);
    r.v_1d_xi = drift_velocity_1d(r.r, xi, s.P_minus);
    r.v_1d_0 = drift_velocity_1d(r.r, 0.0, s.P_minus);
    r.v_1d_ratio = r.v_1d_xi / (1.0 - r.v_1d_xi);
    r.v_f_xi = peak_velocity_infield(v_a, xi, s.P_minus);
    r.c_N = envelope_calibration(sp.shape, sp.order);
    if (sp.delta_eta) {
        r.delta_eta = *sp.delta_eta;
        r.delta_x3 = r.c_N * std::abs(v_a - r.r) / r.delta_eta;
    } else {
        r.delta_x3 = sp.delta_x3.value_or(3.0e5);
        r.delta_eta = width_for_length(r.spec, sp.shape, sp.order, r.delta_x3);
    }

    const PlaneWaveField fld = r.field();
    if (fld.active()) {
        const TrajectoryRange t = r.trajectory_range();
        const double ratio = fld.slowly_varying_ratio(std::min(s.grid.xm_min, t.x_min), std::max(s.grid.xm_max, t.x_max));
        if (ratio > 0.2) spdlog::warn("field envelope changes by {:.0f}% per carrier cycle", 100.0 * ratio);
    }

    const nlohmann::json d = r.derived();
    for (const auto& [key, e] : s.expect) {
        if (!d.contains(key) || !d[key].is_number()) {
            issues.push_back("expect." + key + ": unknown derived quantity");
            continue;
        }
        const double got = d[key].get<double>();
        if (!(std::abs(got - e.value) <= e.tolerance)) {
            std::ostringstream os;
            os << "expect." << key << ": derived " << got << " differs from " << e.value << " by more than "
               << e.tolerance;
            issues.push_back(os.str());
        }
    }
    if (!issues.empty()) throw ValidationError(issues);
    return r;
}

nlohmann::json to_json(const Scenario& s) {
    nlohmann::json j;
    j["name"] = s.name;
    nlohmann::json c;
    if (s.v_a) c["v_a"] = *s.v_a;
    if (s.target) c["target"] = {{"v_fstar", s.target->v_fstar}, {"xi_star", s.target->xi_star}};
    if (s.nominal_v_fstar) c["nominal_v_fstar"] = *s.nominal_v_fstar;
    c["branch"] = branch_name(s.branch);
    c["P_minus"] = s.P_minus;
    j["correlation"] = c;
    nlohmann::json sp;
    sp["eta_shape"] = shape_name(s.spectral.shape);
    sp["order"] = s.spectral.order;
    if (s.spectral.delta_eta) sp["delta_eta"] = *s.spectral.delta_eta;
    if (s.spectral.delta_x3) sp["delta_x3"] = *s.spectral.delta_x3;
    sp["w"] = s.spectral.w;
    sp["spin"] = s.spectral.spin == Spin::Up ? "up" : "down";
    j["spectral"] = sp;
    nlohmann::json f;
    f["profile"] = s.field.profile;
    f["xi"] = s.field.xi;
    f["charge_sign"] = s.field.charge_sign;
    f["omega"] = s.field.omega;
    f["phase"] = s.field.phase;
    f["fwhm"] = s.field.fwhm;
    f["order"] = s.field.order;
    f["center"] = s.field.center;
    f["samples"] = s.field.samples;
    if (!s.field.table.empty()) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& [x, v] : s.field.table) t.push_back({x, v});
        f["table"] = t;
    }
    j["field"] = f;
    j["grid"] = {{"x3", {s.grid.x3_min, s.grid.x3_max, s.grid.x3_steps}},
                 {"x_minus", {s.grid.xm_min, s.grid.xm_max, s.grid.xm_steps}},
                 {"x1_mode", s.grid.x1_rule == SpacetimeGrid::X1Rule::Peak ? "peak" : "constant"},
                 {"x1", s.grid.x1}};
    if (s.trajectory) j["trajectory"] = {{"x_minus", {s.trajectory->x_min, s.trajectory->x_max, s.trajectory->steps}}};
    j["quadrature"] = {{"n_eta", s.quadrature.n_eta},
                       {"n_p1", s.quadrature.n_p1},
                       {"auto_escalate", s.auto_escalate},
                       {"enforce_nyquist", s.enforce_nyquist},
                       {"convergence_probe", s.convergence_probe}};
    j["output"] = {{"dir", s.out_dir}, {"workers", s.workers}};
    if (!s.expect.empty()) {
        nlohmann::json e;
        for (const auto& [k, v] : s.expect) e[k] = {v.value, v.tolerance};
        j["expect"] = e;
    }
    return j;
}

std::string scenario_hash(const Scenario& s) {
    nlohmann::json j = to_json(s);
    j.erase("output");
    const std::string text = j.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw NumericalError("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

Scenario fig2_common(const std::string& name, double v_a) {
    Scenario s;
    s.name = name;
    s.v_a = v_a;
    s.spectral.delta_x3 = 3.0e5;
    s.field.profile = "super_gaussian";
    s.field.xi = 3.0;
    s.field.fwhm = 4.8e4;
    s.field.order = 2.0;
    s.quadrature = {128, 128};
    // pinned sizes; the convergence probe decides escalation, the node-count guard only reports
    s.enforce_nyquist = false;
    s.expect["v_1d_xi"] = {-0.24, 0.005};
    s.expect["v_1d_0"] = {-0.8, 1e-12};
    return s;
}

void set_grid(Scenario& s, double x3, double xm, std::size_t steps = 200) {
    s.grid.x3_min = -x3;
    s.grid.x3_max = x3;
    s.grid.x3_steps = steps;
    s.grid.xm_min = -xm;
    s.grid.xm_max = xm;
    s.grid.xm_steps = steps;
    s.trajectory = TrajectoryRange{-xm, xm, 2001};
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2a", "fig2b", "fig2c", "fig3", "fig4a", "fig4b", "fig4c", "norm"};
}

Scenario preset(const std::string& name) {
    if (name == "fig1") {
        Scenario s;
        s.name = name;
        s.v_a = 0.0;
        s.spectral.delta_x3 = 3.0e5;
        s.quadrature = {128, 128};
        s.grid.x1_rule = SpacetimeGrid::X1Rule::Constant;
        s.grid.x3_min = -4.0e4;
        s.grid.x3_max = 4.0e4;
        s.grid.x3_steps = 81;
        s.grid.xm_min = -5.0e4;
        s.grid.xm_max = 5.0e4;
        s.grid.xm_steps = 3;
        s.expect["mean_eta"] = {1.67, 0.005};
        return s;
    }
    if (name == "fig2a") {
        Scenario s = fig2_common(name, -0.3);
        s.nominal_v_fstar = 0.0;
        set_grid(s, 6.0e5, 9.0e5);
        s.expect["v_f_xi"] = {0.019, 5e-4};
        s.expect["mean_eta"] = {1.27, 0.005};
        return s;
    }
    if (name == "fig2b") {
        Scenario s = fig2_common(name, 0.0);
        s.nominal_v_fstar = 0.2;
        set_grid(s, 3.5e5, 4.5e5);
        s.expect["v_f_xi"] = {0.2, 0.05};
        s.expect["mean_eta"] = {1.67, 0.005};
        return s;
    }
    if (name == "fig2c") {
        Scenario s = fig2_common(name, 19.5);
        s.nominal_v_fstar = -4.1;
        set_grid(s, 5.0e5, 3.3e5);
        s.expect["v_f_xi"] = {-4.1, 0.05};
        return s;
    }
    if (name == "fig3") {
        Scenario s;
        s.name = name;
        s.v_a = 19.5;
        s.nominal_v_fstar = -4.1;
        s.spectral.delta_x3 = 3.0e5;
        s.field.profile = "constant";
        s.field.xi = 3.0;
        s.quadrature = {128, 128};
        const double half = std::numbers::pi / s.field.omega;
        s.trajectory = TrajectoryRange{-half, half, 721};
        // transverse cut at omega x_- = 0
        s.grid.x1_rule = SpacetimeGrid::X1Rule::Constant;
        s.grid.x3_min = -4.0e5;
        s.grid.x3_max = 4.0e5;
        s.grid.x3_steps = 81;
        s.grid.xm_min = 0.0;
        s.grid.xm_max = 0.0;
        s.grid.xm_steps = 1;
        s.expect["v_f_xi"] = {-4.1, 0.05};
        s.expect["v_1d_xi"] = {-0.24, 0.005};
        return s;
    }
    if (name == "fig4a" || name == "fig4b" || name == "fig4c") {
        const double vf = name == "fig4a" ? 0.0 : name == "fig4b" ? -0.5 : -4.1;
        Scenario s;
        s.name = name;
        s.target = DesignTarget{vf, 3.0};
        s.spectral.shape = EtaShape::Spectral;
        s.spectral.delta_eta = 0.01;
        s.spectral.w = 4.0 * std::numbers::pi;
        s.field.profile = "constant";
        s.field.xi = 3.0;
        s.grid.x3_min = -1.0;
        s.grid.x3_max = 1.0;
        s.grid.x3_steps = 3;
        s.grid.xm_min = 0.0;
        s.grid.xm_max = 0.0;
        s.grid.xm_steps = 1;
        s.trajectory = TrajectoryRange{-1.0, 1.0, 2};
        s.expect["v_1d_ratio"] = {-0.1944, 5e-4};
        s.expect["v_1d_xi"] = {-0.24, 0.005};
        return s;
    }
    if (name == "norm") {
        Scenario s;
        s.name = name;
        s.v_a = 0.0;
        s.spectral.delta_x3 = 5000.0;
        s.field.profile = "super_gaussian";
        s.field.xi = 3.0;
        s.field.fwhm = 9600.0;
        s.quadrature = {128, 128};
        s.enforce_nyquist = false;
        s.grid.x1_rule = SpacetimeGrid::X1Rule::Peak;
        s.grid.x3_min = -8000.0;
        s.grid.x3_max = 8000.0;
        s.grid.x3_steps = 161;
        s.grid.xm_min = -3.0e4;
        s.grid.xm_max = 3.0e4;
        s.grid.xm_steps = 3;
        return s;
    }
    throw ValidationError("unknown preset '" + name + "'");
}

} // namespace volkov
