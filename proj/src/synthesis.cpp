#include "volkov/synthesis.hpp"
#include "volkov/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace volkov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kRecurrenceBlock = 32;
constexpr double kNegligible = 1e-14;
// Effective support: spectral intensity above 1e-2 of its peak.
constexpr double kEffectiveSupport = 1e-1;

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace

Wavepacket::Wavepacket(ModalDistribution dist, QuadratureSizes sizes, std::shared_ptr<const FieldIntegrals> field,
                       Spin spin)
    : dist_(std::move(dist)), sizes_(sizes), field_(std::move(field)), spin_(spin), ref_(dist_.spec.reference()) {
    const QuadratureRule qe = dist_.N.rule(sizes_.n_eta);
    const QuadratureRule qp = dist_.T.rule(sizes_.n_p1);
    std::vector<double> Nv(qe.size()), Tv(qp.size());
    double nmax = 0, tmax = 0;
    for (std::size_t i = 0; i < qe.size(); ++i) nmax = std::max(nmax, std::abs(Nv[i] = dist_.N(qe.nodes[i])));
    for (std::size_t j = 0; j < qp.size(); ++j) tmax = std::max(tmax, std::abs(Tv[j] = dist_.T(qp.nodes[j])));

    const Matrix4& dress = GammaBasis::dirac().dressing();
    nodes_.reserve(qe.size() * qp.size());
    for (std::size_t i = 0; i < qe.size(); ++i) {
        for (std::size_t j = 0; j < qp.size(); ++j) {
            const double nt = Nv[i] * Tv[j];
            OnShellMomentum p;
            try {
                p = on_shell(dist_.spec, qe.nodes[i], qp.nodes[j]);
            } catch (const NumericalError&) {
                if (std::abs(nt) <= kNegligible * nmax * tmax) {
                    ++dropped_;
                    continue;
                }
                throw;
            }
            MomentumNode k;
            k.eta = p.eta;
            k.p1 = p.p1;
            k.p3 = p.p3;
            k.E = p.E;
            k.pm = p.minus();
            const double J = std::abs(p.p3 / p.E - dist_.spec.v_a);
            k.coeff = qe.weights[i] * Nv[i] * qp.weights[j] * Tv[j] / (std::sqrt(J) * kTwoPi * std::sqrt(2.0 * k.pm));
            k.weight = qe.weights[i] * Nv[i] * Nv[i] * qp.weights[j] * Tv[j] * Tv[j];
            const Bispinor u = free_spinor(p.four(), spin_);
            const Bispinor w = dress * u / (2.0 * k.pm);
            for (int c = 0; c < 4; ++c) {
                k.u[c] = u[c].real();
                k.w[c] = w[c].real();
            }
            nodes_.push_back(k);
        }
    }
    if (nodes_.empty()) throw EvanescentMode("no propagating quadrature nodes");

    double sw = 0, norm = 0, eta_mean = 0, p1_mean = 0;
    Moments m;
    for (const auto& k : nodes_) {
        sw += k.weight;
        norm += k.weight * k.E / k.pm;
        m.inv_pm += k.weight / k.pm;
        m.inv_pm2 += k.weight / (k.pm * k.pm);
        m.p3_over_pm += k.weight * k.p3 / k.pm;
        m.p1_sq += k.weight * k.p1 * k.p1;
        eta_mean += k.weight * k.eta;
        p1_mean += k.weight * k.p1;
    }
    m.E_over_pm = norm / sw;
    m.inv_pm /= sw;
    m.inv_pm2 /= sw;
    m.p3_over_pm /= sw;
    m.p1_sq /= sw;
    m.eta = eta_mean / sw;
    p1_mean /= sw;
    for (const auto& k : nodes_) m.eta_p1_cov += k.weight * (k.eta - m.eta) * (k.p1 - p1_mean);
    m.eta_p1_cov /= sw;
    moments_ = m;

    norm_scale_ = 1.0 / std::sqrt(norm);
    for (auto& k : nodes_) k.coeff *= norm_scale_;
}

Wavepacket Wavepacket::with_sizes(QuadratureSizes sizes) const { return Wavepacket(dist_, sizes, field_, spin_); }

double Wavepacket::relative_phase(const MomentumNode& k, double x0, double x1, double x3,
                                  const FieldIntegrals::Values& f) const {
    return -(k.E - ref_.E) * x0 + k.p1 * x1 + (k.p3 - ref_.P3) * x3 + k.p1 * f.I1 / k.pm -
           0.5 * f.I2 * (1.0 / k.pm - 1.0 / ref_.P_minus);
}

Bispinor Wavepacket::partial(const FourVector& x, double eta) const {
    const QuadratureRule qp = dist_.T.rule(sizes_.n_p1);
    const FieldIntegrals::Values f = field_ ? field_->at(x.minus()) : FieldIntegrals::Values{};
    Bispinor phi = Bispinor::Zero();
    for (std::size_t j = 0; j < qp.size(); ++j) {
        const OnShellMomentum p = on_shell(dist_.spec, eta, qp.nodes[j]);
        const double pm = p.minus();
        const double J = std::abs(p.p3 / p.E - dist_.spec.v_a);
        Bispinor s = free_spinor(p.four(), spin_);
        if (field_) s = dressed_bispinor(s, pm, f.eA1);
        double S = -minkowski_dot(p.four(), x);
        S += (p.p1 * f.I1 - 0.5 * f.I2) / pm;
        const double c = qp.weights[j] * dist_.T(p.p1) / (std::sqrt(J) * kTwoPi * std::sqrt(2.0 * pm));
        phi += s * (c * std::polar(1.0, S));
    }
    return phi;
}

Bispinor Wavepacket::psi(const FourVector& x) const {
    const FieldIntegrals::Values f = field_ ? field_->at(x.minus()) : FieldIntegrals::Values{};
    Bispinor acc = Bispinor::Zero();
    for (const auto& k : nodes_) {
        const cplx e = k.coeff * std::polar(1.0, relative_phase(k, x.t, x.x1, x.x3, f));
        for (int c = 0; c < 4; ++c) acc[c] += e * (k.u[c] - f.eA1 * k.w[c]);
    }
    return acc;
}

double Wavepacket::density(const FourVector& x) const { return lightfront_density(psi(x)); }

void Wavepacket::density_row(double x_minus, double x1, double x3_start, double dx3, std::size_t n,
                             double* out) const {
    const FieldIntegrals::Values f = field_ ? field_->at(x_minus) : FieldIntegrals::Values{};
    const std::size_t K = nodes_.size();
    std::vector<double> alpha(K), beta(K), er(K), ei(K), rr(K), ri(K);
    for (std::size_t k = 0; k < K; ++k) {
        const MomentumNode& m = nodes_[k];
        alpha[k] = m.coeff * ((m.u[0] - m.u[2]) - f.eA1 * (m.w[0] - m.w[2]));
        beta[k] = m.coeff * ((m.u[1] + m.u[3]) - f.eA1 * (m.w[1] + m.w[3]));
        const double d = -(m.pm - ref_.P_minus) * dx3;
        rr[k] = std::cos(d);
        ri[k] = std::sin(d);
    }
    for (std::size_t start = 0; start < n; start += kRecurrenceBlock) {
        const double x3 = x3_start + static_cast<double>(start) * dx3;
        const double x0 = x_minus + x3;
        for (std::size_t k = 0; k < K; ++k) {
            const double th = relative_phase(nodes_[k], x0, x1, x3, f);
            er[k] = std::cos(th);
            ei[k] = std::sin(th);
        }
        const std::size_t stop = std::min(n, start + kRecurrenceBlock);
        for (std::size_t s = start; s < stop; ++s) {
            double aR = 0, aI = 0, bR = 0, bI = 0;
            for (std::size_t k = 0; k < K; ++k) {
                const double r = er[k], i = ei[k];
                aR += r * alpha[k];
                aI += i * alpha[k];
                bR += r * beta[k];
                bI += i * beta[k];
                er[k] = r * rr[k] - i * ri[k];
                ei[k] = r * ri[k] + i * rr[k];
            }
            out[s] = aR * aR + aI * aI + bR * bR + bI * bI;
        }
    }
}

double SpacetimeGrid::x3_at(std::size_t i) const { return x3_min + dx3() * static_cast<double>(i); }
double SpacetimeGrid::xm_at(std::size_t j) const { return xm_min + dxm() * static_cast<double>(j); }
double SpacetimeGrid::dx3() const { return x3_steps > 1 ? (x3_max - x3_min) / static_cast<double>(x3_steps - 1) : 0.0; }
double SpacetimeGrid::dxm() const { return xm_steps > 1 ? (xm_max - xm_min) / static_cast<double>(xm_steps - 1) : 0.0; }

double slice_x1(const Wavepacket& wp, const SpacetimeGrid& grid, double x_minus) {
    if (grid.x1_rule == SpacetimeGrid::X1Rule::Constant) return grid.x1;
    if (!wp.field()) return 0.0;
    return -wp.field()->at(x_minus).I1 / wp.distribution().spec.P_minus;
}

unsigned resolve_workers(unsigned requested) {
    if (const char* env = std::getenv("VOLKOV_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void evaluate_rows(const Wavepacket& wp, const SpacetimeGrid& grid, unsigned workers, std::vector<double>& out) {
    out.assign(grid.xm_steps * grid.x3_steps, 0.0);
    parallel_for(grid.xm_steps, resolve_workers(workers), [&](std::size_t j) {
        const double xm = grid.xm_at(j);
        wp.density_row(xm, slice_x1(wp, grid, xm), grid.x3_min, grid.dx3(), grid.x3_steps,
                       out.data() + j * grid.x3_steps);
    });
}

ResolutionReport check_resolution(const Wavepacket& wp, const SpacetimeGrid& grid, double nodes_per_cycle) {
    ResolutionReport rep;
    const ModalDistribution& d = wp.distribution();
    const QuadratureRule qe = d.N.rule(wp.sizes().n_eta);
    const QuadratureRule qp = d.T.rule(wp.sizes().n_p1);
    const double eta0 = d.spec.mean_eta();

    double nmax = 0;
    for (double e : qe.nodes) nmax = std::max(nmax, std::abs(d.N(e)));
    std::vector<OnShellMomentum> eta_line, p1_line;
    for (double e : qe.nodes)
        if (std::abs(d.N(e)) >= kEffectiveSupport * nmax) eta_line.push_back(on_shell(d.spec, e, 0.0));
    const double tmax = d.T(0.0);
    for (double p : qp.nodes)
        if (d.T(p) >= kEffectiveSupport * tmax) p1_line.push_back(on_shell(d.spec, eta0, p));
    rep.eta_available = eta_line.size();
    rep.p1_available = p1_line.size();

    double pm_lo = INFINITY, pm_hi = -INFINITY;
    for (const auto& e : eta_line)
        for (const auto& p : p1_line) {
            const double pm = on_shell(d.spec, e.eta, p.p1).minus();
            pm_lo = std::min(pm_lo, pm);
            pm_hi = std::max(pm_hi, pm);
        }
    rep.dx3_limit = pm_hi > pm_lo ? std::numbers::pi / (pm_hi - pm_lo) : INFINITY;
    rep.grid_ok = grid.dx3() <= rep.dx3_limit;

    auto to_node = [](const OnShellMomentum& p) {
        MomentumNode k;
        k.eta = p.eta;
        k.p1 = p.p1;
        k.p3 = p.p3;
        k.E = p.E;
        k.pm = p.minus();
        return k;
    };
    double tv_eta = 0, tv_p1 = 0;
    const double xms[3] = {grid.xm_min, 0.5 * (grid.xm_min + grid.xm_max), grid.xm_max};
    const double x3s[3] = {grid.x3_min, 0.5 * (grid.x3_min + grid.x3_max), grid.x3_max};
    for (double xm : xms) {
        const FieldIntegrals::Values f = wp.field() ? wp.field()->at(xm) : FieldIntegrals::Values{};
        const double x1 = slice_x1(wp, grid, xm);
        for (double x3 : x3s) {
            const double x0 = xm + x3;
            auto variation = [&](const std::vector<OnShellMomentum>& line) {
                double tv = 0;
                for (std::size_t i = 1; i < line.size(); ++i)
                    tv += std::abs(wp.relative_phase(to_node(line[i]), x0, x1, x3, f) -
                                   wp.relative_phase(to_node(line[i - 1]), x0, x1, x3, f));
                return tv;
            };
            tv_eta = std::max(tv_eta, variation(eta_line));
            tv_p1 = std::max(tv_p1, variation(p1_line));
        }
    }
    rep.eta_required = static_cast<std::size_t>(std::ceil(nodes_per_cycle * tv_eta / kTwoPi));
    rep.p1_required = static_cast<std::size_t>(std::ceil(nodes_per_cycle * tv_p1 / kTwoPi));
    rep.nodes_ok = rep.eta_available >= rep.eta_required && rep.p1_available >= rep.p1_required;
    return rep;
}

namespace {

double probe_change(const Wavepacket& wp, const SpacetimeGrid& grid, const std::vector<double>& values,
                    std::vector<double>& rows_used) {
    const Wavepacket fine = wp.with_sizes({wp.sizes().n_eta * 2, wp.sizes().n_p1 * 2});
    const std::size_t rows[3] = {0, grid.xm_steps / 2, grid.xm_steps - 1};
    double worst = 0;
    rows_used.clear();
    for (std::size_t j : rows) {
        const double* row = values.data() + j * grid.x3_steps;
        const std::size_t i = static_cast<std::size_t>(std::max_element(row, row + grid.x3_steps) - row);
        const double xm = grid.xm_at(j), x3 = grid.x3_at(i);
        const FourVector x{xm + x3, slice_x1(wp, grid, xm), 0.0, x3};
        const double coarse = row[i];
        const double f = fine.density(x);
        worst = std::max(worst, std::abs(f - coarse) / std::max(std::abs(f), 1e-300));
        rows_used.push_back(xm);
    }
    return worst;
}

} // namespace

DensityField density_grid(const Wavepacket& wp_in, const SpacetimeGrid& grid, const DensityOptions& options) {
    if (grid.x3_steps < 3 || grid.xm_steps < 1) throw ValidationError("grid needs >= 3 x3 samples and >= 1 x_- sample");
    if (wp_in.field()) {
        if (!wp_in.field()->covers(grid.xm_min) || !wp_in.field()->covers(grid.xm_max))
            throw ValidationError("field cache does not cover the x_- range of the grid");
    }
    Wavepacket wp = wp_in;
    ResolutionReport rep = check_resolution(wp, grid);
    if (!rep.grid_ok)
        throw ResolutionError("x3 step " + std::to_string(grid.dx3()) + " exceeds limit " + std::to_string(rep.dx3_limit));
    if (options.enforce_nyquist && !rep.nodes_ok) {
        if (!options.auto_escalate)
            throw ResolutionError("quadrature below 8 nodes per 2 pi of phase variation (eta needs " +
                                  std::to_string(rep.eta_required) + ", p1 needs " + std::to_string(rep.p1_required) +
                                  ")");
        while (!rep.nodes_ok) {
            QuadratureSizes s = wp.sizes();
            if (rep.eta_available < rep.eta_required) s.n_eta *= 2;
            if (rep.p1_available < rep.p1_required) s.n_p1 *= 2;
            if (s.n_eta > options.max_nodes || s.n_p1 > options.max_nodes)
                throw ResolutionError("quadrature escalation exceeded the node cap");
            spdlog::info("escalating quadrature to {}x{}", s.n_eta, s.n_p1);
            wp = wp.with_sizes(s);
            rep = check_resolution(wp, grid);
        }
    }

    DensityField out;
    out.grid = grid;
    evaluate_rows(wp, grid, options.workers, out.values);
    if (options.convergence_probe) {
        out.probe_change = probe_change(wp, grid, out.values, out.probe_rows);
        while (options.auto_escalate && out.probe_change > 5e-3 && wp.sizes().n_eta * 2 <= options.max_nodes &&
               wp.sizes().n_p1 * 2 <= options.max_nodes) {
            wp = wp.with_sizes({wp.sizes().n_eta * 2, wp.sizes().n_p1 * 2});
            spdlog::info("convergence probe {:.3g}; escalating quadrature to {}x{}", out.probe_change, wp.sizes().n_eta,
                         wp.sizes().n_p1);
            evaluate_rows(wp, grid, options.workers, out.values);
            out.probe_change = probe_change(wp, grid, out.values, out.probe_rows);
        }
    }
    out.sizes = wp.sizes();
    out.resolution = check_resolution(wp, grid);
    return out;
}

PeakLocation peak_locate(const double* row, std::size_t n, double x3_start, double dx3) {
    if (n < 3) throw ValidationError("peak_locate needs at least three samples");
    const std::size_t k = static_cast<std::size_t>(std::max_element(row, row + n) - row);
    std::vector<double> tmp(row, row + n);
    std::nth_element(tmp.begin(), tmp.begin() + n / 2, tmp.end());
    const double median = tmp[n / 2];
    PeakLocation p;
    p.value = row[k];
    p.contrast = median > 0 ? row[k] / median : (row[k] > 0 ? INFINITY : 0.0);
    if (!(p.contrast >= 1.5)) throw FlatSlice("max/median contrast " + std::to_string(p.contrast));
    double off = 0.0;
    if (k > 0 && k + 1 < n) {
        const double a = row[k - 1], b = row[k], c = row[k + 1];
        const double den = a - 2 * b + c;
        if (den < 0) off = 0.5 * (a - c) / den;
    }
    p.x3 = x3_start + (static_cast<double>(k) + off) * dx3;
    return p;
}

PeakLocation peak_locate(const DensityField& field, double x_minus) {
    const SpacetimeGrid& g = field.grid;
    const double dxm = g.dxm();
    std::size_t j = 0;
    if (dxm > 0) {
        const double s = std::round((x_minus - g.xm_min) / dxm);
        if (s < 0 || s > static_cast<double>(g.xm_steps - 1)) throw ValidationError("x_- outside the density grid");
        j = static_cast<std::size_t>(s);
    }
    return peak_locate(field.row(j), g.x3_steps, g.x3_min, g.dx3());
}

double slice_norm(const Wavepacket& wp, double x_minus, double x1_min, double x1_max, std::size_t n1, double x3_min,
                  double x3_max, std::size_t n3) {
    const double d1 = (x1_max - x1_min) / static_cast<double>(n1 - 1);
    const double d3 = (x3_max - x3_min) / static_cast<double>(n3 - 1);
    std::vector<double> rows(n1 * n3);
    parallel_for(n1, resolve_workers(0), [&](std::size_t i) {
        wp.density_row(x_minus, x1_min + d1 * static_cast<double>(i), x3_min, d3, n3, rows.data() + i * n3);
    });
    double s = 0;
    for (double v : rows) s += v;
    return s * d1 * d3;
}

void check_paraxial(const Wavepacket& wp) {
    const CorrelationSpec& spec = wp.distribution().spec;
    const double eta = spec.mean_eta();
    const double kappa = 1.0 - spec.v_a * spec.v_a;
    const double D0 = eta * eta - kappa * kMass * kMass;
    if (!(D0 > 0.0)) throw ParaxialInvalid("no propagating axis mode at <eta>");
    const double bound = kappa == 0.0 ? INFINITY : D0 / std::abs(kappa);
    const double w = wp.distribution().T.w();
    if (1.0 / (w * w) > 0.01 * bound)
        throw ParaxialInvalid("<p1^2> = " + std::to_string(1.0 / (w * w)) + " exceeds 1% of " + std::to_string(bound));
}

ParaxialResult paraxial_envelope(const Wavepacket& wp, const FourVector& x) {
    check_paraxial(wp);
    const ModalDistribution& d = wp.distribution();
    const ReferencePoint ref = d.spec.reference();
    const FieldIntegrals::Values f = wp.field() ? wp.field()->at(x.minus()) : FieldIntegrals::Values{};
    const QuadratureRule qe = d.N.rule(wp.sizes().n_eta);
    const double w = d.T.w();
    const double tnorm = d.T(0.0);
    const Matrix4& dress = GammaBasis::dirac().dressing();
    cplx amp = 0;
    Bispinor spinor = Bispinor::Zero();
    for (std::size_t i = 0; i < qe.size(); ++i) {
        const double n = d.N(qe.nodes[i]);
        if (n == 0.0) continue;
        const OnShellMomentum p = on_shell(d.spec, qe.nodes[i], 0.0);
        const double pm = p.minus();
        const double J = std::abs(p.p3 / p.E - d.spec.v_a);
        const double a = 1.0 / (2.0 * (p.E * d.spec.v_a - p.p3));
        const double th0 = -(p.E - ref.E) * x.t + (p.p3 - ref.P3) * x.x3 - 0.5 * f.I2 * (1.0 / pm - 1.0 / ref.P_minus);
        const double beta = x.x1 + f.I1 / pm;
        const double alpha = a * (x.x3 - d.spec.v_a * x.t - (1.0 - d.spec.v_a) * f.I2 / (2.0 * pm * pm));
        const cplx c(w * w / 4.0, -alpha);
        const cplx G = tnorm * std::sqrt(std::numbers::pi / c) * std::exp(-beta * beta / (4.0 * c));
        const cplx term = qe.weights[i] * n / std::sqrt(J) * std::polar(1.0, th0) * G / kTwoPi;
        amp += term;
        const Bispinor u = free_spinor(p.four(), wp.spin());
        spinor += (u - dress * u * (f.eA1 / (2.0 * pm))) * (term / std::sqrt(2.0 * pm));
    }
    ParaxialResult r;
    r.amplitude = amp * wp.norm_scale();
    r.density = lightfront_density(spinor) * wp.norm_scale() * wp.norm_scale();
    return r;
}

} // namespace volkov
