#include "volkov/spectral.hpp"
#include "volkov/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>

namespace volkov {

namespace {

constexpr double kEnvelopeSupport = 30.0; // in units of width
constexpr std::size_t kTransformNodes = 512;
constexpr std::size_t kNormNodes = 2048;

double spectral_cutoff(double order) { return std::pow(80.0, 1.0 / order); }

} // namespace

EtaWeight::EtaWeight(double center, double width, double order, EtaShape shape)
    : center_(center), width_(width), order_(order), shape_(shape) {
    if (!(width > 0.0)) throw ValidationError("eta weight width must be > 0");
    if (!(order > 0.0)) throw ValidationError("eta weight order must be > 0");
    if (shape_ == EtaShape::Envelope) {
        const QuadratureRule q = gauss_legendre(kTransformNodes, 0.0, spectral_cutoff(order_));
        u_nodes_ = q.nodes;
        u_weights_.resize(q.size());
        for (std::size_t k = 0; k < q.size(); ++k)
            u_weights_[k] = q.weights[k] * std::exp(-0.5 * std::pow(q.nodes[k], order_)) / std::numbers::pi;
    }
    const double h = support_half_width();
    const QuadratureRule q = gauss_legendre(kNormNodes, -h, h);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double n = raw(q.nodes[i]);
        s += q.weights[i] * n * n;
    }
    scale_ = 1.0 / std::sqrt(s);
}

double EtaWeight::raw(double delta) const {
    const double x = delta / width_;
    if (shape_ == EtaShape::Spectral) return std::exp(-0.5 * std::pow(std::abs(x), order_));
    double s = 0.0;
    for (std::size_t k = 0; k < u_nodes_.size(); ++k) s += u_weights_[k] * std::cos(u_nodes_[k] * x);
    return s;
}

double EtaWeight::operator()(double eta) const {
    const double d = eta - center_;
    if (std::abs(d) > support_half_width()) return 0.0;
    return scale_ * raw(d);
}

double EtaWeight::support_half_width() const {
    return width_ * (shape_ == EtaShape::Spectral ? spectral_cutoff(order_) : kEnvelopeSupport);
}

QuadratureRule EtaWeight::rule(std::size_t n) const {
    const double h = support_half_width();
    return gauss_legendre(n, center_ - h, center_ + h);
}

double EtaWeight::second_moment_analytic() const {
    if (shape_ != EtaShape::Spectral) throw ValidationError("closed-form moment only for the spectral shape");
    return width_ * width_ * boost::math::tgamma(3.0 / order_) / boost::math::tgamma(1.0 / order_);
}

double envelope_calibration(EtaShape shape, double order) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(shape), order);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const EtaWeight N(0.0, 1.0, order, shape);
    const QuadratureRule q = N.rule(kNormNodes);
    auto transform = [&](double u) {
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * N(q.nodes[i]) * std::cos(u * q.nodes[i]);
        return s;
    };
    const double f0 = transform(0.0);
    auto level = [&](double u) {
        const double r = transform(u) / f0;
        return r * r - 0.9;
    };
    double hi = 0.05;
    while (level(hi) > 0.0) hi *= 1.25;
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(level, hi / 1.25, hi, boost::math::tools::eps_tolerance<double>(48),
                                                        iters);
    const double c = 0.5 * (root.first + root.second);
    cache.emplace(key, c);
    return c;
}

TransverseWeight::TransverseWeight(double w) : w_(w) {
    if (!(w > 0.0)) throw ValidationError("transverse width w must be > 0");
    norm_ = std::pow(w * w / (2.0 * std::numbers::pi), 0.25);
}

double TransverseWeight::operator()(double p1) const { return norm_ * std::exp(-w_ * w_ * p1 * p1 / 4.0); }

QuadratureRule TransverseWeight::rule(std::size_t n) const {
    const double h = support_half_width();
    return gauss_legendre(n, -h, h);
}

double jacobian_factor(const CorrelationSpec& spec, double eta, double p_perp) {
    const OnShellMomentum p = on_shell(spec, eta, p_perp);
    return std::sqrt(std::abs(p.p3 / p.E - spec.v_a));
}

MomentumMap momentum_density_map(const ModalDistribution& dist, double xi_star, const std::vector<double>& etas,
                                 const std::vector<double>& p1s) {
    MomentumMap map;
    map.rows.reserve(etas.size() * p1s.size());
    for (double eta : etas) {
        const double n = dist.N(eta);
        for (double p1 : p1s) {
            try {
                const OnShellMomentum p = on_shell(dist.spec, eta, p1);
                const DressedMomentum q = dressed_momentum(p.four(), xi_star);
                const double t = dist.T(p1);
                map.rows.push_back({eta, p1, q.q.x3 / q.q.minus(), n * n * t * t});
            } catch (const NumericalError&) {
                ++map.skipped;
            }
        }
    }
    if (map.skipped) spdlog::warn("momentum map: skipped {} evanescent or singular points", map.skipped);
    return map;
}

double ridge_q3_over_qminus(const ModalDistribution& dist, double xi_star, double p1) {
    const OnShellMomentum p = on_shell(dist.spec, dist.spec.mean_eta(), p1);
    const DressedMomentum q = dressed_momentum(p.four(), xi_star);
    return q.q.x3 / q.q.minus();
}

} // namespace volkov
