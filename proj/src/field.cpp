#include "volkov/field.hpp"
#include "volkov/errors.hpp"
#include "volkov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace volkov {

FieldProfile FieldProfile::constant(double xi_star) {
    FieldProfile p;
    p.kind = Kind::Constant;
    p.xi_star = xi_star;
    return p;
}

FieldProfile FieldProfile::super_gaussian(double xi_star, double fwhm, double order, double center) {
    if (!(fwhm > 0.0)) throw ValidationError("super-gaussian profile needs fwhm > 0");
    if (!(order > 0.0)) throw ValidationError("super-gaussian profile needs order > 0");
    FieldProfile p;
    p.kind = Kind::SuperGaussian;
    p.xi_star = xi_star;
    p.fwhm = fwhm;
    p.order = order;
    p.center = center;
    return p;
}

FieldProfile FieldProfile::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ValidationError("tabulated profile needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw ValidationError("tabulated profile abscissae must increase");
    for (const auto& s : samples)
        if (s.second < 0.0) throw ValidationError("tabulated profile values must be >= 0");
    FieldProfile p;
    p.kind = Kind::Tabulated;
    p.table = std::move(samples);
    p.xi_star = p.peak();
    return p;
}

double FieldProfile::operator()(double x) const {
    switch (kind) {
    case Kind::None: return 0.0;
    case Kind::Constant: return xi_star;
    case Kind::SuperGaussian: {
        const double z = std::abs(2.0 * (x - center) / fwhm);
        return xi_star * std::exp(-std::numbers::ln2 * std::pow(z, order));
    }
    case Kind::Tabulated: {
        if (x < table.front().first || x > table.back().first) return 0.0;
        auto it = std::upper_bound(table.begin(), table.end(), x,
                                   [](double v, const std::pair<double, double>& s) { return v < s.first; });
        if (it == table.end()) return table.back().second;
        auto lo = it - 1;
        const double t = (x - lo->first) / (it->first - lo->first);
        return lo->second + t * (it->second - lo->second);
    }
    }
    return 0.0;
}

double FieldProfile::peak() const {
    if (kind == Kind::None) return 0.0;
    if (kind != Kind::Tabulated) return xi_star;
    double m = 0.0;
    for (const auto& s : table) m = std::max(m, s.second);
    return m;
}

PlaneWaveField::PlaneWaveField(double omega, double phase, double charge_sign, FieldProfile profile)
    : omega_(omega), phase_(phase), sign_(charge_sign < 0 ? -1.0 : 1.0), profile_(std::move(profile)) {
    if (!(omega > 0.0)) throw ValidationError("field frequency must be > 0");
}

double PlaneWaveField::potential(double x) const {
    if (profile_.kind == FieldProfile::Kind::None) return 0.0;
    return profile_(x) * std::cos(omega_ * x + phase_);
}

double PlaneWaveField::period() const { return 2.0 * std::numbers::pi / omega_; }

double PlaneWaveField::slowly_varying_ratio(double a, double b) const {
    const double peak = profile_.peak();
    if (!(peak > 0.0) || profile_.kind == FieldProfile::Kind::Constant) return 0.0;
    const double T = period();
    const std::size_t n = static_cast<std::size_t>(std::clamp((b - a) / (T / 8.0), 16.0, 2.0e6));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        worst = std::max(worst, std::abs(profile_(x + T / 2) - profile_(x - T / 2)) / peak);
    }
    return worst;
}

namespace {

constexpr int kCellNodes = 6;

// Hermite cubic on [0,1] for values y0,y1 and slopes d0,d1 (already scaled by h).
inline double hermite(double t, double y0, double y1, double d0, double d1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
}

} // namespace

FieldIntegrals::FieldIntegrals(const PlaneWaveField& field, double x_min, double x_max, int samples_per_period)
    : field_(field), active_(field.active()) {
    if (!active_) return;
    if (samples_per_period < 64) throw ValidationError("field cache needs >= 64 samples per period");
    if (!(x_max > x_min)) throw ValidationError("field cache range is empty");
    x_min = std::min(x_min, 0.0);
    x_max = std::max(x_max, 0.0);
    h_ = field.period() / samples_per_period;
    const long i_lo = static_cast<long>(std::floor(x_min / h_)) - 2;
    const long i_hi = static_cast<long>(std::ceil(x_max / h_)) + 2;
    n_ = static_cast<std::size_t>(i_hi - i_lo + 1);
    x0_ = static_cast<double>(i_lo) * h_;
    const std::size_t zero = static_cast<std::size_t>(-i_lo);

    f1_.resize(n_);
    f2_.resize(n_);
    f3_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const double x = x0_ + h_ * static_cast<double>(i);
        const double a = field.eA1(x);
        const double xi = field.envelope(x);
        f1_[i] = a;
        f2_[i] = a * a;
        f3_[i] = 0.5 * xi * xi;
    }

    const QuadratureRule cell = gauss_legendre(kCellNodes, 0.0, h_);
    auto cell_integral = [&](std::size_t i) {
        double s1 = 0, s2 = 0, s3 = 0;
        const double xl = x0_ + h_ * static_cast<double>(i);
        for (int k = 0; k < kCellNodes; ++k) {
            const double x = xl + cell.nodes[k];
            const double a = field.eA1(x);
            const double xi = field.envelope(x);
            s1 += cell.weights[k] * a;
            s2 += cell.weights[k] * a * a;
            s3 += cell.weights[k] * 0.5 * xi * xi;
        }
        return std::array<double, 3>{s1, s2, s3};
    };

    I1_.assign(n_, 0.0);
    I2_.assign(n_, 0.0);
    I2bar_.assign(n_, 0.0);
    for (std::size_t i = zero; i + 1 < n_; ++i) {
        const auto s = cell_integral(i);
        I1_[i + 1] = I1_[i] + s[0];
        I2_[i + 1] = I2_[i] + s[1];
        I2bar_[i + 1] = I2bar_[i] + s[2];
    }
    for (std::size_t i = zero; i > 0; --i) {
        const auto s = cell_integral(i - 1);
        I1_[i - 1] = I1_[i] - s[0];
        I2_[i - 1] = I2_[i] - s[1];
        I2bar_[i - 1] = I2bar_[i] - s[2];
    }
}

bool FieldIntegrals::covers(double x) const {
    if (!active_) return true;
    return x >= x_min() && x <= x_max();
}

FieldIntegrals::Values FieldIntegrals::at(double x) const {
    if (!active_) return {};
    if (!covers(x)) throw ValidationError("field integral query outside cached range");
    const double s = (x - x0_) / h_;
    std::size_t i = static_cast<std::size_t>(std::floor(s));
    if (i >= n_ - 1) i = n_ - 2;
    const double t = s - static_cast<double>(i);
    Values v;
    v.I1 = hermite(t, I1_[i], I1_[i + 1], h_ * f1_[i], h_ * f1_[i + 1]);
    v.I2 = hermite(t, I2_[i], I2_[i + 1], h_ * f2_[i], h_ * f2_[i + 1]);
    v.I2bar = hermite(t, I2bar_[i], I2bar_[i + 1], h_ * f3_[i], h_ * f3_[i + 1]);
    v.eA1 = field_.eA1(x);
    return v;
}

std::pair<double, double> field_integrals(const FieldIntegrals& cache, double x) {
    const auto v = cache.at(x);
    return {v.I1, v.I2};
}

double action(const FourVector& p, const FourVector& x, const FieldIntegrals* cache) {
    const double pm = p.minus();
    if (!(pm > 0.0)) throw ValidationError("action requires p_- > 0");
    double s = -minkowski_dot(p, x);
    if (cache) {
        const auto v = cache->at(x.minus());
        s += (p.x1 * v.I1 - 0.5 * v.I2) / pm;
    }
    return s;
}

double cycle_average(const std::function<double(double)>& f, double x, double omega) {
    if (!(omega > 0.0)) throw ValidationError("cycle_average requires omega > 0");
    const double half = std::numbers::pi / omega;
    const QuadratureRule q = gauss_legendre(64, x - half, x + half);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
    return s / (2.0 * half);
}

} // namespace volkov
