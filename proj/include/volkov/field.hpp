#pragma once

#include "volkov/algebra.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace volkov {

// Envelope xi(x_-) in units of |e| xi / m.
struct FieldProfile {
    enum class Kind { None, Constant, SuperGaussian, Tabulated };

    Kind kind = Kind::None;
    double xi_star = 0.0;
    double fwhm = 0.0;
    double order = 2.0;
    double center = 0.0;
    std::vector<std::pair<double, double>> table; // (x_-, xi), ascending x_-

    static FieldProfile none() { return {}; }
    static FieldProfile constant(double xi_star);
    static FieldProfile super_gaussian(double xi_star, double fwhm, double order = 2.0, double center = 0.0);
    static FieldProfile tabulated(std::vector<std::pair<double, double>> samples);

    double operator()(double x_minus) const;
    double peak() const;
};

class PlaneWaveField {
public:
    PlaneWaveField() = default;
    PlaneWaveField(double omega, double phase, double charge_sign, FieldProfile profile);

    double omega() const { return omega_; }
    double phase() const { return phase_; }
    double charge_sign() const { return sign_; }
    const FieldProfile& profile() const { return profile_; }
    bool active() const { return profile_.kind != FieldProfile::Kind::None && profile_.peak() > 0.0; }

    double envelope(double x_minus) const { return profile_(x_minus); }
    // A1 in units of |e|: xi(x_-) cos(omega x_- + phi).
    double potential(double x_minus) const;
    double eA1(double x_minus) const { return sign_ * potential(x_minus); }
    double period() const;

    // Largest relative envelope change per carrier cycle over [a, b].
    double slowly_varying_ratio(double a, double b) const;

private:
    double omega_ = 0.01;
    double phase_ = 0.0;
    double sign_ = -1.0;
    FieldProfile profile_;
};

// Cumulative integrals from 0: I1 = int eA1, I2 = int (eA1)^2 and the cycle-averaged
// I2bar = int e^2 xi^2 / 2. Cubic Hermite interpolation on a uniform grid.
class FieldIntegrals {
public:
    struct Values {
        double I1 = 0, I2 = 0, I2bar = 0, eA1 = 0;
    };

    FieldIntegrals() = default;
    FieldIntegrals(const PlaneWaveField& field, double x_min, double x_max, int samples_per_period = 256);

    Values at(double x_minus) const;
    bool covers(double x_minus) const;
    double x_min() const { return x0_; }
    double x_max() const { return x0_ + h_ * static_cast<double>(n_ - 1); }
    const PlaneWaveField& field() const { return field_; }

private:
    PlaneWaveField field_;
    bool active_ = false;
    double x0_ = 0, h_ = 1;
    std::size_t n_ = 0;
    std::vector<double> I1_, I2_, I2bar_, f1_, f2_, f3_;
};

std::pair<double, double> field_integrals(const FieldIntegrals& cache, double x_minus);

// S = -p.x + [p1 I1(x_-) - I2(x_-)/2] / p_-; null cache pointer means field off.
double action(const FourVector& p, const FourVector& x, const FieldIntegrals* cache);

// (omega / 2 pi) times the integral of f over one period centred on x_minus.
double cycle_average(const std::function<double(double)>& f, double x_minus, double omega);

} // namespace volkov
