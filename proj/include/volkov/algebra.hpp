#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace volkov {

using cplx = std::complex<double>;

// Natural units: the lepton mass sets the scale.
inline constexpr double kMass = 1.0;
using Matrix4 = Eigen::Matrix4cd;
using Bispinor = Eigen::Vector4cd;

// Contravariant components (t, x1, x2, x3); metric diag(+,-,-,-).
struct FourVector {
    double t = 0, x1 = 0, x2 = 0, x3 = 0;

    double minus() const { return t - x3; }
    double operator[](int mu) const;

    FourVector operator+(const FourVector& o) const { return {t + o.t, x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    FourVector operator*(double s) const { return {t * s, x1 * s, x2 * s, x3 * s}; }
};

double minkowski_dot(const FourVector& a, const FourVector& b);

// Plane-wave propagation direction n = (1,0,0,1).
inline constexpr FourVector kNullDirection{1.0, 0.0, 0.0, 1.0};

double metric(int mu, int nu);

// Dirac (standard) representation: gamma0 = diag(1,1,-1,-1), gamma_i = [[0, s_i], [-s_i, 0]].
class GammaBasis {
public:
    static const GammaBasis& dirac();

    const Matrix4& operator[](int mu) const { return g_[mu]; }
    const Matrix4& minus() const { return minus_; }
    // Kernel of the light-front density, gamma0 * gamma_-.
    const Matrix4& density_kernel() const { return kernel_; }
    // gamma_- gamma_1, the matrix that dresses a free bispinor.
    const Matrix4& dressing() const { return dressing_; }
    Matrix4 slash(const FourVector& p) const;

private:
    GammaBasis();
    std::array<Matrix4, 4> g_;
    Matrix4 minus_, kernel_, dressing_;
};

Eigen::RowVector4cd dirac_adjoint(const Bispinor& psi);

enum class Spin { Up, Down };

// u(p) with u-bar gamma_- u = 2 p_-; throws ValidationError when p_- <= 0.
Bispinor free_spinor(const FourVector& p, Spin spin);

// [1 - gamma_- gamma_1 eA1 / (2 p_-)] u
Bispinor dressed_bispinor(const Bispinor& u, double p_minus, double eA1);

// psi^dagger gamma0 gamma_- psi
double lightfront_density(const Bispinor& psi);

} // namespace volkov
