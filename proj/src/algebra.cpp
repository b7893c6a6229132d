#include "volkov/algebra.hpp"
#include "volkov/errors.hpp"

#include <cmath>

namespace volkov {

double FourVector::operator[](int mu) const {
    switch (mu) {
    case 0: return t;
    case 1: return x1;
    case 2: return x2;
    default: return x3;
    }
}

double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3;
}

double metric(int mu, int nu) {
    if (mu != nu) return 0.0;
    return mu == 0 ? 1.0 : -1.0;
}

GammaBasis::GammaBasis() {
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd s1, s2, s3, id;
    s1 << 0, 1, 1, 0;
    s2 << 0, -i, i, 0;
    s3 << 1, 0, 0, -1;
    id.setIdentity();

    g_[0].setZero();
    g_[0].topLeftCorner<2, 2>() = id;
    g_[0].bottomRightCorner<2, 2>() = -id;
    const Eigen::Matrix2cd* sig[3] = {&s1, &s2, &s3};
    for (int k = 0; k < 3; ++k) {
        g_[k + 1].setZero();
        g_[k + 1].topRightCorner<2, 2>() = *sig[k];
        g_[k + 1].bottomLeftCorner<2, 2>() = -*sig[k];
    }
    minus_ = g_[0] - g_[3];
    kernel_ = g_[0] * minus_;
    dressing_ = minus_ * g_[1];
}

const GammaBasis& GammaBasis::dirac() {
    static const GammaBasis basis;
    return basis;
}

Matrix4 GammaBasis::slash(const FourVector& p) const {
    return g_[0] * p.t - g_[1] * p.x1 - g_[2] * p.x2 - g_[3] * p.x3;
}

Eigen::RowVector4cd dirac_adjoint(const Bispinor& psi) {
    return psi.adjoint() * GammaBasis::dirac()[0];
}

Bispinor free_spinor(const FourVector& p, Spin spin) {
    const double pm = p.minus();
    if (!(pm > 0.0)) throw ValidationError("free_spinor requires p_- > 0");
    const double E = p.t;
    const double m = kMass;
    const double norm = std::sqrt(E + m);
    const cplx c0 = spin == Spin::Up ? 1.0 : 0.0;
    const cplx c1 = spin == Spin::Up ? 0.0 : 1.0;
    const cplx pp(p.x1, p.x2), pn(p.x1, -p.x2);
    // sigma.p chi / (E + m)
    const cplx l0 = (p.x3 * c0 + pn * c1) / (E + m);
    const cplx l1 = (pp * c0 - p.x3 * c1) / (E + m);
    Bispinor u;
    u << norm * c0, norm * c1, norm * l0, norm * l1;
    return u;
}

Bispinor dressed_bispinor(const Bispinor& u, double p_minus, double eA1) {
    if (!(p_minus > 0.0)) throw ValidationError("dressed_bispinor requires p_- > 0");
    return u - GammaBasis::dirac().dressing() * u * (eA1 / (2.0 * p_minus));
}

double lightfront_density(const Bispinor& psi) {
    // gamma0 gamma_- = 1 - gamma0 gamma3 = [[1, -s3], [-s3, 1]] in this basis.
    const cplx a = psi[0] - psi[2];
    const cplx b = psi[1] + psi[3];
    return std::norm(a) + std::norm(b);
}

} // namespace volkov
