#include "volkov/algebra.hpp"
#include "volkov/errors.hpp"

#include <doctest.h>

#include <random>

using namespace volkov;

TEST_CASE("gamma matrices obey the Clifford algebra") {
    const GammaBasis& G = GammaBasis::dirac();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Matrix4 ac = G[a] * G[b] + G[b] * G[a];
            CHECK((ac - 2.0 * metric(a, b) * Matrix4::Identity()).norm() == doctest::Approx(0.0));
        }
    CHECK((G.minus() * G.minus()).norm() == 0.0);
    CHECK((G.minus() - (G[0] - G[3])).norm() == 0.0);
}

TEST_CASE("dressed bispinor keeps the light-front normalisation") {
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> mom(-5.0, 5.0), pot(-10.0, 10.0);
    const GammaBasis& G = GammaBasis::dirac();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double p1 = mom(rng), p2 = mom(rng), p3 = mom(rng);
        const FourVector p{std::sqrt(kMass * kMass + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3};
        const Spin s = i % 2 ? Spin::Up : Spin::Down;
        const Bispinor V = dressed_bispinor(free_spinor(p, s), p.minus(), pot(rng));
        const cplx n = (dirac_adjoint(V) * G.minus() * V)(0, 0);
        worst = std::max(worst, std::abs(n - 2.0 * p.minus()) / (2.0 * p.minus()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("free spinor solves the Dirac equation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mom(-20.0, 20.0);
    const GammaBasis& G = GammaBasis::dirac();
    for (int i = 0; i < 200; ++i) {
        const double p1 = mom(rng), p2 = mom(rng), p3 = mom(rng);
        const FourVector p{std::sqrt(1.0 + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3};
        for (Spin s : {Spin::Up, Spin::Down}) {
            const Bispinor u = free_spinor(p, s);
            const double residual = ((G.slash(p) - kMass * Matrix4::Identity()) * u).norm() / u.norm();
            CHECK(residual < 1e-12);
        }
    }
}

TEST_CASE("light-front density equals psi-bar gamma_- psi") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    const GammaBasis& G = GammaBasis::dirac();
    for (int i = 0; i < 50; ++i) {
        Bispinor psi;
        for (int c = 0; c < 4; ++c) psi[c] = cplx(g(rng), g(rng));
        const double direct = (dirac_adjoint(psi) * G.minus() * psi)(0, 0).real();
        CHECK(lightfront_density(psi) == doctest::Approx(direct).epsilon(1e-13));
        CHECK(lightfront_density(psi) >= 0.0);
    }
}

TEST_CASE("spinor is real for p2 = 0 and rejects p_- <= 0") {
    const Bispinor u = free_spinor({std::sqrt(1.0 + 0.09 + 1.0), 0.3, 0.0, -1.0}, Spin::Up);
    CHECK(u.imag().norm() == 0.0);
    CHECK_THROWS_AS(free_spinor({0.0, 0.0, 0.0, 0.0}, Spin::Up), ValidationError);
}

TEST_CASE("minkowski product uses the mostly-minus metric") {
    const FourVector a{2, 1, 0, 1}, b{1, 0, 3, 1};
    CHECK(minkowski_dot(a, b) == doctest::Approx(1.0));
    CHECK(minkowski_dot(kNullDirection, kNullDirection) == 0.0);
    CHECK(minkowski_dot(a, kNullDirection) == doctest::Approx(a.minus()));
}
