#include "doctest.h"

#include "msf/gammafn.hpp"
#include "msf/quadrature.hpp"
#include "msf/whittaker.hpp"
#include "msf/zetafn.hpp"
#include <cmath>

using namespace msf;

TEST_CASE("gamma values and poles") {
    CHECK(std::abs(gamma_strict(1.0) - 1.0) < 1e-14);
    CHECK(std::abs(gamma_strict(0.5) - std::sqrt(M_PI)) < 1e-13);
    GammaValue g = gamma_complex(-2.0);
    CHECK(g.pole);
    CHECK(g.pole_k == 2);
    CHECK(std::abs(g.residue - cplx(0.5)) < 1e-15);
}

TEST_CASE("gamma reflection and recurrence on a grid") {
    for (double re = -3.3; re < 4.0; re += 0.7) {
        for (double im = -2.0; im < 2.5; im += 0.9) {
            cplx s(re, im);
            cplx refl = gamma_strict(s) * gamma_strict(1.0 - s) * std::sin(M_PI * s) / M_PI;
            CHECK(std::abs(refl - 1.0) < 1e-10);
            cplx rec = gamma_strict(s + 1.0) - s * gamma_strict(s);
            CHECK(std::abs(rec) < 1e-12 * std::abs(gamma_strict(s + 1.0)));
        }
    }
}

TEST_CASE("hurwitz zeta against classical values") {
    CHECK(std::abs(riemann_zeta(2.0) - M_PI * M_PI / 6.0) < 1e-13);
    CHECK(std::abs(riemann_zeta(4.0) - std::pow(M_PI, 4) / 90.0) < 1e-13);
    // zeta(s,1/2) = (2^s - 1) zeta(s)
    cplx s(1.7, 0.4);
    cplx lhs = hurwitz_zeta(s, 0.5);
    cplx rhs = (std::pow(cplx(2.0), s) - 1.0) * riemann_zeta(s);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("kronecker and jacobi symbols") {
    // (2/7) = 1 by Euler criterion, (3/5) = -1 by enumeration
    CHECK(jacobi_symbol(2, 7) == 1);
    CHECK(jacobi_symbol(3, 5) == -1);
    // brute Euler criterion oracle on odd primes
    for (long long p : {3, 5, 7, 11, 13}) {
        for (long long a = 1; a < p; ++a) {
            long long pw = 1;
            for (long long i = 0; i < (p - 1) / 2; ++i) pw = pw * a % p;
            int euler = pw == 1 ? 1 : -1;
            CHECK(jacobi_symbol(a, p) == euler);
        }
    }
    CHECK(kronecker_symbol(-4, 1) == 1);
    CHECK(kronecker_symbol(-4, 3) == -1);
    CHECK(kronecker_symbol(8, 3) == -1);
    CHECK(fundamental_discriminant(4) == 1);
    CHECK(fundamental_discriminant(-4) == -4);
    CHECK(fundamental_discriminant(8) == 8);
    CHECK(fundamental_discriminant(12) == 12); // Q(sqrt(12)) = Q(sqrt(3)), disc 12
}

TEST_CASE("L(1, chi_{-4}) = pi/4 via Hurwitz route (real part at s near 1)") {
    // avoid s = 1 pole machinery: chi_{-4} is non-principal so L is regular
    cplx L = dirichlet_L_kronecker(1.0 + 1e-9, -4);
    CHECK(std::abs(L - M_PI / 4.0) < 1e-7);
    cplx L2 = dirichlet_L_kronecker(2.0, -4); // Catalan's constant
    CHECK(std::abs(L2 - 0.915965594177219015) < 1e-12);
}

TEST_CASE("whittaker closed forms") {
    CHECK(std::abs(whittaker_w(0.0, 0.5, 2.0) - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(whittaker_w(1.0, 0.5, 1.0) - std::exp(-0.5)) < 1e-12);
}

TEST_CASE("whittaker against the integral representation and recurrence") {
    // W_{0,nu}(2x) = sqrt(2x/pi) K_nu(x); check against K_{1/3} special value
    // via the ODE residual instead: W'' + (-1/4 + mu/x + (1/4-nu^2)/x^2) W = 0
    for (cplx mu : {cplx(0.25), cplx(-0.5), cplx(1.0)}) {
        cplx nu(0.4, 0.0);
        for (double x = 0.5; x <= 40.0; x *= 2.3) {
            double h = 1e-3 * x;
            cplx w0 = whittaker_w(mu, nu, x);
            cplx wp = whittaker_w(mu, nu, x + h);
            cplx wm = whittaker_w(mu, nu, x - h);
            cplx d2 = (wp - 2.0 * w0 + wm) / (h * h);
            cplx res = d2 + (-0.25 + mu / x + (0.25 - nu * nu) / (x * x)) * w0;
            CHECK(std::abs(res) < 1e-4 * std::abs(w0) / (h * h) * 1e-8 + 1e-4 * std::abs(w0));
        }
    }
}

TEST_CASE("whittaker leading asymptotics") {
    cplx mu(0.25), nu(0.4);
    double x = 50.0;
    cplx ratio = whittaker_w(mu, nu, x) / (std::pow(cplx(x), mu) * std::exp(-x / 2.0));
    CHECK(std::abs(ratio - 1.0) < 0.03);
}

TEST_CASE("fourier_integral on classical transforms") {
    QuadratureSpec spec;
    DecayHint gauss{DecayHint::Kind::GaussianLike, 2.0, 1.0};
    auto g = [](double x) { return cplx(std::exp(-M_PI * x * x)); };
    QuadResult r0 = fourier_integral(g, 0.0, gauss, spec);
    CHECK(std::abs(r0.value - 1.0) < 1e-10);
    QuadResult r1 = fourier_integral(g, 1.0, gauss, spec);
    CHECK(std::abs(r1.value - std::exp(-M_PI)) < 1e-10);

    DecayHint lorentz{DecayHint::Kind::Algebraic, 2.0, 1.0};
    auto f = [](double x) { return cplx(1.0 / (1.0 + x * x)); };
    QuadResult r2 = fourier_integral(f, 1.0, lorentz, spec);
    CHECK(std::abs(r2.value - M_PI * std::exp(-2.0 * M_PI)) < 1e-8);
    QuadResult r3 = fourier_integral(f, -0.25, lorentz, spec);
    CHECK(std::abs(r3.value - M_PI * std::exp(-2.0 * M_PI * 0.25)) < 1e-8);
}

TEST_CASE("levin acceleration of an alternating algebraic series") {
    std::vector<cplx> terms;
    for (int n = 1; n <= 24; ++n)
        terms.push_back(cplx((n % 2 ? 1.0 : -1.0) / double(n * n)));
    QuadResult r = levin_sum(terms);
    CHECK(std::abs(r.value - M_PI * M_PI / 12.0) < 1e-12);
}

TEST_CASE("fft grid transform matches the direct integral") {
    // m-reduced Gaussian-like decay function: exp(-pi x^2) itself
    auto g = [](double x) { return cplx(std::exp(-M_PI * x * x)); };
    auto grid = fourier_uniform_grid(g, 16.0, 2048);
    for (int j : {1, 5, 32, 200}) {
        double t = j / 32.0;
        CHECK(std::abs(grid[size_t(j)] - std::exp(-M_PI * t * t)) < 1e-12);
    }
}
