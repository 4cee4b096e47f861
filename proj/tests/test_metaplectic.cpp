#include "doctest.h"

#include "msf/metaplectic.hpp"
#include "msf/theta.hpp"
#include <cmath>

using namespace msf;

namespace {

GTildeElement tilde_n(const Rat& x) { return lift(LiftKind::n, x); }
GTildeElement tilde_nbar(const Rat& x) { return lift(LiftKind::nbar, x); }
GTildeElement tilde_w() { return lift_wN(1); }

Mat2 int_mat(long long a, long long b, long long c, long long d) {
    return {QuadExt(Rat(a)), QuadExt(Rat(b)), QuadExt(Rat(c)), QuadExt(Rat(d))};
}

} // namespace

TEST_CASE("cocycle sign table basics") {
    Mat2 n1 = int_mat(1, 1, 0, 1);
    Mat2 w = int_mat(0, -1, 1, 0);
    CHECK(cocycle_sigma(n1, n1) == 1);
    CHECK(cocycle_sigma(w, w) == 1);
    CHECK(cocycle_sigma(w, w.inverse_unimodular()) == 1);
    // w~ * w~ = [-1_2, 1]
    GTildeElement ww = mul(tilde_w(), tilde_w());
    CHECK(ww.g == -Mat2::identity());
    CHECK(ww.xi == Mu4::one());
}

TEST_CASE("group unit, inverses, central elements") {
    GTildeElement e = GTildeElement::identity();
    GTildeElement x = mul(tilde_n(Rat(3, 2)), tilde_w());
    CHECK(mul(e, x) == x);
    CHECK(mul(x, inv(x)) == e);
    GTildeElement zi{Mat2::identity(), Mu4::i()};
    CHECK(inv(zi).xi == Mu4(-1));
    CHECK(inv(tilde_n(Rat(5))) == tilde_n(Rat(-5)));
    CHECK(mul(tilde_w(), inv(tilde_w())) == e);
}

TEST_CASE("identities (1.10)-(1.12)") {
    // w~ n(x) w~^{-1} = nbar(-x)
    for (Rat x : {Rat(3, 2), Rat(-7, 3), Rat(1)}) {
        GTildeElement lhs = mul(mul(tilde_w(), tilde_n(x)), inv(tilde_w()));
        CHECK(lhs == tilde_nbar(-x));
    }
    // w~_N = w~ d~(sqrt N) and w~_N w~^{-1} = d~(1/sqrt N)
    for (long long N : {1, 2, 3, 4, 5, 12}) {
        GTildeElement lhs = mul(tilde_w(), lift_d(QuadExt::sqrt_of(N)));
        CHECK(lhs == lift_wN(N));
        GTildeElement lhs2 = mul(lift_wN(N), inv(tilde_w()));
        CHECK(lhs2 == lift_d(QuadExt::sqrt_of(N).inverse()));
    }
    // N = 4: the matrix of w~_4 is rational
    GTildeElement w4 = lift_wN(4);
    CHECK(w4.g.c == QuadExt(Rat(2)));
    CHECK(w4.xi == Mu4::one());
}

TEST_CASE("conjugation identity (1.13) with the sign rule") {
    for (long long N : {1LL, 2LL, 4LL, 5LL}) {
        Gamma0Sampler sam(N, 4000, 20260809 + (unsigned long long)N);
        GTildeElement wN = lift_wN(N);
        for (int trial = 0; trial < 25; ++trial) {
            Mat2 g = sam.next();
            for (int xipow : {0, 1, 2, 3}) {
                GTildeElement gt{g, Mu4(xipow)};
                GTildeElement lhs = mul(mul(inv(wN), gt), wN);
                long long a = to_int64(g.a.a()), b = to_int64(g.b.a());
                long long cN = to_int64(g.c.a());
                long long d = to_int64(g.d.a());
                REQUIRE(cN % N == 0);
                long long c = cN / N;
                Mat2 conj = int_mat(d, -c, -b * N, a);
                int sigma = ((a < 0 && b > 0 && c >= 0) || (a < 0 && b <= 0 && c < 0)) ? -1 : 1;
                CHECK(lhs.g == conj);
                CHECK(lhs.xi == Mu4(xipow) * Mu4::from_sign(sigma));
            }
        }
    }
}

TEST_CASE("cocycle associativity on random lifted words") {
    for (long long N : {1LL, 3LL, 4LL}) {
        Gamma0Sampler sam(N, 100000, 99 + (unsigned long long)N);
        for (int trial = 0; trial < 340; ++trial) {
            GTildeElement a{sam.next(), Mu4(int(trial % 4))};
            GTildeElement b = mul(lift_wN(N), GTildeElement{sam.next(), Mu4::one()});
            GTildeElement c = mul(GTildeElement{sam.next(), Mu4(3)}, lift_wN(N));
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            CHECK(mul(a, b).g == a.g * b.g);
        }
    }
}

TEST_CASE("epsilon_d and the extended quadratic symbol") {
    CHECK(epsilon_d(1) == Mu4::one());
    CHECK(epsilon_d(3) == Mu4::i());
    CHECK(epsilon_d(-1) == Mu4::i());
    CHECK_THROWS(epsilon_d(2));
    CHECK(quad_symbol(2, 7) == 1);
    CHECK(quad_symbol(5, 1) == 1);
    CHECK(quad_symbol(0, 1) == 1);
    CHECK(quad_symbol(0, -1) == 1);
    CHECK(quad_symbol(3, 5) == -1);
}

TEST_CASE("gamma_star values and the homomorphism property") {
    CHECK(gamma_star(Mat2::identity()) == GTildeElement::identity());
    GTildeElement minus = gamma_star(-Mat2::identity());
    CHECK(minus.xi == Mu4(-1)); // [-1_2, -i]
    CHECK(gamma_star(int_mat(1, 0, 4, 1)).xi == Mu4::one());

    Gamma0Sampler sam(4, 2000000, 4242);
    for (int trial = 0; trial < 500; ++trial) {
        Mat2 g1 = sam.next(), g2 = sam.next();
        GTildeElement lhs = gamma_star(g1 * g2);
        GTildeElement rhs = mul(gamma_star(g1), gamma_star(g2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("theta series basics") {
    // direct-summation oracle values; theta(i/2) carries the classical
    // pi^{1/4}/Gamma(3/4) nome-e^{-pi} value in this normalization
    cplx ti = theta_series({0.0, 1.0}, 40);
    CHECK(std::abs(ti - 1.0037348854877390910) < 1e-12);
    cplx th = theta_series({0.0, 0.5}, 40);
    CHECK(std::abs(th - 1.0864348112133080146) < 1e-12);
    cplx z(0.3, 0.7);
    CHECK(std::abs(theta_series(z + 1.0, 40) - theta_series(z, 40)) < 1e-14);
    CHECK(std::abs(theta_series({0.0, 40.0}, 10) - 1.0) < 1e-14);
    CHECK_THROWS(theta_series({0.0, 1.0}, 0));
}

TEST_CASE("theta multiplier closed form vs quotient oracle") {
    CHECK(std::abs(theta_multiplier(int_mat(1, 1, 0, 1), {0.3, 0.8}) - 1.0) < 1e-14);
    cplx j41 = theta_multiplier(int_mat(1, 0, 4, 1), {0.0, 1.0});
    CHECK(std::abs(j41 - std::sqrt(cplx(1.0, 4.0))) < 1e-14);

    Gamma0Sampler sam(4, 40, 1234);
    std::vector<cplx> zs = {{0.0, 1.0}, {0.3, 0.9}, {-0.4, 2.0}};
    int tested = 0;
    for (int trial = 0; trial < 4000 && tested < 50; ++trial) {
        Mat2 g = sam.next();
        if (abs(rat_num(g.c.a())) > 40) continue;
        ++tested;
        for (cplx z : zs) {
            cplx gz = moebius(g, z);
            int terms = theta_terms_for_tail(std::min(z.imag(), gz.imag()));
            cplx quotient = theta_series(gz, terms) / theta_series(z, terms);
            CHECK(std::abs(theta_multiplier(g, z) - quotient) < 1e-8);
        }
    }
    CHECK(tested == 50);
}

TEST_CASE("slash operator: identity, cocycle, Weyl image of y^(lambda-ell/4)") {
    auto F = [](cplx z) { return std::sin(z) + 2.0 * std::cos(0.3 * z); };
    cplx z(0.37, 1.21);
    CHECK(std::abs(slash(F, 3, GTildeElement::identity(), z) - F(z)) < 1e-15);

    Gamma0Sampler sam(1, 500, 5150);
    for (int ell : {0, 1, 2, 3}) {
        for (int trial = 0; trial < 12; ++trial) {
            GTildeElement g1{sam.next(), Mu4(trial % 4)};
            GTildeElement g2 = mul(lift_wN(1), GTildeElement{sam.next(), Mu4::one()});
            GTildeElement g12 = mul(g1, g2);
            auto F1 = [&](cplx zz) { return slash(F, ell, g1, zz); };
            cplx lhs = slash(F, ell, g12, z);
            cplx rhs = slash(F1, ell, g2, z);
            CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
        }
    }

    // F = y^{lambda-ell/4} slashed by w~ gives the Poisson kernel at u = 0
    cplx lambda(0.8, 0.1);
    auto Fy = [&](cplx zz) { return std::exp((lambda - 0.5) * std::log(zz.imag())); };
    cplx got = slash(Fy, 2, tilde_w(), z);
    cplx q0 = std::exp((lambda - 0.5) * std::log(z.imag())) *
              std::exp(-(2.0 * lambda - 1.0) * std::log(std::abs(z))) / z;
    CHECK(std::abs(got - q0) < 1e-13);
}

TEST_CASE("random_gamma0 closure") {
    for (long long N : {1LL, 4LL}) {
        Gamma0Sampler sam(N, 100000, 31337);
        for (int trial = 0; trial < 1000; ++trial) {
            Mat2 g = sam.next();
            CHECK(g.det() == QuadExt(Rat(1)));
            CHECK(mod_euclid(rat_num(g.c.a()), Int(N)) == 0);
        }
    }
}
