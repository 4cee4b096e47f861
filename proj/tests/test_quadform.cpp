#include "doctest.h"

#include "msf/coeffs.hpp"
#include "msf/quadform.hpp"
#include "msf/zetafn.hpp"
#include <cmath>
#include <cstdio>
#include <numeric>

using namespace msf;

namespace {

RatMatrix mat1(long long a) { return {{Rat(a)}}; }

RatMatrix diag2(long long a, long long b) {
    return {{Rat(a), Rat(0)}, {Rat(0), Rat(b)}};
}

// brute-force count over (Z/l)^m for the oracle
long long enum_r(const QuadraticFormData& qf, long long l, long long n) {
    int m = qf.m;
    std::vector<long long> v(size_t(m), 0);
    long long cnt = 0;
    for (;;) {
        Rat val(0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                val += Rat(v[size_t(i)]) * qf.A[size_t(i)][size_t(j)] * Rat(v[size_t(j)]);
        if (mod_euclid(rat_num(val) - n, Int(l)) == 0) ++cnt;
        int i = 0;
        for (; i < m; ++i) {
            if (++v[size_t(i)] < l) break;
            v[size_t(i)] = 0;
        }
        if (i == m) break;
    }
    return cnt;
}

} // namespace

TEST_CASE("analyze: invariants of the canonical forms") {
    QuadraticFormData q1 = analyze(mat1(1));
    CHECK(q1.m == 1);
    CHECK(q1.D == 2);
    CHECK(q1.p == 1);
    CHECK(q1.q == 0);
    CHECK(q1.N == 4);

    QuadraticFormData q2 = analyze(mat1(2));
    CHECK(q2.D == 4);
    CHECK(q2.N == 8);

    QuadraticFormData qi = analyze(diag2(1, -1));
    CHECK(qi.D == -4);
    CHECK(qi.p == 1);
    CHECK(qi.q == 1);
    CHECK(qi.N == 4);

    // off-diagonal half-integers are fine; thirds are not
    QuadraticFormData qh = analyze({{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}});
    CHECK(qh.D == 3);
    CHECK(qh.N == 3);
    CHECK_THROWS(analyze({{Rat(1), Rat(1, 3)}, {Rat(1, 3), Rat(1)}}));
    CHECK_THROWS(analyze(diag2(1, 0)));
}

TEST_CASE("analyze: form file parsing") {
    QuadraticFormData qf = analyze_form_file("m = 2\n1 1/2\n1/2 1\n");
    CHECK(qf.D == 3);
    CHECK_THROWS(analyze_form_file("m = 2\n1 1\n"));
    CHECK_THROWS(analyze_form_file("1 0\n0 1\n"));
}

TEST_CASE("r_count spot values") {
    QuadraticFormData q1 = analyze(mat1(1));
    CHECK(r_count(q1, 4, 1) == 2);
    CHECK(r_count(q1, 1, 7) == 1);
    CHECK(r_count(q1, 6, 3) == 1);
    CHECK(r_count(q1, 2, 3) == 1);
    CHECK(r_count(q1, 3, 3) == 1);
}

TEST_CASE("r_count against enumeration, all forms, l <= 30") {
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1)),
                               RatMatrix{{Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}}) {
        QuadraticFormData qf = analyze(A);
        for (long long l = 1; l <= 30; ++l)
            for (long long n : {0LL, 1LL, 2LL, 3LL, 5LL, -1LL, 12LL})
                CHECK(r_count(qf, l, n) == enum_r(qf, l, n));
    }
}

TEST_CASE("CRT multiplicativity, exhaustive to 30") {
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1))}) {
        QuadraticFormData qf = analyze(A);
        for (long long l1 = 1; l1 <= 30; ++l1)
            for (long long l2 = 1; l1 * l2 <= 30; ++l2) {
                if (std::gcd(l1, l2) != 1) continue;
                for (long long n : {0LL, 1LL, 3LL, -2LL})
                    CHECK(r_count(qf, l1 * l2, n) == r_count(qf, l1, n) * r_count(qf, l2, n));
            }
    }
}

TEST_CASE("Hensel stabilization at good primes") {
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1))}) {
        QuadraticFormData qf = analyze(A);
        long long g = 1;
        for (int i = 0; i < qf.m - 1; ++i) g *= 1; // p^{m-1} below
        for (long long p : {3LL, 5LL, 7LL}) {
            for (long long n : {1LL, 2LL, -1LL, 4LL}) {
                if (mod_euclid(2 * to_int64(Int(abs(qf.D))) * n, p) == 0) continue;
                long long pm1 = 1;
                for (int i = 0; i < qf.m - 1; ++i) pm1 *= p;
                long long pk = p;
                for (int k = 1; k <= 3; ++k) {
                    CHECK(r_count(qf, pk * p, n) == pm1 * r_count(qf, pk, n));
                    pk *= p;
                }
            }
        }
        (void)g;
    }
}

TEST_CASE("r_star_count basics and the dual-path reduction") {
    QuadraticFormData q1 = analyze(mat1(1));
    CHECK(r_star_count(q1, 1, 0) == 1);
    CHECK(r_star_count(q1, 1, 1) == 1);
    CHECK(r_star_count(q1, 1, 2) == 0);
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1))}) {
        QuadraticFormData qf = analyze(A);
        for (long long l = 1; l <= 24; ++l)
            for (long long n : {0LL, 1LL, 2LL, 3LL, -1LL, 8LL})
                CHECK(r_star_count(qf, l, n) == r_star_count_dual(qf, l, n));
    }
}

TEST_CASE("r_star congruence class is invariant under coset shifts") {
    QuadraticFormData qf = analyze(diag2(1, -1));
    long long l = 6;
    Int NL = Int(qf.N) * l;
    std::uint64_t state = 12345;
    auto rnd = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (long long)(state >> 40) % 37 - 18;
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rat> v = {Rat(rnd()), Rat(rnd())}, u = {Rat(rnd()), Rat(rnd())};
        std::vector<Rat> vs = v;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                vs[size_t(i)] += 2 * Rat(l) * qf.A[size_t(i)][size_t(j)] * u[size_t(j)];
        auto value = [&](const std::vector<Rat>& x) {
            Rat val(0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    val += x[size_t(i)] * qf.B[size_t(i)][size_t(j)] * x[size_t(j)];
            REQUIRE(is_integer(val));
            return rat_num(val);
        };
        CHECK(mod_euclid(value(v) - value(vs), NL) == 0);
    }
}

TEST_CASE("Z(0,w) closed form for the unit form") {
    QuadraticFormData q1 = analyze(mat1(1));
    cplx w(4.0);
    cplx expect = riemann_zeta(7.0) * riemann_zeta(4.0) / riemann_zeta(8.0);
    ZetaValue ze = z_series(q1, 0, w, 1e-9);
    CHECK(std::abs(ze.value - expect) < 1e-8);
    CHECK(std::abs(z_closed(q1, 0, w) - expect) < 1e-10);
}

TEST_CASE("Euler product vs brute truncation within combined tail bounds") {
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1))}) {
        QuadraticFormData qf = analyze(A);
        for (cplx w : {cplx(3.5), cplx(4.0)}) {
            for (long long n : {0LL, 1LL, 2LL, 3LL, -1LL}) {
                ZetaValue e = z_series(qf, n, w, qf.m == 1 ? 1e-9 : 1e-7);
                ZetaValue b = z_brute(qf, n, w, 2500);
                CHECK(std::abs(e.value - b.value) <= e.tail_bound + b.tail_bound + 1e-10);
                ZetaValue es = z_star_series(qf, n, w, qf.m == 1 ? 1e-9 : 1e-7);
                ZetaValue bs = z_star_brute(qf, n, w, 1200);
                CHECK(std::abs(es.value - bs.value) <= es.tail_bound + bs.tail_bound + 1e-10);
            }
        }
    }
}

TEST_CASE("closed-form zeta matches the Euler product at large w") {
    for (const RatMatrix& A : {mat1(1), mat1(2), RatMatrix(diag2(1, -1))}) {
        QuadraticFormData qf = analyze(A);
        for (cplx w : {cplx(3.5), cplx(4.0, 0.3)}) {
            double tol = qf.m == 1 ? 1e-9 : 1e-7;
            for (long long n : {0LL, 1LL, 2LL, 3LL, 4LL, 5LL, -1LL, -4LL, 12LL}) {
                cplx zc = z_closed(qf, n, w);
                ZetaValue ze = z_series(qf, n, w, tol);
                CHECK(std::abs(zc - ze.value) < 10 * tol * (1.0 + std::abs(zc)));
                cplx zs = z_star_closed(qf, n, w);
                ZetaValue zse = z_star_series(qf, n, w, tol);
                CHECK(std::abs(zs - zse.value) < 10 * tol * (1.0 + std::abs(zs)));
            }
        }
    }
}

TEST_CASE("closed-form zeta at small w against long brute sums") {
    // certified bounds are out of reach at small w (algebraic tails); the
    // partial sums must still converge toward the closed value Cauchy-style
    auto partial = [](const QuadraticFormData& qf, long long n, cplx w, long long L) {
        cplx s = 0.0;
        for (long long l = 1; l <= L; ++l)
            s += double(r_count(qf, l, n)) * std::exp(-w * std::log(double(l)));
        return s;
    };
    QuadraticFormData q1 = analyze(mat1(1));
    cplx w(1.3);
    for (long long n : {1LL, 2LL, -1LL, 0LL}) {
        cplx zc = z_closed(q1, n, w);
        cplx b1 = partial(q1, n, w, 4000), b2 = partial(q1, n, w, 8000),
             b4 = partial(q1, n, w, 16000);
        double gap2 = std::abs(zc - b2), gap4 = std::abs(zc - b4);
        CHECK(gap4 < gap2);
        CHECK(gap4 < 6.0 * std::abs(b4 - b1));
    }
    QuadraticFormData qi = analyze(diag2(1, -1));
    cplx w2(2.4);
    for (long long n : {1LL, 3LL, -2LL, 0LL}) {
        cplx zc = z_closed(qi, n, w2);
        cplx b1 = partial(qi, n, w2, 1000), b2 = partial(qi, n, w2, 2000),
             b4 = partial(qi, n, w2, 4000);
        double gap2 = std::abs(zc - b2), gap4 = std::abs(zc - b4);
        CHECK(gap4 < gap2);
        CHECK(gap4 < 6.0 * std::abs(b4 - b1));
    }
}

TEST_CASE("z_star vanishes when no dual classes represent n") {
    QuadraticFormData q1 = analyze(mat1(1));
    for (long long n : {2LL, 6LL, -2LL}) {
        // v^2 = 2 (mod 4) has no solutions
        ZetaValue z = z_star_series(q1, n, 4.0, 1e-9);
        CHECK(std::abs(z.value) < 1e-12);
        CHECK(std::abs(z_star_closed(q1, n, 4.0)) < 1e-12);
    }
}

TEST_CASE("count cache roundtrip") {
    QuadraticFormData qf = analyze(mat1(1));
    (void)r_count(qf, 12, 1);
    (void)r_star_count(qf, 3, 1);
    std::string path = "/tmp/msf_cache_test.txt";
    qf.cache->save(path);
    QuadraticFormData qf2 = analyze(mat1(1));
    qf2.cache->load(path);
    CHECK(qf2.cache->get(false, 12, 1).has_value());
    CHECK(qf2.cache->get(true, 3, 1).has_value());
    // foreign digest is ignored
    QuadraticFormData q3 = analyze(mat1(2));
    q3.cache->load(path);
    CHECK(!q3.cache->get(false, 12, 1).has_value());
    std::remove(path.c_str());
}

TEST_CASE("phi_psi_hat: Lemma 5.6 in exact cyclotomic arithmetic") {
    QuadraticFormData q1 = analyze(mat1(1));
    // y = (1/3, 0, 0), psi the Legendre character mod 3
    auto c3 = characters_mod(3);
    PhiPsiHatValue v = phi_psi_hat(q1, c3[1], {Rat(1, 3), Rat(0), Rat(0)});
    CHECK(v.equal);
    // all psi mod 3 and mod 5, a spread of y in r^{-1} Z^3
    std::uint64_t state = 999;
    auto rnd = [&](long long r) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return Rat((long long)(state >> 45) % (2 * r + 1) - r, r);
    };
    for (long long r : {3LL, 5LL}) {
        for (const auto& psi : characters_mod(r)) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<Rat> y = {rnd(r), rnd(r), rnd(r)};
                PhiPsiHatValue pv = phi_psi_hat(q1, psi, y);
                CHECK(pv.equal);
            }
        }
    }
    // y outside r^{-1} V_Z: the transform vanishes identically
    PhiPsiHatValue off = phi_psi_hat(q1, c3[1], {Rat(1, 9), Rat(0), Rat(0)});
    CHECK(off.finite_sum.is_zero());
    CHECK(std::abs(off.value) < 1e-15);
}

TEST_CASE("Theorem 5.1 characters") {
    QuadraticFormData q1 = analyze(mat1(1));
    CHECK(chi_K(q1, 1).modulus() == 1);   // Q(sqrt(4)) = Q
    CHECK(chi_K_N(q1, 1).modulus() == 1); // Q(sqrt(16)) = Q
    QuadraticFormData qi = analyze(diag2(1, -1));
    CHECK(chi_K(qi, 0).modulus() == 1);   // Q(sqrt(4)) = Q
    QuadraticFormData q2 = analyze(mat1(2));
    ModCharacter c8 = chi_K(q2, 1); // Q(sqrt(8)), conductor 8
    CHECK(c8.modulus() == 8);
    CHECK(std::abs(c8.value(3) + 1.0) < 1e-15);
}

TEST_CASE("coefficient systems of Theorem 5.1") {
    QuadraticFormData q1 = analyze(mat1(1));
    CoefficientSystem cs = coefficient_system(q1, cplx(0.9), 1);
    CHECK(cs.N == 4);
    CHECK(std::abs(cs.w - cplx(1.3)) < 1e-14);
    CHECK(std::abs(cs.alpha_inf - riemann_zeta(1.3)) < 1e-12);
    // alpha(0)/beta(0) carry |D|^{-1/2} vs |D|^{-1}
    cplx phase = std::exp(cplx(0.0, M_PI / 4.0));
    CHECK(std::abs(cs.alpha0 - phase / std::sqrt(2.0) * z_closed(q1, 0, cs.w)) < 1e-12);
    CHECK(std::abs(cs.beta0 - z_star_closed(q1, 0, cs.w) / 2.0) < 1e-12);
    CHECK(std::abs(cs.beta_inf - std::conj(phase) / std::sqrt(2.0) * riemann_zeta(1.3)) < 1e-12);
    // memoized coefficient access
    CHECK(std::abs(cs.alpha(5) - cs.alpha(5)) == 0.0);
    CHECK(std::abs(cs.beta(-3) - z_star_closed(q1, -3, cs.w)) < 1e-13);

    CHECK_THROWS(coefficient_system(q1, cplx(0.5), 1));  // Re too small
    CHECK_THROWS(coefficient_system(q1, cplx(0.9), 2));  // parity mismatch
    QuadraticFormData qi = analyze(diag2(1, -1));
    CHECK_NOTHROW(coefficient_system(qi, cplx(1.2), 0));
    CHECK_THROWS(coefficient_system(qi, cplx(1.2), 1));
}
