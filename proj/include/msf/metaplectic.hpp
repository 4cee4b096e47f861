#pragma once

#include "msf/quadext.hpp"
#include <complex>
#include <cstdint>
#include <functional>

namespace msf {

using cplx = std::complex<double>;

// fourth root of unity i^pow
class Mu4 {
public:
    Mu4() : pow_(0) {}
    explicit Mu4(int pow) : pow_(((pow % 4) + 4) % 4) {}
    static Mu4 one() { return Mu4(0); }
    static Mu4 i() { return Mu4(1); }
    static Mu4 minus_one() { return Mu4(2); }
    static Mu4 from_sign(int s) { return s >= 0 ? Mu4(0) : Mu4(2); }

    int pow() const { return pow_; }
    Mu4 inverse() const { return Mu4(-pow_); }
    cplx to_complex() const {
        static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return tab[pow_];
    }
    friend Mu4 operator*(Mu4 x, Mu4 y) { return Mu4(x.pow_ + y.pow_); }
    friend bool operator==(Mu4 x, Mu4 y) { return x.pow_ == y.pow_; }
    friend bool operator!=(Mu4 x, Mu4 y) { return x.pow_ != y.pow_; }

private:
    int pow_;
};

struct Mat2 {
    QuadExt a, b, c, d;

    static Mat2 identity() { return {QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1)}; }
    QuadExt det() const { return a * d - b * c; }
    bool unimodular() const { return det() == QuadExt(1); }
    Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }
    bool is_integral() const {
        auto ok = [](const QuadExt& x) { return x.is_rational() && is_integer(x.a()); };
        return ok(a) && ok(b) && ok(c) && ok(d);
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
};

// [g, xi] = (g, xi * j(g,z)^{1/2})
struct GTildeElement {
    Mat2 g;
    Mu4 xi;

    static GTildeElement identity() { return {Mat2::identity(), Mu4::one()}; }
    friend bool operator==(const GTildeElement& x, const GTildeElement& y) {
        return x.g == y.g && x.xi == y.xi;
    }
};

struct HalfPlanePoint {
    cplx z;
    explicit HalfPlanePoint(cplx zz) : z(zz) {
        if (!(zz.imag() > 0)) throw std::domain_error("HalfPlanePoint: Im z must be > 0");
    }
};

// Petersson's sign table: sigma(g1,g2) with j(g1,g2 z)^{1/2} =
// sigma * j(g1 g2, z)^{1/2} / j(g2, z)^{1/2}
int cocycle_sigma(const Mat2& g1, const Mat2& g2);

GTildeElement mul(const GTildeElement& x, const GTildeElement& y);
GTildeElement inv(const GTildeElement& x);

enum class LiftKind { n, nbar, d, wN };

// lifts [n(x),1], [nbar(x),1], [d(a),1], [w_N,1]; sqrt(N) kept exact
GTildeElement lift(LiftKind kind, const Rat& param);
GTildeElement lift_wN(long long N);
GTildeElement lift_d(const QuadExt& a);

Mu4 epsilon_d(const Int& d);
Mu4 epsilon_d(long long d);

// extended quadratic residue symbol (c/d) for odd d, Shimura's convention
int quad_symbol(const Int& c, const Int& d);
int quad_symbol(long long c, long long d);

// gamma in Gamma_0(4) -> [gamma, eps_d^{-1} (c/d)]
GTildeElement gamma_star(const Mat2& gamma);

// (F |_ell gtilde)(z) = F(gz) * phi(z)^{-ell}, phi = xi (cz+d)^{1/2}
cplx slash(const std::function<cplx(cplx)>& F, int ell, const GTildeElement& gt, cplx z);

// the automorphy factor phi(z)^{-ell} alone
cplx slash_factor(const GTildeElement& gt, int ell, cplx z);

cplx moebius(const Mat2& g, cplx z);

// deterministic random elements of Gamma_0(N) as bounded generator words
class Gamma0Sampler {
public:
    Gamma0Sampler(long long N, long long size_bound, std::uint64_t seed);
    Mat2 next();

private:
    std::uint64_t next_u64();
    long long N_, bound_;
    std::uint64_t state_;
};

} // namespace msf
