#include "msf/metaplectic.hpp"

#include "msf/zetafn.hpp"
#include <cmath>

namespace msf {

int cocycle_sigma(const Mat2& g1, const Mat2& g2) {
    Mat2 g3 = g1 * g2;
    int c1 = g1.c.sign(), c2 = g2.c.sign(), c3 = g3.c.sign();
    int fourpi;
    if (c1 != 0 && c2 != 0 && c3 != 0)
        fourpi = c1 + c2 - c3 - c1 * c2 * c3;
    else if (c1 != 0 && c2 != 0)
        fourpi = -(1 - c1) * (1 - c2);
    else if (c2 != 0 && c3 != 0)
        fourpi = (1 - g1.d.sign()) * (1 + c2);
    else if (c1 != 0 && c3 != 0)
        fourpi = (1 + c1) * (1 - g2.a.sign());
    else
        fourpi = (1 - g1.d.sign()) * (1 - g2.a.sign());
    return fourpi == 0 ? 1 : -1;
}

GTildeElement mul(const GTildeElement& x, const GTildeElement& y) {
    int sigma = cocycle_sigma(x.g, y.g);
    return {x.g * y.g, x.xi * y.xi * Mu4::from_sign(sigma)};
}

GTildeElement inv(const GTildeElement& x) {
    Mat2 gi = x.g.inverse_unimodular();
    int sigma = cocycle_sigma(x.g, gi);
    return {gi, x.xi.inverse() * Mu4::from_sign(sigma)};
}

GTildeElement lift(LiftKind kind, const Rat& param) {
    switch (kind) {
        case LiftKind::n:
            return {{QuadExt(1), QuadExt(param), QuadExt(0), QuadExt(1)}, Mu4::one()};
        case LiftKind::nbar:
            return {{QuadExt(1), QuadExt(0), QuadExt(param), QuadExt(1)}, Mu4::one()};
        case LiftKind::d: {
            if (param == 0) throw std::domain_error("lift: d(0) is singular");
            return lift_d(QuadExt(param));
        }
        case LiftKind::wN: {
            if (!is_integer(param) || param < 1)
                throw std::domain_error("lift: w_N needs a positive integer N");
            return lift_wN(to_int64(param));
        }
    }
    throw std::logic_error("lift: bad kind");
}

GTildeElement lift_d(const QuadExt& a) {
    if (a.is_zero()) throw std::domain_error("lift_d: zero");
    return {{a, QuadExt(0), QuadExt(0), a.inverse()}, Mu4::one()};
}

GTildeElement lift_wN(long long N) {
    if (N < 1) throw std::domain_error("lift_wN: N must be >= 1");
    QuadExt s = QuadExt::sqrt_of(N);
    return {{QuadExt(0), -s.inverse(), s, QuadExt(0)}, Mu4::one()};
}

Mu4 epsilon_d(const Int& d) {
    Int r = mod_euclid(d, Int(4));
    if (r == 1) return Mu4::one();
    if (r == 3) return Mu4::i();
    throw std::domain_error("epsilon_d: d must be odd");
}

Mu4 epsilon_d(long long d) { return epsilon_d(Int(d)); }

int quad_symbol(const Int& c, const Int& d) {
    if (mod_euclid(d, Int(2)) != 1) throw std::domain_error("quad_symbol: d must be odd");
    if (d == 1) return 1;
    if (d == -1) return c >= 0 ? 1 : -1;
    Int ad = abs(d);
    long long dd = to_int64(ad);
    long long cc = to_int64(mod_euclid(c, ad));
    int j = jacobi_symbol(cc, dd);
    if (d < 0 && c < 0) return -j;
    return j;
}

int quad_symbol(long long c, long long d) { return quad_symbol(Int(c), Int(d)); }

namespace {

Int entry_int(const QuadExt& x, const char* who) {
    if (!x.is_rational() || !is_integer(x.a()))
        throw std::domain_error(std::string(who) + ": matrix must be integral");
    return rat_num(x.a());
}

} // namespace

GTildeElement gamma_star(const Mat2& gamma) {
    Int a = entry_int(gamma.a, "gamma_star"), b = entry_int(gamma.b, "gamma_star");
    Int c = entry_int(gamma.c, "gamma_star"), d = entry_int(gamma.d, "gamma_star");
    if (a * d - b * c != 1 || mod_euclid(c, Int(4)) != 0)
        throw std::domain_error("gamma_star: not in Gamma_0(4)");
    Mu4 xi = epsilon_d(d).inverse();
    if (quad_symbol(c, d) < 0) xi = xi * Mu4::minus_one();
    return {gamma, xi};
}

cplx moebius(const Mat2& g, cplx z) {
    cplx a = g.a.to_double(), b = g.b.to_double(), c = g.c.to_double(), d = g.d.to_double();
    return (a * z + b) / (c * z + d);
}

cplx slash_factor(const GTildeElement& gt, int ell, cplx z) {
    cplx c = gt.g.c.to_double(), d = gt.g.d.to_double();
    cplx phi = gt.xi.to_complex() * std::sqrt(c * z + d);
    return std::pow(phi, cplx(double(-ell)));
}

cplx slash(const std::function<cplx(cplx)>& F, int ell, const GTildeElement& gt, cplx z) {
    return F(moebius(gt.g, z)) * slash_factor(gt, ell, z);
}

Gamma0Sampler::Gamma0Sampler(long long N, long long size_bound, std::uint64_t seed)
    : N_(N), bound_(size_bound), state_(seed ^ 0x9e3779b97f4a7c15ULL) {
    if (N < 1) throw std::domain_error("Gamma0Sampler: N must be >= 1");
}

std::uint64_t Gamma0Sampler::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Mat2 Gamma0Sampler::next() {
    for (;;) {
        Mat2 m = Mat2::identity();
        int len = 1 + int(next_u64() % 6);
        if (next_u64() % 4 == 0) m = -m;
        for (int i = 0; i < len; ++i) {
            long long k = (long long)(next_u64() % 5) - 2;
            if (k == 0) k = 1;
            Mat2 gen;
            if (next_u64() % 2 == 0)
                gen = {QuadExt(1), QuadExt(Rat(k)), QuadExt(0), QuadExt(1)};
            else
                gen = {QuadExt(1), QuadExt(0), QuadExt(Rat(k * N_)), QuadExt(1)};
            m = m * gen;
        }
        auto small = [&](const QuadExt& x) {
            return abs(rat_num(x.a())) <= bound_;
        };
        if (small(m.a) && small(m.b) && small(m.c) && small(m.d)) return m;
    }
}

} // namespace msf
