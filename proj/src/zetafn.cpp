#include "msf/zetafn.hpp"

#include <cmath>
#include <stdexcept>

namespace msf {

namespace {

// B_2, B_4, ..., B_24
const double kBernoulli[12] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

} // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a must be positive");
    if (std::abs(s - cplx(1.0)) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s=1");
    int K = std::max(12, int(std::ceil(std::abs(s.imag()) * 1.1 + 14.0 - a)));
    cplx sum = 0.0;
    for (int k = 0; k < K; ++k) sum += std::pow(cplx(k + a), -s);
    double N = K + a;
    cplx Ns = std::pow(cplx(N), -s);
    sum += Ns * N / (s - 1.0);
    sum += 0.5 * Ns;
    // Euler-Maclaurin tail: sum_j B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1}
    cplx poch = s;          // rising factorial (s)_{2j-1}
    double fact = 2.0;      // (2j)!
    cplx Npow = Ns / N;     // N^{-s-2j+1}
    for (int j = 1; j <= 12; ++j) {
        cplx term = (kBernoulli[j - 1] / fact) * poch * Npow;
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        poch *= (s + cplx(2.0 * j - 1.0)) * (s + cplx(2.0 * j));
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        Npow /= N * N;
    }
    return sum;
}

cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

int jacobi_symbol(long long a, long long n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi_symbol: n must be odd positive");
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker_symbol(long long D, long long n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) sign = -sign;
    }
    // factor out 2s
    int v2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v2;
    }
    if (v2 > 0) {
        if (D % 2 == 0) return 0;
        long long r = ((D % 8) + 8) % 8;
        int two = (r == 1 || r == 7) ? 1 : -1;
        if (v2 % 2 == 1) sign *= two;
    }
    return sign * jacobi_symbol(mod_euclid(D, n), n);
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    if (n <= 0) throw std::domain_error("factorize: need n > 0");
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

long long fundamental_discriminant(long long d) {
    if (d == 0) throw std::domain_error("fundamental_discriminant: d = 0");
    int sgn = d < 0 ? -1 : 1;
    long long n = d < 0 ? -d : d;
    long long sf = 1;
    for (auto [p, e] : factorize(n))
        if (e % 2 == 1) sf *= p;
    long long d1 = sgn * sf;
    if (d1 == 1) return 1;
    return mod_euclid(d1, 4) == 1 ? d1 : 4 * d1;
}

cplx dirichlet_L_kronecker(cplx s, long long D) {
    if (D == 1) return riemann_zeta(s);
    long long q = D < 0 ? -D : D;
    cplx sum = 0.0;
    cplx qs = std::pow(cplx(double(q)), -s);
    for (long long a = 1; a <= q; ++a) {
        int chi = kronecker_symbol(D, a);
        if (chi == 0) continue;
        sum += double(chi) * hurwitz_zeta(s, double(a) / double(q));
    }
    return qs * sum;
}

} // namespace msf
