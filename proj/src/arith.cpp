#include "msf/arith.hpp"

#include "msf/zetafn.hpp"
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msf {

namespace {

bool is_prime_small(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

long long least_primitive_root(long long r) {
    auto fac = factorize(r - 1);
    for (long long g = 2; g < r; ++g) {
        bool ok = true;
        for (auto [p, e] : fac) {
            (void)e;
            long long x = 1, b = g, k = (r - 1) / p;
            while (k) {
                if (k & 1) x = x * b % r;
                b = b * b % r;
                k >>= 1;
            }
            if (x == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: none found");
}

} // namespace

DirichletCharacter::DirichletCharacter(long long r, int index)
    : r_(r), index_(int(mod_euclid((long long)index, r - 1))) {
    if (r < 3 || r % 2 == 0 || !is_prime_small(r))
        throw std::domain_error("DirichletCharacter: modulus must be an odd prime");
    gen_ = least_primitive_root(r);
    log_.assign(size_t(r), 0);
    long long x = 1;
    for (int a = 0; a < r - 1; ++a) {
        log_[size_t(x)] = a;
        x = x * gen_ % r;
    }
}

int DirichletCharacter::order() const {
    if (index_ == 0) return 1;
    return int((r_ - 1) / std::gcd((long long)index_, r_ - 1));
}

std::optional<long long> DirichletCharacter::value_exponent(long long m) const {
    long long mm = mod_euclid(m, r_);
    if (mm == 0) return std::nullopt;
    return mod_euclid((long long)index_ * log_[size_t(mm)], r_ - 1);
}

cplx DirichletCharacter::value(long long m) const {
    auto t = value_exponent(m);
    if (!t) return 0.0;
    double ang = 2.0 * M_PI * double(*t) / double(r_ - 1);
    return {std::cos(ang), std::sin(ang)};
}

std::vector<DirichletCharacter> characters_mod(long long r) {
    if (r < 3 || r % 2 == 0 || !is_prime_small(r))
        throw std::domain_error("characters_mod: modulus must be an odd prime");
    std::vector<DirichletCharacter> out;
    out.reserve(size_t(r - 1));
    for (int j = 0; j < r - 1; ++j) out.emplace_back(r, j);
    return out;
}

int gauss_field_order(long long r) {
    long long M = std::lcm((long long)4, r * (r - 1));
    return int(M);
}

GaussSumValue gauss_sum(const DirichletCharacter& psi, long long n) {
    long long r = psi.modulus();
    int M = gauss_field_order(r);
    Cyclotomic direct(M);
    for (long long m = 1; m < r; ++m) {
        auto t = psi.value_exponent(m);
        long long e = *t * (M / (r - 1)) + mod_euclid(m * n, r) * (M / r);
        direct += Cyclotomic::root(M, e);
    }
    // closed rule (4.3)/(4.4)
    Cyclotomic closed(M);
    if (psi.principal()) {
        closed = Cyclotomic(M, mod_euclid(n, r) == 0 ? Rat(r - 1) : Rat(-1));
    } else if (mod_euclid(n, r) != 0) {
        auto t = psi.conjugate().value_exponent(n);
        Cyclotomic tau(M);
        for (long long m = 1; m < r; ++m) {
            auto tm = psi.value_exponent(m);
            tau += Cyclotomic::root(M, *tm * (M / (r - 1)) + m * (M / r));
        }
        closed = Cyclotomic::root(M, *t * (M / (r - 1))) * tau;
    } // else zero
    if (!(direct == closed))
        throw std::logic_error("gauss_sum: direct summation and closed rule disagree");
    return {direct, direct.to_complex()};
}

DirichletCharacter psi_star(const DirichletCharacter& psi, int ell) {
    long long r = psi.modulus();
    // conj(psi) * Legendre^ell; Legendre has index (r-1)/2
    long long idx = mod_euclid(-(long long)psi.index() + (long long)ell * ((r - 1) / 2), r - 1);
    return {r, int(idx)};
}

Mu4 c_ell_r(int ell, long long r) {
    if (ell % 2 == 0) return Mu4::one();
    Mu4 eps = epsilon_d(r);
    return Mu4(eps.pow() * ell);
}

cplx CharValue::to_complex() const {
    if (zero) return 0.0;
    double ang = 2.0 * M_PI * double(num) / double(den);
    return {std::cos(ang), std::sin(ang)};
}

ModCharacter::ModCharacter(long long q, std::vector<CharValue> table)
    : q_(q), table_(std::move(table)) {}

ModCharacter ModCharacter::trivial() {
    return ModCharacter(1, {CharValue{false, 0, 1}});
}

ModCharacter ModCharacter::kronecker(long long D) {
    if (D == 1) return trivial();
    long long q = D < 0 ? -D : D;
    std::vector<CharValue> tab((size_t(q)));
    for (long long a = 0; a < q; ++a) {
        int v = kronecker_symbol(D, a);
        tab[size_t(a)] = v == 0 ? CharValue{true, 0, 1}
                                : CharValue{false, v > 0 ? 0 : 1, 2};
    }
    ModCharacter chi(q, std::move(tab));
    chi.disc_ = D;
    return chi;
}

CharValue ModCharacter::operator()(const Int& d) const {
    long long a = to_int64(mod_euclid(d, Int(q_)));
    return table_[size_t(a)];
}

CharValue chi_n_ell(const ModCharacter& chi, long long N, int ell, long long d) {
    if (d % 2 == 0) throw std::domain_error("chi_n_ell: d must be odd");
    CharValue base = chi(d).conj();
    if (base.zero) return base;
    int qs = quad_symbol(N, d);
    if (qs == 0) return CharValue{true, 0, 1};
    if (ell % 2 != 0 && qs < 0) {
        // multiply by -1 = e^{2 pi i / 2}
        long long den = std::lcm(base.den, (long long)2);
        long long num = mod_euclid(base.num * (den / base.den) + den / 2, den);
        long long g = std::gcd(num, den);
        if (g == 0) g = 1;
        base = CharValue{false, num / g, den / g};
    }
    return base;
}

ModCharacter kronecker_char(long long square_class) {
    if (square_class == 0) throw std::domain_error("kronecker_char: nonzero class required");
    return ModCharacter::kronecker(fundamental_discriminant(square_class));
}

} // namespace msf
