#include "msf/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace msf {

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (M_ != o.M_) throw std::domain_error("Cyclotomic: mixed orders");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    if (M_ != o.M_) throw std::domain_error("Cyclotomic: mixed orders");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y) {
    if (x.M_ != y.M_) throw std::domain_error("Cyclotomic: mixed orders");
    Cyclotomic r(x.M_);
    int M = x.M_;
    for (int i = 0; i < M; ++i) {
        if (x.c_[size_t(i)] == 0) continue;
        for (int j = 0; j < M; ++j) {
            if (y.c_[size_t(j)] == 0) continue;
            int k = i + j;
            if (k >= M) k -= M;
            r.c_[size_t(k)] += x.c_[size_t(i)] * y.c_[size_t(j)];
        }
    }
    return r;
}

Cyclotomic operator*(const Rat& s, Cyclotomic x) {
    for (auto& v : x.c_) v *= s;
    return x;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r(M_);
    for (int k = 0; k < M_; ++k)
        r.c_[size_t((M_ - k) % M_)] = c_[size_t(k)];
    return r;
}

namespace {

using Poly = std::vector<Rat>; // coefficient index = degree

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Poly poly_divide_exact(const Poly& num, const Poly& den) {
    Poly rem = num;
    Poly quot(num.size() - den.size() + 1, Rat(0));
    int dd = int(den.size()) - 1;
    for (int k = int(rem.size()) - 1; k >= dd; --k) {
        Rat q = rem[size_t(k)] / den[size_t(dd)];
        quot[size_t(k - dd)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[size_t(k - dd + j)] -= q * den[size_t(j)];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return quot;
}

} // namespace

const std::vector<Int>& cyclotomic_polynomial(int M) {
    static std::mutex mtx;
    static std::map<int, std::vector<Int>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto found = cache.find(M);
    if (found != cache.end()) return found->second;
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, filled for divisors in order
    for (int d = 1; d <= M; ++d) {
        if (M % d != 0 || cache.count(d)) continue;
        Poly num(size_t(d) + 1, Rat(0));
        num[0] = -1;
        num[size_t(d)] = 1;
        Poly den{Rat(1)};
        for (int e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const auto& phie = cache.at(e);
            Poly pe(phie.size());
            for (size_t i = 0; i < phie.size(); ++i) pe[i] = Rat(phie[i]);
            den = poly_mul(den, pe);
        }
        Poly quot = poly_divide_exact(num, den);
        std::vector<Int> out(quot.size());
        for (size_t i = 0; i < quot.size(); ++i) {
            if (!is_integer(quot[i])) throw std::logic_error("Phi_M not integral");
            out[i] = rat_num(quot[i]);
        }
        cache.emplace(d, std::move(out));
    }
    return cache.at(M);
}

bool Cyclotomic::is_zero() const {
    bool any = false;
    for (const auto& v : c_)
        if (v != 0) { any = true; break; }
    if (!any) return true;
    const std::vector<Int>& phi = cyclotomic_polynomial(M_);
    int dd = int(phi.size()) - 1;
    std::vector<Rat> rem = c_;
    Rat lead(phi.back());
    for (int k = int(rem.size()) - 1; k >= dd; --k) {
        if (rem[size_t(k)] == 0) continue;
        Rat q = rem[size_t(k)] / lead;
        rem[size_t(k)] = 0;
        for (int j = 0; j < dd; ++j) rem[size_t(k - dd + j)] -= q * Rat(phi[size_t(j)]);
    }
    for (const auto& r : rem)
        if (r != 0) return false;
    return true;
}

cplx Cyclotomic::to_complex() const {
    cplx s = 0.0;
    for (int k = 0; k < M_; ++k) {
        if (c_[size_t(k)] == 0) continue;
        double ang = 2.0 * M_PI * double(k) / double(M_);
        s += to_double(c_[size_t(k)]) * cplx(std::cos(ang), std::sin(ang));
    }
    return s;
}

} // namespace msf
