#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace msf {

using cplx = std::complex<double>;

// Truncated Taylor series (jet) arithmetic.  c[k] is the k-th Taylor
// coefficient f^(k)(x0)/k!; all operations are exact up to rounding, so a
// jet of the evaluation map gives analytic derivatives with no step-size
// noise.  Orders stay small (<= ~32), plain O(n^2) convolution is fine.
class Jet {
public:
    Jet() = default;
    explicit Jet(int order) : c(order + 1, cplx(0.0)) {}
    Jet(cplx value, int order) : c(order + 1, cplx(0.0)) { c[0] = value; }

    static Jet variable(cplx x0, int order) {
        Jet j(order);
        j.c[0] = x0;
        if (order >= 1) j.c[1] = 1.0;
        return j;
    }
    static Jet constant(cplx v, int order) { return Jet(v, order); }

    int order() const { return int(c.size()) - 1; }
    cplx value() const { return c[0]; }
    cplx deriv(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c[size_t(k)] * fact;
    }

    std::vector<cplx> c;
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}
inline Jet operator-(const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c[k] = -a.c[k];
    return r;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (a.c[i] == cplx(0.0)) continue;
        for (int j = 0; i + j <= a.order(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}
inline Jet operator*(cplx s, const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c[k] = s * a.c[k];
    return r;
}
inline Jet operator+(const Jet& a, cplx s) {
    Jet r = a;
    r.c[0] += s;
    return r;
}
inline Jet operator-(cplx s, const Jet& a) { return (-a) + s; }

// 1/b, requires b(x0) != 0
inline Jet inv(const Jet& b) {
    if (b.c[0] == cplx(0.0)) throw std::domain_error("jet inv at zero");
    int n = b.order();
    Jet r(n);
    r.c[0] = 1.0 / b.c[0];
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += b.c[j] * r.c[k - j];
        r.c[k] = -s / b.c[0];
    }
    return r;
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

inline Jet exp(const Jet& a) {
    int n = a.order();
    Jet r(n);
    r.c[0] = std::exp(a.c[0]);
    // r' = a' r  =>  k r_k = sum_{j=1..k} j a_j r_{k-j}
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += double(j) * a.c[j] * r.c[k - j];
        r.c[k] = s / double(k);
    }
    return r;
}

// principal branch; a(x0) must avoid the cut for consistency along the path
inline Jet log(const Jet& a) {
    if (a.c[0] == cplx(0.0)) throw std::domain_error("jet log at zero");
    int n = a.order();
    Jet r(n);
    r.c[0] = std::log(a.c[0]);
    // r' = a'/a  =>  k r_k = (k a_k - sum_{j=1..k-1} j r_j a_{k-j}) / a_0
    for (int k = 1; k <= n; ++k) {
        cplx s = double(k) * a.c[k];
        for (int j = 1; j < k; ++j) s -= double(j) * r.c[j] * a.c[k - j];
        r.c[k] = s / (double(k) * a.c[0]);
    }
    return r;
}

inline Jet pow(const Jet& a, cplx e) { return exp(e * log(a)); }

// g(h(x)) where gcoeff are Taylor coefficients of g at h(x0) (gcoeff[k] =
// g^(k)(h0)/k!) and h is a jet with h.c[0] == h0.  Horner on the series.
inline Jet compose(const std::vector<cplx>& gcoeff, const Jet& h) {
    int n = h.order();
    Jet dh = h;
    dh.c[0] = 0.0; // (h - h0)
    Jet r(n);
    for (int k = int(gcoeff.size()) - 1; k >= 0; --k) {
        r = r * dh;
        r.c[0] += gcoeff[size_t(k)];
    }
    return r;
}

} // namespace msf
