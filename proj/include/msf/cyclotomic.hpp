#pragma once

#include "msf/jets.hpp"
#include "msf/rational.hpp"
#include <vector>

namespace msf {

// Exact arithmetic in Q(zeta_M): elements are stored as coefficient vectors
// over the (redundant) spanning set 1, zeta, ..., zeta^{M-1}; products are
// cyclic convolutions and zero tests reduce modulo the cyclotomic
// polynomial Phi_M.
class Cyclotomic {
public:
    Cyclotomic() : M_(1), c_(1, Rat(0)) {}
    explicit Cyclotomic(int M) : M_(M), c_(size_t(M), Rat(0)) {}
    Cyclotomic(int M, const Rat& rational) : M_(M), c_(size_t(M), Rat(0)) { c_[0] = rational; }

    static Cyclotomic root(int M, long long exponent) {
        Cyclotomic z(M);
        z.c_[size_t(mod_euclid(exponent, (long long)M))] = 1;
        return z;
    }

    int order() const { return M_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { return x += y; }
    friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { return x -= y; }
    friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y);
    friend Cyclotomic operator*(const Rat& s, Cyclotomic x);

    Cyclotomic conj() const; // zeta -> zeta^{-1}

    bool is_zero() const;
    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
        return (x - y).is_zero();
    }

    cplx to_complex() const;

private:
    int M_;
    std::vector<Rat> c_;
};

// coefficients of the cyclotomic polynomial Phi_M (computed once, cached)
const std::vector<Int>& cyclotomic_polynomial(int M);

} // namespace msf
