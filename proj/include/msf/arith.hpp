#pragma once

#include "msf/cyclotomic.hpp"
#include "msf/metaplectic.hpp"
#include <optional>
#include <vector>

namespace msf {

// Dirichlet character mod an odd prime r, stored by discrete log against the
// least primitive root g: psi_j(g^a) = zeta_{r-1}^{j a}.
class DirichletCharacter {
public:
    DirichletCharacter(long long r, int index);

    long long modulus() const { return r_; }
    int index() const { return index_; }
    bool principal() const { return index_ == 0; }
    int order() const;
    long long generator() const { return gen_; }

    // exponent t with psi(m) = zeta_{r-1}^t, or nullopt when r | m
    std::optional<long long> value_exponent(long long m) const;
    cplx value(long long m) const;
    bool is_real() const { return index_ == 0 || 2 * index_ == r_ - 1; }

    DirichletCharacter conjugate() const { return {r_, int(mod_euclid((long long)(-index_), r_ - 1))}; }

private:
    long long r_;
    int index_;
    long long gen_;
    std::vector<int> log_; // log_[m] = discrete log of m, m = 1..r-1
};

// all r-1 characters mod r, principal first
std::vector<DirichletCharacter> characters_mod(long long r);

struct GaussSumValue {
    Cyclotomic exact; // in Q(zeta_M), M = lcm(4, r(r-1))
    cplx value;
};

// order of the cyclotomic field used for mod-r Gauss sum work
int gauss_field_order(long long r);

// tau_psi(n) = sum_{(m,r)=1} psi(m) e^{2 pi i m n / r}; evaluated both by
// direct summation and by the closed rule, which must agree.
GaussSumValue gauss_sum(const DirichletCharacter& psi, long long n);

// psi*(k) = conj(psi(k)) (k/r)^ell
DirichletCharacter psi_star(const DirichletCharacter& psi, int ell);

// C_{ell,r}: 1 for even ell, eps_r^ell for odd ell
Mu4 c_ell_r(int ell, long long r);

// character values as exact roots of unity e^{2 pi i num/den} (or zero)
struct CharValue {
    bool zero = false;
    long long num = 0, den = 1;
    cplx to_complex() const;
    CharValue conj() const { return zero ? CharValue{true, 0, 1} : CharValue{false, mod_euclid(-num, den), den}; }
};

// character of modulus q given by a value table (q = 1 means trivial)
class ModCharacter {
public:
    static ModCharacter trivial();
    static ModCharacter kronecker(long long fund_disc);
    ModCharacter(long long q, std::vector<CharValue> table);

    long long modulus() const { return q_; }
    long long fund_disc() const { return disc_; }
    CharValue operator()(const Int& d) const;
    CharValue operator()(long long d) const { return (*this)(Int(d)); }
    cplx value(long long d) const { return (*this)(d).to_complex(); }

private:
    long long q_ = 1;
    long long disc_ = 1; // set for Kronecker characters
    std::vector<CharValue> table_;
};

// chi_{N,ell}(d) = conj(chi(d)) (N/d)^ell, d odd and coprime to N
CharValue chi_n_ell(const ModCharacter& chi, long long N, int ell, long long d);

// Kronecker character of Q(sqrt(square_class)); trivial for square classes
ModCharacter kronecker_char(long long square_class);

} // namespace msf
