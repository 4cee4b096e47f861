#pragma once

#include "msf/arith.hpp"
#include "msf/rational.hpp"
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace msf {

using RatMatrix = std::vector<std::vector<Rat>>;

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// persistent (l,n) -> count store, one writer at a time
class CountCache {
public:
    explicit CountCache(std::string digest) : digest_(std::move(digest)) {}

    std::optional<long long> get(bool star, long long l, long long n) const;
    void put(bool star, long long l, long long n, long long cnt);

    void load(const std::string& path);  // ignores files with a foreign digest
    void save(const std::string& path) const;
    const std::string& digest() const { return digest_; }

private:
    std::string digest_;
    mutable std::mutex mu_;
    std::map<std::tuple<bool, long long, long long>, long long> map_;
};

struct QuadraticFormData {
    RatMatrix A;       // m x m half-integral symmetric
    int m = 0;
    Int D;             // det(2A)
    int p = 0, q = 0;  // signature of A
    long long N = 0;   // level of 2Q
    RatMatrix B;       // dual form (N/4) A^{-1}, also half-integral
    Int detB;          // det(2B) = N^m / D

    // integer coefficient views: value(v) = sum diag[i] v_i^2 + sum_{i<j} off[i][j] v_i v_j
    std::vector<long long> Adiag, Bdiag;
    std::vector<std::vector<long long>> Aoff, Boff;

    std::shared_ptr<CountCache> cache;
    std::string digest;
};

// invariants of a half-integral symmetric matrix; rejects singular input
QuadraticFormData analyze(const RatMatrix& A);

// parse "m = k" header plus k rows of exact rationals
QuadraticFormData analyze_form_file(const std::string& text);

// #{v in (Z/l)^m : v^T A v = n (mod l)}
long long r_count(const QuadraticFormData& qf, long long l, long long n);

// #{v* in Z^m / 2lA Z^m : (N/4) v*^T A^{-1} v* = n (mod Nl)} via Hermite-box
// representative enumeration (exact rationals, integrality monitored)
long long r_star_count(const QuadraticFormData& qf, long long l, long long n);

// same count via the dual-form reduction (fast; used by the series code)
long long r_star_count_dual(const QuadraticFormData& qf, long long l, long long n);

struct ZetaValue {
    cplx value{0.0};
    double tail_bound = 0.0;
};

// Z(n,w) by Euler product with per-prime stabilization and a certified
// prime-cutoff tail bound; requires Re(w) > m
ZetaValue z_series(const QuadraticFormData& qf, long long n, cplx w, double tol);
ZetaValue z_star_series(const QuadraticFormData& qf, long long n, cplx w, double tol);

// brute truncation sum_{l<=L} r(l,n) l^{-w} with an empirical tail bound
ZetaValue z_brute(const QuadraticFormData& qf, long long n, cplx w, long long L);
ZetaValue z_star_brute(const QuadraticFormData& qf, long long n, cplx w, long long L);

// closed-form evaluation through zeta / Dirichlet L functions (m <= 2),
// valid for Re(w) > m; this is what the Maass coefficients use
cplx z_closed(const QuadraticFormData& qf, long long n, cplx w);
cplx z_star_closed(const QuadraticFormData& qf, long long n, cplx w);

struct PhiPsiHatValue {
    Cyclotomic finite_sum;   // r^{m+2} * (the finite Fourier sum)
    Cyclotomic closed_form;  // r^{m+2} * r^{-m/2-1} K_{r,psi} tau_{psi*}(N Q*(ry))
    bool equal = false;
    cplx value{0.0};         // common value of phi_psi_hat(y)
};

// Fourier transform of phi_psi at y in r^{-1} Z^{m+2}, both routes exactly
PhiPsiHatValue phi_psi_hat(const QuadraticFormData& qf, const DirichletCharacter& psi,
                           const std::vector<Rat>& y);

// K_{r,psi} = C_{p-q,r} psi*(-N) chi_K(r)
cplx k_r_psi(const QuadraticFormData& qf, const DirichletCharacter& psi);

// Kronecker characters of Theorem-5.1 type for this form
ModCharacter chi_K(const QuadraticFormData& qf, int ell);
ModCharacter chi_K_N(const QuadraticFormData& qf, int ell);

} // namespace msf
