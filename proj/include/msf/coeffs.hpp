#pragma once

#include "msf/quadform.hpp"

namespace msf {

// The data (N, lambda, ell, alpha, beta, special values) of a Ferrar-Suzuki
// summation formula / Maass form pair.  alpha/beta are lazily memoized.
struct CoefficientSystem {
    long long N = 1;
    cplx lambda;
    int ell = 0;
    int growth_degree = 0; // |alpha(n)| <~ C (1+|n|)^growth_degree
    cplx w;

    cplx alpha0{0.0}, beta0{0.0}, alpha_inf{0.0}, beta_inf{0.0};
    ModCharacter chi = ModCharacter::trivial();    // chi_K
    ModCharacter chi_N = ModCharacter::trivial();  // chi_{K_N}

    std::function<cplx(long long)> alpha_fn, beta_fn;

    cplx alpha(long long n) const { return n == 0 ? alpha0 : alpha_fn(n); }
    cplx beta(long long n) const { return n == 0 ? beta0 : beta_fn(n); }
};

// Theorem-5.1 system: alpha(n) = e^{pi i (p-q)/4} |D|^{-1/2} Z(n,w),
// beta(n) = Z*(n,w), w = 2 lambda + m/2 - 1.  Requires Re(lambda) > (m+2)/4
// and ell = p - q (mod 4).
CoefficientSystem coefficient_system(const QuadraticFormData& qf, cplx lambda, int ell);

// all-zero system of level N (edge-case harness input)
CoefficientSystem zero_system(long long N, cplx lambda, int ell);

} // namespace msf
