#pragma once

#include "msf/jets.hpp"
#include "msf/rational.hpp"
#include <cstdint>
#include <vector>

namespace msf {

// Hurwitz zeta sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin; Re(s) > 1 or
// anywhere away from s=1 (the continuation is valid), a > 0.
cplx hurwitz_zeta(cplx s, double a);

cplx riemann_zeta(cplx s);

// Kronecker symbol (D/n), full convention (n may be <= 0 or even).
int kronecker_symbol(long long D, long long n);

// Jacobi symbol (a/n) for odd n > 0.
int jacobi_symbol(long long a, long long n);

// Fundamental discriminant of Q(sqrt(d)), d != 0; returns 1 when d is a
// perfect square (the field is Q and the character trivial).
long long fundamental_discriminant(long long d);

// L(s, chi_D) for the Kronecker character of fundamental discriminant D,
// via Hurwitz zeta over residues mod |D|.  D = 1 gives riemann_zeta.
cplx dirichlet_L_kronecker(cplx s, long long D);

// trial-division factorization, n > 0
std::vector<std::pair<long long, int>> factorize(long long n);

} // namespace msf
