#pragma once

#include "msf/metaplectic.hpp"

namespace msf {

// theta(z) = sum_n exp(2 pi i n^2 z), truncated at |n| <= terms.
// Tail < 1e-14 once terms >= ceil(sqrt(14 ln10 / (2 pi Im z))) + 2.
cplx theta_series(cplx z, int terms);

int theta_terms_for_tail(double im_z);

// J(gamma, z) = eps_d^{-1} (c/d) (cz+d)^{1/2} for gamma in Gamma_0(4);
// equals theta(gamma z)/theta(z)
cplx theta_multiplier(const Mat2& gamma, cplx z);

} // namespace msf
