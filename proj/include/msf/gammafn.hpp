#pragma once

#include "msf/jets.hpp"
#include <optional>

namespace msf {

struct GammaValue {
    cplx value{0.0};          // meaningless when pole
    bool pole = false;
    int pole_k = -1;          // pole at s = -k
    cplx residue{0.0};        // (-1)^k / k!
};

// complex Gamma by Lanczos approximation, reflection for Re(s) < 1/2;
// relative error ~1e-13 away from poles
GammaValue gamma_complex(cplx s);

// value only; throws std::domain_error at poles
cplx gamma_strict(cplx s);

cplx log_gamma(cplx s);

} // namespace msf
