#pragma once

#include "msf/jets.hpp"

namespace msf {

struct WhittakerParams {
    cplx mu;
    cplx nu;
    double x; // > 0
};

// Whittaker W_{mu,nu}(x), x > 0.  Closed form when nu = +-(mu - 1/2),
// otherwise the real-axis integral representation (valid for
// Re(nu - mu + 1/2) > 0), re-entered by the contiguous recurrence in mu
// when needed.  Throws QuadFailure / domain_error on non-convergence.
cplx whittaker_w(const WhittakerParams& p);

cplx whittaker_w(cplx mu, cplx nu, double x);

} // namespace msf
