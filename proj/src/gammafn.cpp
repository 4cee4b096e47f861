#include "msf/gammafn.hpp"

#include <cmath>
#include <stdexcept>

namespace msf {

namespace {

// Godfrey's 15-term Lanczos coefficients, g = 607/128
const double kLanczosG = 607.0 / 128.0;
const double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

cplx lanczos_pos(cplx s) {
    // valid for Re(s) > 0
    cplx acc = kLanczos[0];
    for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (s + cplx(double(k - 1)));
    cplx t = s + cplx(kLanczosG - 0.5);
    return std::sqrt(2.0 * M_PI) * std::pow(t, s - 0.5) * std::exp(-t) * acc;
}

} // namespace

GammaValue gamma_complex(cplx s) {
    GammaValue out;
    double re = s.real();
    double nearest = std::round(re);
    if (nearest <= 0.0 && std::abs(s - cplx(nearest)) < 1e-10) {
        int k = int(-nearest);
        out.pole = true;
        out.pole_k = k;
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        out.residue = cplx((k % 2 == 0 ? 1.0 : -1.0) / fact);
        return out;
    }
    if (re >= 0.5) {
        out.value = lanczos_pos(s);
    } else {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        out.value = M_PI / (std::sin(M_PI * s) * lanczos_pos(1.0 - s));
    }
    return out;
}

cplx gamma_strict(cplx s) {
    GammaValue g = gamma_complex(s);
    if (g.pole) throw std::domain_error("gamma_strict: pole");
    return g.value;
}

cplx log_gamma(cplx s) {
    if (s.real() >= 0.5) {
        cplx acc = kLanczos[0];
        for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (s + cplx(double(k - 1)));
        cplx t = s + cplx(kLanczosG - 0.5);
        return 0.5 * std::log(2.0 * M_PI) + (s - 0.5) * std::log(t) - t + std::log(acc);
    }
    return std::log(M_PI / std::sin(M_PI * s)) - log_gamma(1.0 - s);
}

} // namespace msf
