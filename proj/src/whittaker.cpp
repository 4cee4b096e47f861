#include "msf/whittaker.hpp"

#include "msf/gammafn.hpp"
#include "msf/quadrature.hpp"
#include <cmath>
#include <stdexcept>

namespace msf {

namespace {

bool near(cplx a, cplx b) { return std::abs(a - b) < 1e-12; }

// x^mu e^{-x/2} / Gamma(nu - mu + 1/2) * int_0^inf t^{nu-mu-1/2} (1+t/x)^{nu+mu-1/2} e^{-t} dt
cplx w_integral(cplx mu, cplx nu, double x) {
    cplx a = nu - mu + 0.5; // Re(a) > 0 required
    cplx b = nu + mu - 0.5;
    auto f = [&](double t) -> cplx {
        return std::pow(cplx(t), a - 1.0) * std::pow(cplx(1.0 + t / x), b) * std::exp(-t);
    };
    QuadResult q = integrate_exp_sinh(f, 3e-13, 14);
    cplx pre = std::exp(mu * std::log(x) - 0.5 * x - log_gamma(a));
    return pre * q.value;
}

} // namespace

cplx whittaker_w(cplx mu, cplx nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("whittaker_w: x must be positive");
    // W is even in nu
    if (nu.real() < 0.0) nu = -nu;
    if (near(nu, mu - 0.5) || near(nu, 0.5 - mu))
        return std::exp(mu * std::log(x) - 0.5 * x);
    if (x > 1400.0) return 0.0; // e^{-x/2} underflows; value below 1e-300
    if ((nu - mu + 0.5).real() > 0.35) return w_integral(mu, nu, x);
    // shift mu down until the integral representation is comfortably regular,
    // then climb back with W_{m+1} = (x-2m) W_m - (m-1/2-nu)(m-1/2+nu) W_{m-1}
    int shifts = std::max(1, int(std::ceil(mu.real() - nu.real() + 0.25)));
    cplx mu0 = mu - double(shifts);
    cplx wm1 = w_integral(mu0 - 1.0, nu, x);
    cplx w0 = w_integral(mu0, nu, x);
    for (int i = 0; i < shifts; ++i) {
        cplx m = mu0 + double(i);
        cplx wp = (x - 2.0 * m) * w0 - (m - 0.5 - nu) * (m - 0.5 + nu) * wm1;
        wm1 = w0;
        w0 = wp;
    }
    return w0;
}

cplx whittaker_w(const WhittakerParams& p) { return whittaker_w(p.mu, p.nu, p.x); }

} // namespace msf
