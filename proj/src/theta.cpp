#include "msf/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace msf {

int theta_terms_for_tail(double im_z) {
    return int(std::ceil(std::sqrt(14.0 * std::log(10.0) / (2.0 * M_PI * im_z)))) + 2;
}

cplx theta_series(cplx z, int terms) {
    if (!(z.imag() > 0)) throw std::domain_error("theta_series: Im z must be > 0");
    if (terms <= 0) throw std::domain_error("theta_series: truncation must be positive");
    cplx s = 1.0;
    for (int n = 1; n <= terms; ++n)
        s += 2.0 * std::exp(cplx(0.0, 2.0 * M_PI) * double(n) * double(n) * z);
    return s;
}

cplx theta_multiplier(const Mat2& gamma, cplx z) {
    if (!gamma.is_integral()) throw std::domain_error("theta_multiplier: gamma not integral");
    Int a = rat_num(gamma.a.a()), b = rat_num(gamma.b.a());
    Int c = rat_num(gamma.c.a()), d = rat_num(gamma.d.a());
    if (a * d - b * c != 1 || mod_euclid(c, Int(4)) != 0)
        throw std::domain_error("theta_multiplier: gamma not in Gamma_0(4)");
    cplx cz = gamma.c.to_double() * z + gamma.d.to_double();
    cplx val = epsilon_d(d).inverse().to_complex() * double(quad_symbol(c, d)) * std::sqrt(cz);
    return val;
}

} // namespace msf
