#include "msf/coeffs.hpp"

#include "msf/zetafn.hpp"
#include <map>
#include <mutex>

namespace msf {

CoefficientSystem coefficient_system(const QuadraticFormData& qf, cplx lambda, int ell) {
    if (!(lambda.real() > (qf.m + 2) / 4.0))
        throw std::domain_error("coefficient_system: need Re(lambda) > (m+2)/4");
    if (mod_euclid((long long)(ell - (qf.p - qf.q)), 4) != 0)
        throw std::domain_error("coefficient_system: ell must be p - q (mod 4)");

    CoefficientSystem cs;
    cs.N = qf.N;
    cs.lambda = lambda;
    cs.ell = ell;
    cs.growth_degree = qf.m;
    cs.w = 2.0 * lambda + qf.m / 2.0 - 1.0;

    cplx phase = std::exp(cplx(0.0, M_PI * (qf.p - qf.q) / 4.0));
    double sqD = std::sqrt(to_double(Rat(Int(abs(qf.D)))));
    cplx zw = riemann_zeta(cs.w - double(qf.m) + 1.0);

    // beta(n) carries |D|^{-1} for every n, not only n = 0: the printed
    // n != 0 normalization in the source material fails the exact w_N
    // transformation law, which pins the |D|^{-1} (see the test suite)
    cs.alpha0 = phase / sqD * z_closed(qf, 0, cs.w);
    cs.beta0 = z_star_closed(qf, 0, cs.w) / (sqD * sqD);
    cs.alpha_inf = zw;
    cs.beta_inf = std::conj(phase) / sqD * zw; // e^{-pi i(p-q)/4} |D|^{-1/2} zeta(w-m+1)
    cs.chi = chi_K(qf, ell);
    cs.chi_N = chi_K_N(qf, ell);

    auto amemo = std::make_shared<std::map<long long, cplx>>();
    auto bmemo = std::make_shared<std::map<long long, cplx>>();
    auto mu = std::make_shared<std::mutex>();
    QuadraticFormData qfc = qf;
    cplx w = cs.w;
    cs.alpha_fn = [qfc, w, phase, sqD, amemo, mu](long long n) {
        {
            std::lock_guard<std::mutex> lock(*mu);
            auto it = amemo->find(n);
            if (it != amemo->end()) return it->second;
        }
        cplx v = phase / sqD * z_closed(qfc, n, w);
        std::lock_guard<std::mutex> lock(*mu);
        (*amemo)[n] = v;
        return v;
    };
    double absD = sqD * sqD;
    cs.beta_fn = [qfc, w, absD, bmemo, mu](long long n) {
        {
            std::lock_guard<std::mutex> lock(*mu);
            auto it = bmemo->find(n);
            if (it != bmemo->end()) return it->second;
        }
        cplx v = z_star_closed(qfc, n, w) / absD;
        std::lock_guard<std::mutex> lock(*mu);
        (*bmemo)[n] = v;
        return v;
    };
    return cs;
}

CoefficientSystem zero_system(long long N, cplx lambda, int ell) {
    CoefficientSystem cs;
    cs.N = N;
    cs.lambda = lambda;
    cs.ell = ell;
    cs.w = 0.0;
    cs.alpha_fn = [](long long) { return cplx(0.0); };
    cs.beta_fn = [](long long) { return cplx(0.0); };
    return cs;
}

} // namespace msf
