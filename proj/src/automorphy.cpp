#include "msf/automorphy.hpp"

#include "msf/gammafn.hpp"
#include "msf/whittaker.hpp"
#include <algorithm>
#include <cmath>
#include <map>

namespace msf {

namespace {

cplx cpow_real(double base, cplx e) { return std::exp(e * std::log(base)); }

cplx i_to(int pow) {
    static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tab[((pow % 4) + 4) % 4];
}

} // namespace

cplx xi_partial(const CoefficientSystem& cs, int sign, cplx s, long long cutoff,
                bool beta_side, double* tail_bound) {
    if (!(s.real() > cs.growth_degree + 1.0))
        throw std::domain_error("xi_partial: outside the certified convergence region");
    cplx sum = 0.0;
    double cbound = 0.0;
    for (long long n = 1; n <= cutoff; ++n) {
        cplx a = beta_side ? cs.beta(sign * n) : cs.alpha(sign * n);
        sum += a * cpow_real(double(n), -s);
        cbound = std::max(cbound, std::abs(a) / std::pow(double(n), double(cs.growth_degree)));
    }
    if (tail_bound) {
        double expn = s.real() - cs.growth_degree;
        *tail_bound = 2.0 * cbound * std::pow(double(cutoff), 1.0 - expn) / (expn - 1.0);
    }
    return sum;
}

double zeta_integral_check(const CoefficientSystem& cs, const TestFunction& f,
                           const PSParams& p, cplx s, long long cutoff) {
    // factorized path
    double tp = 0, tm = 0;
    cplx xp = xi_partial(cs, +1, s, cutoff, false, &tp);
    cplx xm = xi_partial(cs, -1, s, cutoff, false, &tm);
    cplx Pp = dual_local_zeta(f, p, s, +1);
    cplx Pm = dual_local_zeta(f, p, s, -1);
    cplx factorized = xp * Pp + xm * Pm;

    // direct path: int_0^inf t^{s-1} sum_{n != 0} alpha(n) Ff(nt) dt
    FourierOptions fopt;
    auto series_at = [&](double t) -> cplx {
        cplx acc = 0.0;
        for (long long n = 1;; ++n) {
            cplx vp = fourier(f, p, double(n) * t, fopt);
            cplx vm = fourier(f, p, -double(n) * t, fopt);
            acc += cs.alpha(n) * vp + cs.alpha(-n) * vm;
            double mag = std::abs(vp) + std::abs(vm);
            if (n > 4 && mag * std::pow(double(n) + 1, double(cs.growth_degree)) < 1e-14)
                break;
            if (n > 200000) throw BudgetError("zeta_integral_check: series cutoff");
        }
        return acc;
    };
    double lo = std::log(1e-12) / s.real();
    double hi = 0.5;
    while (hi < 8.0 && std::abs(series_at(std::exp(hi))) * std::exp(s.real() * hi) > 1e-13)
        hi += 0.5;
    QuadResult direct = integrate_adaptive(
        [&](double u) { return std::exp(s * u) * series_at(std::exp(u)); }, lo, hi, 1e-9, 8000);
    return std::abs(direct.value - factorized) + tp * std::abs(Pp) + tm * std::abs(Pm);
}

namespace {

// decaying transforms with an empirical geometric tail estimate
struct TransformTail {
    double bound = 0.0;
    bool certified = true;
};

TransformTail estimate_tail(const std::vector<cplx>& vals, double coeff_growth) {
    TransformTail t;
    size_t n = vals.size();
    if (n < 6) return {1e300, false};
    double last = 0.0, prev = 0.0;
    for (size_t k = n - 3; k < n; ++k) last = std::max(last, std::abs(vals[k]));
    for (size_t k = n - 6; k < n - 3; ++k) prev = std::max(prev, std::abs(vals[k]));
    if (prev <= 0.0 || last <= 0.0) return {last * 10 + 1e-300, true};
    double rho = std::min(0.9, last / prev);
    double growth = std::pow(double(n + 3) / double(n), coeff_growth + 1.0);
    t.bound = 3.0 * last * growth * rho / (1.0 - rho);
    return t;
}

} // namespace

SummationReport summation_check(const CoefficientSystem& cs, const TestFunction& f,
                                const PSParams& p, long long cutoff) {
    TestFunction fi = f_infty(f, p);
    SummationReport rep;
    rep.truncation = cutoff;
    FourierOptions fopt;

    cplx f_at_inf = fi.value(0.0);
    cplx finf_at_inf = i_to(p.ell) * f.value(0.0);

    cplx lhs = cs.alpha_inf * f_at_inf + cs.alpha0 * fourier_at_zero(f, p);
    std::vector<cplx> lvals;
    for (long long n = 1; n <= cutoff; ++n) {
        cplx vp = fourier(f, p, double(n), fopt);
        cplx vm = fourier(f, p, -double(n), fopt);
        lhs += cs.alpha(n) * vp + cs.alpha(-n) * vm;
        lvals.push_back(vp);
        lvals.push_back(vm);
        if (n > 6 && (std::abs(vp) + std::abs(vm)) * std::pow(double(n), cs.growth_degree + 1.0) <
                         1e-16)
            break;
    }

    cplx rhs = cs.beta_inf * finf_at_inf + cs.beta0 * fourier_at_zero(fi, p);
    std::vector<cplx> rvals;
    for (long long n = 1; n <= cutoff; ++n) {
        double t = double(n) / double(cs.N);
        cplx vp = fourier(fi, p, t, fopt);
        cplx vm = fourier(fi, p, -t, fopt);
        rhs += cs.beta(n) * vp + cs.beta(-n) * vm;
        rvals.push_back(vp);
        rvals.push_back(vm);
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = std::abs(lhs - rhs);
    TransformTail tt = estimate_tail(rvals, double(cs.growth_degree));
    rep.tail_bound = tt.bound;
    return rep;
}

TwistedContext make_twisted_context(const CoefficientSystem& cs, const TestFunction& f,
                                    const PSParams& p, long long r, long long cutoff) {
    TwistedContext ctx;
    ctx.r = r;
    TestFunction fi = f_infty(f, p);
    FourierOptions fopt;

    ctx.f_at_inf = fi.value(0.0);
    ctx.finf_at_inf = i_to(p.ell) * f.value(0.0);
    ctx.Ff0 = fourier_at_zero(f, p);
    ctx.FfInf0 = fourier_at_zero(fi, p);

    // left side decays like Ff; stop early once negligible
    for (long long n = 1; n <= cutoff; ++n) {
        cplx vp = fourier(f, p, double(n), fopt);
        cplx vm = fourier(f, p, -double(n), fopt);
        ctx.Ff.push_back(vp);
        ctx.FfNeg.push_back(vm);
        if (n > 6 && (std::abs(vp) + std::abs(vm)) * std::pow(double(n), cs.growth_degree + 2.0) <
                         1e-16)
            break;
    }
    ctx.cutoff_lhs = (long long)ctx.Ff.size();

    double delta = 1.0 / double(cs.N * r * r);
    ctx.FfInf.resize(size_t(cutoff));
    ctx.FfInfNeg.resize(size_t(cutoff));
    // uniform grid via FFT; spot-checked below against the direct quadrature
    bool grid_ok = false;
    try {
        int mred = 0;
        while (p.lambda.real() + mred / 2.0 <= 0.5005 || 2.0 * p.lambda.real() + mred < 4.2)
            ++mred;
        TestFunction g = fi.derivative(mred);
        double a = 2.0 * p.lambda.real() + mred;
        double X0 = std::pow(1e-12, -1.0 / (a - 1.0)); // tail of |x|^{-a}
        long long K = std::max<long long>(1, (long long)std::ceil(2.0 * X0 * delta));
        double X = double(K) / (2.0 * delta);
        double hmax = 0.04;
        int npts = 1;
        while (2.0 * X / npts > hmax || npts < 256) npts *= 2;
        if (npts <= (1 << 22)) {
            auto grid = fourier_uniform_grid([&](double x) { return g.value(x); }, X, npts);
            cplx red = cplx(0.0, 1.0) / (2.0 * M_PI);
            for (long long n = 1; n <= cutoff; ++n) {
                long long j = n * K;
                if (j >= (long long)grid.size()) throw BudgetError("grid too short");
                double t = double(n) * delta;
                cplx factor = std::pow(red / t, double(mred));
                ctx.FfInf[size_t(n - 1)] = grid[size_t(j)] * factor;
            }
            // negative side: conj trick is wrong for complex-valued g, redo with -t
            auto gridm = fourier_uniform_grid([&](double x) { return g.value(-x); }, X, npts);
            for (long long n = 1; n <= cutoff; ++n) {
                long long j = n * K;
                double t = double(n) * delta;
                cplx factor = std::pow(-red / t, double(mred));
                ctx.FfInfNeg[size_t(n - 1)] = gridm[size_t(j)] * factor;
            }
            // spot checks
            grid_ok = true;
            for (long long n : {1LL, cutoff / 2, cutoff}) {
                if (n < 1) continue;
                cplx direct = fourier(fi, p, double(n) * delta, fopt);
                if (std::abs(direct - ctx.FfInf[size_t(n - 1)]) > 2e-8) grid_ok = false;
                cplx directm = fourier(fi, p, -double(n) * delta, fopt);
                if (std::abs(directm - ctx.FfInfNeg[size_t(n - 1)]) > 2e-8) grid_ok = false;
            }
        }
    } catch (const std::exception&) {
        grid_ok = false;
    }
    if (!grid_ok) {
        for (long long n = 1; n <= cutoff; ++n) {
            ctx.FfInf[size_t(n - 1)] = fourier(fi, p, double(n) * delta, fopt);
            ctx.FfInfNeg[size_t(n - 1)] = fourier(fi, p, -double(n) * delta, fopt);
        }
    }
    ctx.cutoff_rhs = cutoff;
    std::vector<cplx> both;
    both.insert(both.end(), ctx.FfInf.begin(), ctx.FfInf.end());
    ctx.tail_bound = estimate_tail(both, double(cs.growth_degree)).bound;
    return ctx;
}

SummationReport twisted_summation_check(const CoefficientSystem& cs, const TwistedContext& ctx,
                                        const DirichletCharacter& psi) {
    long long r = ctx.r;
    int ell = cs.ell;
    DirichletCharacter ps = psi_star(psi, ell);
    // Gauss sum tables (complex view of the exact values)
    std::vector<cplx> tau((size_t(r))), taus((size_t(r)));
    for (long long j = 0; j < r; ++j) {
        tau[size_t(j)] = gauss_sum(psi, j).value;
        taus[size_t(j)] = gauss_sum(ps, j).value;
    }
    auto tpsi = [&](long long n) { return tau[size_t(mod_euclid(n, r))]; };
    auto tpss = [&](long long n) { return taus[size_t(mod_euclid(n, r))]; };

    SummationReport rep;
    rep.truncation = ctx.cutoff_rhs;
    rep.tail_bound = ctx.tail_bound;

    cplx lhs = tpsi(0) * (cs.alpha_inf * ctx.f_at_inf + cs.alpha0 * ctx.Ff0);
    for (long long n = 1; n <= ctx.cutoff_lhs; ++n) {
        lhs += cs.alpha(n) * tpsi(n) * ctx.Ff[size_t(n - 1)];
        lhs += cs.alpha(-n) * tpsi(-n) * ctx.FfNeg[size_t(n - 1)];
    }

    cplx r2l = cpow_real(double(r), -2.0 * cs.lambda);
    cplx r2l2 = cpow_real(double(r), 2.0 * cs.lambda - 2.0);
    cplx inner = r2l * cs.beta_inf * tpss(0) * ctx.finf_at_inf +
                 r2l2 * cs.beta0 * tpss(0) * ctx.FfInf0;
    for (long long n = 1; n <= ctx.cutoff_rhs; ++n) {
        inner += r2l2 * cs.beta(n) * tpss(n) * ctx.FfInf[size_t(n - 1)];
        inner += r2l2 * cs.beta(-n) * tpss(-n) * ctx.FfInfNeg[size_t(n - 1)];
    }
    cplx front = std::conj(cs.chi(r).to_complex()) * c_ell_r(ell, r).to_complex() *
                 ps.value(-cs.N);
    rep.lhs = lhs;
    rep.rhs = front * inner;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

SummationReport twisted_summation_check(const CoefficientSystem& cs, long long r,
                                        const DirichletCharacter& psi, const TestFunction& f,
                                        const PSParams& p, long long cutoff) {
    TwistedContext ctx = make_twisted_context(cs, f, p, r, cutoff);
    return twisted_summation_check(cs, ctx, psi);
}

// ------------------------------------------------------------- Maass forms

long long maass_truncation(const CoefficientSystem& cs, double y, const MaassEvalSpec& spec) {
    double m2 = double(cs.growth_degree + 2);
    double need = std::log(1.0 / spec.tol) + m2 * std::log(std::max(1.0 / y, std::exp(1.0))) + 6.0;
    return std::max(spec.m_min, (long long)std::ceil(need / (2.0 * M_PI * y)));
}

namespace {

cplx maass_sum(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec, bool gside) {
    double y = z.imag(), x = z.real();
    if (!(y > 0)) throw std::domain_error("maass eval: Im z must be > 0");
    cplx lam = cs.lambda;
    int ell = cs.ell;
    cplx ilh = std::exp(cplx(0.0, -M_PI * double(ell) / 4.0)); // i^{-ell/2}
    GammaValue g2l = gamma_complex(2.0 * lam - 1.0);
    if (g2l.pole) throw std::domain_error("maass eval: Gamma(2 lambda - 1) pole");
    GammaValue gp = gamma_complex(lam + double(ell) / 4.0);
    GammaValue gm = gamma_complex(lam - double(ell) / 4.0);
    cplx const0 = (gp.pole || gm.pole)
                      ? cplx(0.0)
                      : ilh * (2.0 * M_PI) * cpow_real(2.0, 1.0 - 2.0 * lam) * g2l.value /
                            (gp.value * gm.value);

    cplx lead = gside ? cpow_real(double(cs.N), lam) * cs.beta_inf
                      : cs.alpha_inf;
    cplx sub = gside ? cpow_real(double(cs.N), 1.0 - lam) * cs.beta0
                     : cs.alpha0;
    cplx scale_n = gside ? cpow_real(double(cs.N), 1.0 - lam) : cplx(1.0);

    cplx val = lead * cpow_real(y, lam - double(ell) / 4.0) +
               sub * const0 * cpow_real(y, 1.0 - lam - double(ell) / 4.0);

    long long M = maass_truncation(cs, y, spec);
    cplx ym = cpow_real(y, -double(ell) / 4.0);
    double tail_mag = 0.0;
    for (long long n = -M; n <= M; ++n) {
        if (n == 0) continue;
        cplx coeff = gside ? cs.beta(n) : cs.alpha(n);
        if (coeff == cplx(0.0)) continue;
        double sgn = n > 0 ? 1.0 : -1.0;
        GammaValue gden = gamma_complex(lam + sgn * double(ell) / 4.0);
        if (gden.pole) continue;
        cplx W = whittaker_w(cplx(sgn * double(ell) / 4.0), lam - 0.5,
                             4.0 * M_PI * std::abs(double(n)) * y);
        cplx term = coeff * ilh * cpow_real(M_PI, lam) *
                    cpow_real(std::abs(double(n)), lam - 1.0) / gden.value * ym * W *
                    std::exp(cplx(0.0, 2.0 * M_PI * double(n) * x));
        val += scale_n * term;
        if (std::abs(n) >= M - 1) tail_mag = std::max(tail_mag, std::abs(term));
    }
    double tail = tail_mag * 2.0 / std::max(1e-3, 1.0 - std::exp(-2.0 * M_PI * y));
    if (tail > spec.tol * 10)
        throw std::domain_error("maass eval: truncation certificate failed");
    return val;
}

} // namespace

cplx maass_F(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec) {
    return maass_sum(cs, z, spec, false);
}

cplx maass_G(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec) {
    return maass_sum(cs, z, spec, true);
}

double maass_wN_check(const CoefficientSystem& cs, const std::vector<cplx>& grid,
                      const MaassEvalSpec& spec) {
    GTildeElement wN = lift_wN(cs.N);
    auto F = [&](cplx z) { return maass_F(cs, z, spec); };
    double worst = 0.0;
    for (cplx z : grid) {
        cplx lhs = slash(F, cs.ell, wN, z);
        cplx rhs = maass_G(cs, z, spec);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double maass_automorphy_check(const CoefficientSystem& cs, const std::vector<Mat2>& gammas,
                              const ModCharacter& chi, const std::vector<cplx>& grid,
                              const MaassEvalSpec& spec) {
    // Remark-1.7 parity: chi(-1) must equal i^ell (even ell) or 1 (odd ell)
    cplx want = cs.ell % 2 == 0 ? i_to(cs.ell) : cplx(1.0);
    cplx have = chi(-1).to_complex();
    if (std::abs(want - have) > 1e-12)
        throw std::domain_error("maass_automorphy_check: character parity violates the "
                                "weight constraint");
    auto F = [&](cplx z) { return maass_F(cs, z, spec); };
    std::map<std::pair<double, double>, cplx> fmemo;
    auto Fm = [&](cplx z) {
        auto key = std::make_pair(z.real(), z.imag());
        auto it = fmemo.find(key);
        if (it != fmemo.end()) return it->second;
        cplx v = F(z);
        fmemo[key] = v;
        return v;
    };
    double worst = 0.0;
    for (const Mat2& g : gammas) {
        if (std::abs(g.c.to_double()) > spec.c_max) continue;
        GTildeElement gt;
        if (cs.ell % 2 == 0)
            gt = GTildeElement{g, Mu4::one()};
        else
            gt = gamma_star(g);
        long long d = to_int64(g.d.a());
        cplx chival = chi(d).to_complex();
        for (cplx z : grid) {
            cplx lhs = slash(F, cs.ell, gt, z);
            cplx rhs = chival * Fm(z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double laplacian_check(const std::function<cplx(cplx)>& F, cplx lam, int ell, cplx z,
                       double h) {
    cplx eig = (lam - double(ell) / 4.0) * (1.0 - lam - double(ell) / 4.0);
    auto residual_at = [&](double hh) {
        auto fx = [&](double dx, double dy) { return F(z + cplx(dx, dy)); };
        cplx f0 = fx(0, 0);
        cplx fxx = (-fx(2 * hh, 0) + 16.0 * fx(hh, 0) - 30.0 * f0 + 16.0 * fx(-hh, 0) -
                    fx(-2 * hh, 0)) /
                   (12.0 * hh * hh);
        cplx fyy = (-fx(0, 2 * hh) + 16.0 * fx(0, hh) - 30.0 * f0 + 16.0 * fx(0, -hh) -
                    fx(0, -2 * hh)) /
                   (12.0 * hh * hh);
        cplx fx1 = (-fx(2 * hh, 0) + 8.0 * fx(hh, 0) - 8.0 * fx(-hh, 0) + fx(-2 * hh, 0)) /
                   (12.0 * hh);
        cplx fy1 = (-fx(0, 2 * hh) + 8.0 * fx(0, hh) - 8.0 * fx(0, -hh) + fx(0, -2 * hh)) /
                   (12.0 * hh);
        double y = z.imag();
        cplx lap = -y * y * (fxx + fyy) +
                   cplx(0.0, double(ell) * y / 2.0) * (fx1 + cplx(0.0, 1.0) * fy1);
        return std::abs(lap - eig * f0);
    };
    double r1 = residual_at(h), r2 = residual_at(h / 2);
    return std::min(r1, r2);
}

double laplacian_check_F(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec,
                         double h) {
    MaassEvalSpec tight = spec;
    tight.tol = std::min(spec.tol, 1e-10);
    auto F = [&](cplx zz) { return maass_F(cs, zz, tight); };
    return laplacian_check(F, cs.lambda, cs.ell, z, h);
}

std::vector<cplx> default_grid() {
    std::vector<cplx> g;
    for (double x : {-0.3, 0.0, 0.4})
        for (double y : {0.5, 1.0, 2.0}) g.push_back({x, y});
    return g;
}

} // namespace msf
