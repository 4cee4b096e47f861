#include "msf/line_model.hpp"

#include "msf/gammafn.hpp"
#include "msf/whittaker.hpp"
#include <cmath>
#include <stdexcept>

namespace msf {

namespace {

constexpr int kTaylorSub = 8;   // subtraction order in Phi_{+-,0}
constexpr int kTaylorHi = 24;   // series order used below the switch point
constexpr double kPoleWindow = 1e-6;

cplx ipow_unit(int pow) {
    static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tab[((pow % 4) + 4) % 4];
}

cplx ipow(cplx base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- families

class GaussianImpl final : public FamilyImpl {
public:
    cplx value(double x) const override { return std::exp(-M_PI * x * x); }
    Jet jet(double x, int order) const override {
        Jet xj = Jet::variable(x, order);
        return exp(cplx(-M_PI) * (xj * xj));
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override;
    std::optional<cplx> closed_fourier(const PSParams&, double t) const override {
        return std::exp(-M_PI * t * t);
    }
    TailClass tail_class() const override { return TailClass::SchwartzLike; }
    std::string name() const override { return "gaussian"; }
};

std::vector<double> hermite_coeffs(int k) {
    // physicists' H_k
    std::vector<double> hm1{1.0}, h{0.0, 2.0};
    if (k == 0) return hm1;
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(size_t(j) + 2, 0.0);
        for (size_t i = 0; i < h.size(); ++i) next[i + 1] += 2.0 * h[i];
        for (size_t i = 0; i < hm1.size(); ++i) next[i] -= 2.0 * double(j) * hm1[i];
        hm1 = std::move(h);
        h = std::move(next);
    }
    return h;
}

class HermiteGaussianImpl final : public FamilyImpl {
public:
    explicit HermiteGaussianImpl(int k) : k_(k), coeff_(hermite_coeffs(k)) {}
    cplx value(double x) const override {
        double u = std::sqrt(2.0 * M_PI) * x, poly = 0.0;
        for (int i = int(coeff_.size()) - 1; i >= 0; --i) poly = poly * u + coeff_[size_t(i)];
        return poly * std::exp(-M_PI * x * x);
    }
    Jet jet(double x, int order) const override {
        Jet xj = Jet::variable(x, order);
        Jet u = cplx(std::sqrt(2.0 * M_PI)) * xj;
        Jet poly = Jet::constant(0.0, order);
        for (int i = int(coeff_.size()) - 1; i >= 0; --i)
            poly = poly * u + cplx(coeff_[size_t(i)]);
        return poly * exp(cplx(-M_PI) * (xj * xj));
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override;
    std::optional<cplx> closed_fourier(const PSParams&, double t) const override {
        return ipow_unit(k_) * value(t);
    }
    TailClass tail_class() const override { return TailClass::SchwartzLike; }
    std::string name() const override { return "hermite_gaussian(" + std::to_string(k_) + ")"; }

private:
    int k_;
    std::vector<double> coeff_;
};

class OddGaussianImpl final : public FamilyImpl {
public:
    cplx value(double x) const override { return x * std::exp(-M_PI * x * x); }
    Jet jet(double x, int order) const override {
        Jet xj = Jet::variable(x, order);
        return xj * exp(cplx(-M_PI) * (xj * xj));
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override;
    std::optional<cplx> closed_fourier(const PSParams&, double t) const override {
        return cplx(0.0, 1.0) * t * std::exp(-M_PI * t * t);
    }
    TailClass tail_class() const override { return TailClass::SchwartzLike; }
    std::string name() const override { return "odd_gaussian"; }
};

class PoissonKernelImpl final : public FamilyImpl {
public:
    PoissonKernelImpl(const PSParams& p, cplx z, cplx prefactor)
        : p_(p), z_(z), pre_(prefactor) {
        if (!(z.imag() > 0)) throw std::domain_error("poisson kernel: Im z must be > 0");
        ex_ = p_.lambda - cplx(double(p_.ell) / 4.0);
        ypow_ = std::exp(ex_ * std::log(z.imag()));
    }
    cplx value(double x) const override {
        cplx w = z_ - x;
        double r2 = std::norm(w);
        return pre_ * ypow_ * std::exp(-ex_ * std::log(r2)) *
               std::exp(cplx(-double(p_.ell) / 2.0) * std::log(w));
    }
    Jet jet(double x, int order) const override {
        Jet xj = Jet::variable(x, order);
        Jet w = cplx(0.0) - xj + z_;
        Jet wb = cplx(0.0) - xj + std::conj(z_);
        Jet r2 = w * wb;
        Jet val = exp((-ex_) * log(r2)) * exp(cplx(-double(p_.ell) / 2.0) * log(w));
        return (pre_ * ypow_) * val;
    }
    double taylor0_radius() const override { return std::abs(z_); }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override {
        require_params(p);
        // (p_z)_infty = i^ell z^{-ell/2} p_{-1/z} with all branches principal;
        // the i^ell makes the double application equal i^ell p_z
        cplx zfac = ipow_unit(p_.ell) * std::exp(cplx(-double(p_.ell) / 2.0) * std::log(z_));
        return std::make_shared<PoissonKernelImpl>(p_, -1.0 / z_, pre_ * zfac);
    }
    std::optional<cplx> closed_fourier(const PSParams& p, double t) const override;
    TailClass tail_class() const override { return TailClass::AlgebraicDecay; }
    std::string name() const override { return "poisson_kernel"; }
    const PSParams& params() const { return p_; }

private:
    void require_params(const PSParams& p) const {
        if (std::abs(p.lambda - p_.lambda) > 1e-12 || p.ell != p_.ell)
            throw std::domain_error("poisson kernel: mismatched (lambda, ell)");
    }
    PSParams p_;
    cplx z_, pre_, ex_, ypow_;
};

class BumpImpl final : public FamilyImpl {
public:
    BumpImpl(double a, double b) : a_(a), b_(b) {
        if (!(a < b)) throw std::domain_error("bump: need a < b");
    }
    cplx value(double x) const override {
        if (x <= a_ || x >= b_) return 0.0;
        return std::exp(-1.0 / ((x - a_) * (b_ - x)));
    }
    Jet jet(double x, int order) const override {
        if (x <= a_ || x >= b_) return Jet(order);
        Jet xj = Jet::variable(x, order);
        Jet den = (xj - Jet::constant(a_, order)) * (Jet::constant(b_, order) - xj);
        return exp(cplx(0.0) - inv(den));
    }
    std::vector<cplx> taylor0(int order) const override {
        if (a_ > 0.0 || b_ < 0.0) return std::vector<cplx>(size_t(order) + 1, 0.0);
        return FamilyImpl::taylor0(order);
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override;
    TailClass tail_class() const override { return TailClass::CompactSupport; }
    double support_bound() const override { return std::max(std::abs(a_), std::abs(b_)); }
    std::string name() const override { return "bump"; }
    bool away_from_zero() const { return a_ > 0.0 || b_ < 0.0; }
    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_, b_;
};

class ScaledImpl final : public FamilyImpl {
public:
    ScaledImpl(cplx c, std::shared_ptr<const FamilyImpl> base) : c_(c), base_(std::move(base)) {}
    cplx value(double x) const override { return c_ * base_->value(x); }
    Jet jet(double x, int order) const override { return c_ * base_->jet(x, order); }
    std::vector<cplx> taylor0(int order) const override {
        auto t = base_->taylor0(order);
        for (auto& v : t) v *= c_;
        return t;
    }
    double taylor0_radius() const override { return base_->taylor0_radius(); }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override {
        return std::make_shared<ScaledImpl>(c_, base_->f_infty(p));
    }
    std::optional<cplx> closed_fourier(const PSParams& p, double t) const override {
        auto v = base_->closed_fourier(p, t);
        if (!v) return std::nullopt;
        return c_ * *v;
    }
    TailClass tail_class() const override { return base_->tail_class(); }
    double tail_exponent(const PSParams& p) const override { return base_->tail_exponent(p); }
    double support_bound() const override { return base_->support_bound(); }
    std::string name() const override { return "scaled " + base_->name(); }

private:
    cplx c_;
    std::shared_ptr<const FamilyImpl> base_;
};

// (sgn x)^{ell/2} |x|^{-2 lambda} f(-1/x) for families vanishing to all
// orders at the puncture (Schwartz-like bases, bumps supported off 0)
class FInftyImpl final : public FamilyImpl {
public:
    FInftyImpl(std::shared_ptr<const FamilyImpl> base, const PSParams& p)
        : base_(std::move(base)), p_(p) {}
    cplx value(double x) const override {
        if (x == 0.0) return 0.0;
        cplx s = x > 0 ? cplx(1.0) : ipow_unit(p_.ell);
        return s * std::exp(-2.0 * p_.lambda * std::log(std::abs(x))) * base_->value(-1.0 / x);
    }
    Jet jet(double x, int order) const override {
        if (x == 0.0) return Jet(order);
        Jet xj = Jet::variable(x, order);
        Jet absx = x > 0 ? xj : (cplx(0.0) - xj);
        cplx s = x > 0 ? cplx(1.0) : ipow_unit(p_.ell);
        Jet inner = cplx(0.0) - inv(xj);
        Jet btay = base_->jet(-1.0 / x, order);
        Jet comp = compose(btay.c, inner);
        return s * (exp(cplx(-2.0) * p_.lambda * log(absx)) * comp);
    }
    std::vector<cplx> taylor0(int order) const override {
        return std::vector<cplx>(size_t(order) + 1, 0.0);
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override {
        // (f_infty)_infty = i^ell f
        return std::make_shared<ScaledImpl>(ipow_unit(p.ell), base_);
    }
    TailClass tail_class() const override {
        return base_->tail_class() == TailClass::CompactSupport ? TailClass::CompactSupport
                                                                : TailClass::AlgebraicDecay;
    }
    double tail_exponent(const PSParams& p) const override { return 2.0 * p.lambda.real(); }
    double support_bound() const override {
        if (base_->tail_class() != TailClass::CompactSupport) return 0.0;
        // support of f(-1/x) when f lives on [a,b] away from 0
        const auto* bump = dynamic_cast<const BumpImpl*>(base_.get());
        if (!bump) return 0.0;
        return std::max(1.0 / std::abs(bump->a()), 1.0 / std::abs(bump->b()));
    }
    std::string name() const override { return base_->name() + "_infty"; }

private:
    std::shared_ptr<const FamilyImpl> base_;
    PSParams p_;
};

class TranslateImpl final : public FamilyImpl {
public:
    TranslateImpl(double u, std::shared_ptr<const FamilyImpl> base)
        : u_(u), base_(std::move(base)) {}
    cplx value(double x) const override { return base_->value(x - u_); }
    Jet jet(double x, int order) const override { return base_->jet(x - u_, order); }
    std::vector<cplx> taylor0(int order) const override { return base_->jet(-u_, order).c; }
    double taylor0_radius() const override { return base_->taylor0_radius(); }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override {
        if (base_->tail_class() != TailClass::SchwartzLike)
            throw std::domain_error("translate: f_infty certified only for Schwartz bases");
        return std::make_shared<FInftyImpl>(
            std::make_shared<TranslateImpl>(u_, base_), p);
    }
    std::optional<cplx> closed_fourier(const PSParams& p, double t) const override {
        auto v = base_->closed_fourier(p, t);
        if (!v) return std::nullopt;
        return std::exp(cplx(0.0, 2.0 * M_PI * u_ * t)) * *v;
    }
    TailClass tail_class() const override { return base_->tail_class(); }
    double support_bound() const override { return base_->support_bound() + std::abs(u_); }
    std::string name() const override { return base_->name() + " shifted"; }

private:
    double u_;
    std::shared_ptr<const FamilyImpl> base_;
};

class DilateImpl final : public FamilyImpl {
public:
    DilateImpl(double t0, std::shared_ptr<const FamilyImpl> base)
        : t0_(t0), base_(std::move(base)) {
        if (!(t0 > 0)) throw std::domain_error("dilate: need t > 0");
    }
    cplx value(double x) const override { return base_->value(t0_ * x); }
    Jet jet(double x, int order) const override {
        Jet j = base_->jet(t0_ * x, order);
        double f = 1.0;
        for (int k = 0; k <= order; ++k, f *= t0_) j.c[size_t(k)] *= f;
        return j;
    }
    std::vector<cplx> taylor0(int order) const override {
        auto t = base_->taylor0(order);
        double f = 1.0;
        for (size_t k = 0; k < t.size(); ++k, f *= t0_) t[k] *= f;
        return t;
    }
    double taylor0_radius() const override { return base_->taylor0_radius() / t0_; }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const override {
        // (f_{t})_infty = t^{-2 lambda} (f_infty)(x/t)
        cplx c = std::exp(-2.0 * p.lambda * std::log(t0_));
        return std::make_shared<ScaledImpl>(
            c, std::make_shared<DilateImpl>(1.0 / t0_, base_->f_infty(p)));
    }
    std::optional<cplx> closed_fourier(const PSParams& p, double t) const override {
        auto v = base_->closed_fourier(p, t / t0_);
        if (!v) return std::nullopt;
        return *v / t0_;
    }
    TailClass tail_class() const override { return base_->tail_class(); }
    double tail_exponent(const PSParams& p) const override { return base_->tail_exponent(p); }
    double support_bound() const override { return base_->support_bound() / t0_; }
    std::string name() const override { return base_->name() + " dilated"; }

private:
    double t0_;
    std::shared_ptr<const FamilyImpl> base_;
};

class DerivImpl final : public FamilyImpl {
public:
    DerivImpl(int m, std::shared_ptr<const FamilyImpl> base) : m_(m), base_(std::move(base)) {}
    cplx value(double x) const override { return base_->jet(x, m_).deriv(m_); }
    Jet jet(double x, int order) const override {
        Jet b = base_->jet(x, order + m_);
        Jet r(order);
        for (int j = 0; j <= order; ++j) {
            double f = 1.0;
            for (int i = j + 1; i <= j + m_; ++i) f *= i;
            r.c[size_t(j)] = b.c[size_t(j + m_)] * f;
        }
        return r;
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams&) const override {
        throw std::domain_error("derivative family: f_infty not provided");
    }
    TailClass tail_class() const override { return base_->tail_class(); }
    double tail_exponent(const PSParams& p) const override {
        return base_->tail_exponent(p) + m_;
    }
    double support_bound() const override { return base_->support_bound(); }
    std::string name() const override { return base_->name() + "'" + std::to_string(m_); }

private:
    int m_;
    std::shared_ptr<const FamilyImpl> base_;
};

class MonomialMulImpl final : public FamilyImpl {
public:
    MonomialMulImpl(int k, std::shared_ptr<const FamilyImpl> base)
        : k_(k), base_(std::move(base)) {}
    cplx value(double x) const override { return std::pow(x, k_) * base_->value(x); }
    Jet jet(double x, int order) const override {
        Jet xj = Jet::variable(x, order);
        Jet mono = Jet::constant(1.0, order);
        for (int i = 0; i < k_; ++i) mono = mono * xj;
        return mono * base_->jet(x, order);
    }
    std::shared_ptr<const FamilyImpl> f_infty(const PSParams&) const override {
        throw std::domain_error("monomial family: f_infty not provided");
    }
    TailClass tail_class() const override { return base_->tail_class(); }
    double tail_exponent(const PSParams& p) const override {
        return base_->tail_exponent(p) - k_;
    }
    double support_bound() const override { return base_->support_bound(); }
    std::string name() const override { return base_->name() + " *x^k"; }

private:
    int k_;
    std::shared_ptr<const FamilyImpl> base_;
};

std::optional<cplx> PoissonKernelImpl::closed_fourier(const PSParams& p, double t) const {
    require_params(p);
    if (t == 0.0) return std::nullopt;
    MeromorphicValue v = poisson_kernel_ft(p_, z_, t);
    if (v.pole) return std::nullopt;
    return pre_ * v.value;
}

std::shared_ptr<const FamilyImpl> GaussianImpl::f_infty(const PSParams& p) const {
    return std::make_shared<FInftyImpl>(std::make_shared<GaussianImpl>(), p);
}
std::shared_ptr<const FamilyImpl> OddGaussianImpl::f_infty(const PSParams& p) const {
    return std::make_shared<FInftyImpl>(std::make_shared<OddGaussianImpl>(), p);
}
std::shared_ptr<const FamilyImpl> HermiteGaussianImpl::f_infty(const PSParams& p) const {
    return std::make_shared<FInftyImpl>(std::make_shared<HermiteGaussianImpl>(k_), p);
}
std::shared_ptr<const FamilyImpl> BumpImpl::f_infty(const PSParams& p) const {
    if (!away_from_zero())
        throw std::domain_error("bump: f_infty certified only for supports away from 0");
    return std::make_shared<FInftyImpl>(std::make_shared<BumpImpl>(a_, b_), p);
}

} // namespace

std::vector<cplx> FamilyImpl::taylor0(int order) const { return jet(0.0, order).c; }

double FamilyImpl::tail_exponent(const PSParams& p) const { return 2.0 * p.lambda.real(); }

TestFunction TestFunction::gaussian() { return TestFunction(std::make_shared<GaussianImpl>()); }
TestFunction TestFunction::odd_gaussian() {
    return TestFunction(std::make_shared<OddGaussianImpl>());
}
TestFunction TestFunction::hermite_gaussian(int k) {
    return TestFunction(std::make_shared<HermiteGaussianImpl>(k));
}
TestFunction TestFunction::poisson_kernel(const PSParams& p, cplx z) {
    return TestFunction(std::make_shared<PoissonKernelImpl>(p, z, cplx(1.0)));
}
TestFunction TestFunction::bump_on_half_line(double a, double b) {
    return TestFunction(std::make_shared<BumpImpl>(a, b));
}
TestFunction TestFunction::translated(double u) const {
    return TestFunction(std::make_shared<TranslateImpl>(u, impl_));
}
TestFunction TestFunction::dilated(double t) const {
    return TestFunction(std::make_shared<DilateImpl>(t, impl_));
}
TestFunction TestFunction::scaled(cplx c) const {
    return TestFunction(std::make_shared<ScaledImpl>(c, impl_));
}
TestFunction TestFunction::derivative(int m) const {
    return TestFunction(std::make_shared<DerivImpl>(m, impl_));
}
TestFunction TestFunction::monomial_mul(int k) const {
    return TestFunction(std::make_shared<MonomialMulImpl>(k, impl_));
}

cplx TestFunction::deriv(int k, double x) const { return impl_->jet(x, k).deriv(k); }

TestFunction f_infty(const TestFunction& f, const PSParams& p) {
    return TestFunction(f.impl().f_infty(p));
}

cplx pi_action(const GTildeElement& gt, const TestFunction& f, const PSParams& p, double x) {
    double a = gt.g.a.to_double(), b = gt.g.b.to_double();
    double c = gt.g.c.to_double(), d = gt.g.d.to_double();
    double den = -c * x + a;
    int xi = gt.xi.pow();
    if (std::abs(den) < 1e-13 * (1.0 + std::abs(c * x) + std::abs(a))) {
        cplx fac = ipow_unit(-p.ell * (c > 0 ? xi + 1 : xi));
        cplx f_inf0 = f_infty(f, p).value(0.0);
        return std::exp(2.0 * p.lambda * std::log(std::abs(c))) * f_inf0 * fac;
    }
    int delta = den > 0 ? 0 : (c >= 0 ? 1 : -1);
    cplx fac = ipow_unit(-p.ell * (xi + delta));
    return std::exp(-2.0 * p.lambda * std::log(std::abs(den))) *
           f.value((d * x - b) / den) * fac;
}

// ------------------------------------------------------------- local zetas

namespace {

// Phi_{sign,0}(f;s) with order-8 Taylor subtraction on (0,1]
cplx half_zeta_zero(const TestFunction& f, cplx s, int sign, double tol = 1e-12) {
    auto tay = f.taylor0(kTaylorHi);
    double swp = std::min(0.25, 0.4 * f.impl().taylor0_radius());
    auto remainder = [&](double y) -> cplx {
        if (std::abs(y) < swp) {
            cplx acc = 0.0;
            for (int k = kTaylorHi; k >= kTaylorSub; --k) acc = acc * y + tay[size_t(k)];
            return acc * std::pow(y, kTaylorSub);
        }
        cplx head = 0.0;
        for (int k = kTaylorSub - 1; k >= 0; --k) head = head * y + tay[size_t(k)];
        return f.value(y) - head;
    };
    auto integrand = [&](double x) -> cplx {
        return std::exp((s - 1.0) * std::log(x)) * remainder(sign * x);
    };
    QuadResult q = integrate_tanh_sinh(integrand, 0.0, 1.0, tol);
    cplx val = q.value;
    double sgn = 1.0;
    for (int k = 0; k < kTaylorSub; ++k, sgn *= sign)
        val += sgn * tay[size_t(k)] / (s + cplx(double(k)));
    return val;
}

cplx reflection_eps(int sign, int ell) {
    // (-+1)^{-ell/2}: i^{-ell} on the plus side, 1 on the minus side
    return sign > 0 ? ipow_unit(-ell) : cplx(1.0);
}

} // namespace

MeromorphicValue local_zeta(const TestFunction& f, const PSParams& p, cplx s, int sign,
                            ZetaRoute route, int reduction_m) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("local_zeta: sign must be +-1");
    TestFunction finf = f_infty(f, p);
    auto tayf = f.taylor0(kTaylorSub);
    auto tayi = finf.taylor0(kTaylorSub);
    cplx eps = reflection_eps(sign, p.ell);

    // pole detection (order <= kTaylorSub window)
    for (int k = 0; k < kTaylorSub; ++k) {
        if (std::abs(s + cplx(double(k))) < kPoleWindow) {
            cplx res = (sign > 0 ? 1.0 : (k % 2 ? -1.0 : 1.0)) * tayf[size_t(k)];
            PoleInfo info{-cplx(double(k)), 1, res, true};
            for (int k2 = 0; k2 < kTaylorSub; ++k2) {
                // coincidence lambda in -Z/2: both pole families meet, residues add
                if (std::abs(2.0 * p.lambda + cplx(double(k2)) + cplx(double(k))) < kPoleWindow) {
                    cplx msgn = sign > 0 ? (k2 % 2 ? -1.0 : 1.0) : 1.0;
                    info.residue += -eps * msgn * tayi[size_t(k2)];
                }
            }
            return {cplx(0.0), info};
        }
    }
    for (int k = 0; k < kTaylorSub; ++k) {
        if (std::abs(s - (2.0 * p.lambda + cplx(double(k)))) < kPoleWindow) {
            cplx msgn = sign > 0 ? (k % 2 ? -1.0 : 1.0) : 1.0;
            PoleInfo info{2.0 * p.lambda + cplx(double(k)), 1, -eps * msgn * tayi[size_t(k)], true};
            return {cplx(0.0), info};
        }
    }

    if (route == ZetaRoute::Reduction) {
        // Phi_pm(f;s) = (-+1)^m / (s...(s+m-1)) Phi_pm(f^(m); s+m), the latter
        // by direct integration on (0,inf) after x = e^u
        int m = reduction_m;
        if (!(s.real() + m > 0.2) || !(s.real() < 2.0 * p.lambda.real() - 0.05))
            throw std::domain_error("local_zeta reduction: s outside usable strip");
        TestFunction fm = f.derivative(m);
        cplx sm = s + cplx(double(m));
        double lo = std::log(1e-14) / (sm.real());
        double hi_exp = sm.real() - (2.0 * p.lambda.real() + m);
        double hi = std::log(1e-14) / hi_exp;
        if (f.impl().tail_class() != TailClass::AlgebraicDecay) hi = std::min(hi, 6.0);
        auto integrand = [&](double u) -> cplx {
            double x = std::exp(u);
            return std::exp(sm * u) * fm.value(sign * x);
        };
        QuadResult q = integrate_adaptive(integrand, lo, hi, 1e-12, 12000);
        cplx pref = sign > 0 ? (m % 2 ? -1.0 : 1.0) : 1.0;
        cplx den = 1.0;
        for (int j = 0; j < m; ++j) den *= s + cplx(double(j));
        return {pref * q.value / den, std::nullopt};
    }

    cplx val = half_zeta_zero(f, s, sign) + eps * half_zeta_zero(finf, 2.0 * p.lambda - s, -sign);
    return {val, std::nullopt};
}

cplx local_zeta_residue(const TestFunction& f, const PSParams& p, int k, int sign,
                        bool at_shifted_pole) {
    if (k < 0 || k >= kTaylorSub) throw std::domain_error("local_zeta_residue: k out of range");
    if (!at_shifted_pole) {
        auto tay = f.taylor0(k);
        return (sign > 0 ? 1.0 : (k % 2 ? -1.0 : 1.0)) * tay[size_t(k)];
    }
    auto tay = f_infty(f, p).taylor0(k);
    cplx eps = reflection_eps(sign, p.ell);
    cplx msgn = sign > 0 ? (k % 2 ? -1.0 : 1.0) : 1.0;
    return -eps * msgn * tay[size_t(k)];
}

// ------------------------------------------------------------------ fourier

cplx fourier(const TestFunction& f, const PSParams& p, double t, const FourierOptions& opt) {
    if (t == 0.0) throw std::invalid_argument("fourier: use fourier_at_zero for t = 0");
    if (opt.allow_closed_form) {
        auto v = f.impl().closed_fourier(p, t);
        if (v) return *v;
    }
    int m_min = 0;
    while (p.lambda.real() + m_min / 2.0 <= 0.5005) ++m_min;
    int m = opt.m_override.value_or(-1);
    if (m < 0) {
        m = m_min;
        if (f.impl().tail_class() == TailClass::AlgebraicDecay) {
            double a0 = f.impl().tail_exponent(p);
            while (a0 + m < 2.7) ++m;
            double w = 2.0 * M_PI * std::abs(t);
            if (w < 1.0) {
                int cap = std::max(m_min, int(std::floor(18.0 / -std::log(w))));
                m = std::min(m, std::max(m_min, cap));
            }
        }
    } else if (m < m_min) {
        throw std::domain_error("fourier: m below the integrability threshold");
    }

    DecayHint hint;
    switch (f.impl().tail_class()) {
        case TailClass::SchwartzLike:
            hint.kind = DecayHint::Kind::GaussianLike;
            break;
        case TailClass::CompactSupport:
            hint.kind = DecayHint::Kind::Compact;
            hint.support = f.impl().support_bound();
            break;
        case TailClass::AlgebraicDecay:
            hint.kind = DecayHint::Kind::Algebraic;
            hint.exponent = f.impl().tail_exponent(p) + m;
            break;
    }
    TestFunction g = m == 0 ? f : f.derivative(m);
    QuadResult q = fourier_integral([&](double x) { return g.value(x); }, t, hint, opt.quad);
    cplx factor = ipow(cplx(0.0, 1.0) / (2.0 * M_PI * t), m);
    return q.value * factor;
}

cplx fourier_at_zero(const TestFunction& f, const PSParams& p) {
    MeromorphicValue a = local_zeta(f, p, cplx(1.0), +1);
    MeromorphicValue b = local_zeta(f, p, cplx(1.0), -1);
    if (a.pole || b.pole)
        throw std::domain_error("fourier_at_zero: lambda in the excluded set 1/2 - Z/2");
    return a.value + b.value;
}

cplx fourier_deriv_at_zero(const TestFunction& f, const PSParams& p, int k) {
    cplx sk(double(k + 1));
    MeromorphicValue a = local_zeta(f, p, sk, +1);
    MeromorphicValue b = local_zeta(f, p, sk, -1);
    if (a.pole || b.pole)
        throw std::domain_error("fourier_deriv_at_zero: lambda in the excluded set");
    double par = k % 2 ? -1.0 : 1.0;
    return ipow(cplx(0.0, 2.0 * M_PI), k) * (a.value + par * b.value);
}

MeromorphicValue poisson_kernel_ft(const PSParams& p, cplx z, double t) {
    double y = z.imag(), x = z.real();
    if (!(y > 0)) throw std::domain_error("poisson_kernel_ft: Im z must be > 0");
    cplx ihalf = std::exp(cplx(0.0, -M_PI * double(p.ell) / 4.0)); // i^{-ell/2}
    if (t != 0.0) {
        double sgn = t > 0 ? 1.0 : -1.0;
        cplx mu = cplx(sgn * double(p.ell) / 4.0);
        cplx nu = p.lambda - 0.5;
        GammaValue gden = gamma_complex(p.lambda + mu);
        cplx W = whittaker_w(mu, nu, 4.0 * M_PI * std::abs(t) * y);
        cplx gfac = gden.pole ? cplx(0.0) : 1.0 / gden.value;
        cplx val = ihalf * std::exp(p.lambda * std::log(M_PI)) *
                   std::exp((p.lambda - 1.0) * std::log(std::abs(t))) * gfac *
                   std::exp(cplx(-double(p.ell) / 4.0) * std::log(y)) * W *
                   std::exp(cplx(0.0, 2.0 * M_PI * t * x));
        return {val, std::nullopt};
    }
    GammaValue g2l = gamma_complex(2.0 * p.lambda - 1.0);
    if (g2l.pole) {
        PoleInfo info{p.lambda, 1, cplx(0.0), false};
        return {cplx(0.0), info};
    }
    GammaValue ga = gamma_complex(p.lambda + cplx(double(p.ell) / 4.0));
    GammaValue gb = gamma_complex(p.lambda - cplx(double(p.ell) / 4.0));
    cplx den = (ga.pole || gb.pole) ? cplx(0.0) : ga.value * gb.value;
    cplx val = 0.0;
    if (den != cplx(0.0))
        val = std::exp((1.0 - p.lambda - double(p.ell) / 4.0) * std::log(y)) * ihalf *
              (2.0 * M_PI) * std::exp((1.0 - 2.0 * p.lambda) * std::log(2.0)) * g2l.value / den;
    return {val, std::nullopt};
}

// -------------------------------------------------- dual zetas and the LFE

cplx dual_local_zeta(const TestFunction& f, const PSParams& p, cplx s, int sign,
                     double abs_tol) {
    int m0 = 0;
    while (m0 <= 1.0 - 2.0 * p.lambda.real()) ++m0;
    if (!(s.real() > m0 - 0.499))
        throw std::domain_error("dual_local_zeta: Re(s) below the convergence bound");
    FourierOptions fopt;
    fopt.quad.abs_tol = abs_tol / 10;
    auto Ff = [&](double t) -> cplx { return fourier(f, p, sign * t, fopt); };
    // t = e^u
    double lo = std::min(-3.0, std::log(abs_tol) / s.real() - 2.0);
    double hi = 1.0;
    while (hi < 12.0) {
        double t = std::exp(hi);
        if (std::abs(Ff(t)) * std::exp(s.real() * hi) < abs_tol / 100) break;
        hi += 0.7;
    }
    auto integrand = [&](double u) -> cplx {
        return std::exp(s * u) * Ff(std::exp(u));
    };
    QuadResult q = integrate_adaptive(integrand, lo, hi, abs_tol, 12000);
    return q.value;
}

double lfe_residual(const TestFunction& f, const PSParams& p, cplx s) {
    cplx lhsP = dual_local_zeta(f, p, s, +1);
    cplx lhsM = dual_local_zeta(f, p, s, -1);
    MeromorphicValue fP = local_zeta(f, p, 1.0 - s, +1);
    MeromorphicValue fM = local_zeta(f, p, 1.0 - s, -1);
    if (fP.pole || fM.pole) throw std::domain_error("lfe_residual: s hits a pole");
    cplx pref = std::exp(-s * std::log(2.0 * M_PI)) * gamma_strict(s);
    cplx ep = std::exp(cplx(0.0, 1.0) * M_PI * s / 2.0);
    cplx em = std::exp(cplx(0.0, -1.0) * M_PI * s / 2.0);
    cplx rhsP = pref * (ep * fP.value + em * fM.value);
    cplx rhsM = pref * (em * fP.value + ep * fM.value);
    return std::max(std::abs(lhsP - rhsP), std::abs(lhsM - rhsM));
}

MeromorphicValue dual_residue(const TestFunction& f, const PSParams& p, int k, int sign,
                              bool at_shifted_pole) {
    // double-pole set A for lambda = q/2
    cplx twol = 2.0 * p.lambda;
    double q_round = std::round(twol.real());
    bool lam_halfint = std::abs(twol - cplx(q_round)) < 1e-9;
    cplx s0 = at_shifted_pole ? 1.0 - twol - cplx(double(k)) : -cplx(double(k));
    if (lam_halfint) {
        long long q = (long long)q_round;
        double top = std::min((long long)0, -(q - 1));
        double s0r = s0.real();
        if (std::abs(s0.imag()) < 1e-12 && std::abs(s0r - std::round(s0r)) < 1e-9 &&
            std::round(s0r) <= top)
            throw std::domain_error("dual_residue: pole in the double-pole set A");
    }
    if (!at_shifted_pole) {
        double par = (sign > 0 || k % 2 == 0) ? 1.0 : -1.0;
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        cplx val = par * fourier_deriv_at_zero(f, p, k) / fact;
        return {cplx(0.0), PoleInfo{s0, 1, val, true}};
    }
    auto tay = f_infty(f, p).taylor0(k);
    cplx iu(0.0, 1.0);
    cplx pre = std::exp((twol + cplx(double(k)) - 1.0) * std::log(2.0 * M_PI)) *
               gamma_strict(1.0 - twol - cplx(double(k)));
    cplx phase = ipow(double(sign) * iu, k - 1) *
                 (std::exp(double(sign) * p.lambda * M_PI * iu) -
                  ipow_unit(-p.ell) * std::exp(-double(sign) * p.lambda * M_PI * iu));
    cplx val = pre * tay[size_t(k)] * phase;
    return {cplx(0.0), PoleInfo{s0, 1, val, true}};
}

} // namespace msf
