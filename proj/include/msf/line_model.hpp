#pragma once

#include "msf/jets.hpp"
#include "msf/metaplectic.hpp"
#include "msf/quadrature.hpp"
#include <memory>
#include <optional>
#include <string>

namespace msf {

struct PSParams {
    cplx lambda;
    int ell = 0;
};

struct PoleInfo {
    cplx location;
    int order = 1;
    cplx residue{0.0};
    bool residue_known = true;
};

struct MeromorphicValue {
    cplx value{0.0};
    std::optional<PoleInfo> pole;
};

enum class TailClass { SchwartzLike, AlgebraicDecay, CompactSupport };

class TestFunction;

// A concrete member of V^infty_{lambda,ell}: closed-form evaluation with
// analytic derivatives (jets), Taylor data at 0, an exact f_infty companion,
// and optional closed-form Fourier transform.
class FamilyImpl {
public:
    virtual ~FamilyImpl() = default;
    virtual cplx value(double x) const = 0;
    virtual Jet jet(double x, int order) const = 0;
    virtual std::vector<cplx> taylor0(int order) const;
    virtual double taylor0_radius() const { return 1e300; }
    virtual std::shared_ptr<const FamilyImpl> f_infty(const PSParams& p) const = 0;
    virtual std::optional<cplx> closed_fourier(const PSParams& p, double t) const {
        (void)p; (void)t;
        return std::nullopt;
    }
    virtual TailClass tail_class() const = 0;
    virtual double tail_exponent(const PSParams& p) const; // algebraic families
    virtual double support_bound() const { return 0.0; }
    virtual std::string name() const = 0;
};

class TestFunction {
public:
    TestFunction() = default;
    explicit TestFunction(std::shared_ptr<const FamilyImpl> impl) : impl_(std::move(impl)) {}

    static TestFunction gaussian();
    static TestFunction odd_gaussian();
    static TestFunction hermite_gaussian(int k);
    static TestFunction poisson_kernel(const PSParams& p, cplx z);
    static TestFunction bump_on_half_line(double a, double b); // support (a,b), 0 outside

    TestFunction translated(double u) const;
    TestFunction dilated(double t) const;
    TestFunction scaled(cplx c) const;
    TestFunction derivative(int m) const;
    TestFunction monomial_mul(int k) const; // x^k f(x)

    cplx value(double x) const { return impl_->value(x); }
    cplx deriv(int k, double x) const;
    Jet jet(double x, int order) const { return impl_->jet(x, order); }
    std::vector<cplx> taylor0(int order) const { return impl_->taylor0(order); }
    const FamilyImpl& impl() const { return *impl_; }
    std::shared_ptr<const FamilyImpl> impl_ptr() const { return impl_; }

private:
    std::shared_ptr<const FamilyImpl> impl_;
};

// f_infty(x) = (sgn x)^{ell/2} |x|^{-2 lambda} f(-1/x)
TestFunction f_infty(const TestFunction& f, const PSParams& p);

// (pi_{lambda,ell}(gtilde) f)(x), principal branches
cplx pi_action(const GTildeElement& gt, const TestFunction& f, const PSParams& p, double x);

struct FourierOptions {
    QuadratureSpec quad;
    std::optional<int> m_override;
    bool allow_closed_form = true;
};

// generalized Fourier transform F f(t), t != 0
cplx fourier(const TestFunction& f, const PSParams& p, double t,
             const FourierOptions& opt = {});

// regularized F f(0) = Phi_+(f;1) + Phi_-(f;1)
cplx fourier_at_zero(const TestFunction& f, const PSParams& p);

// regularized (F f)^(k)(0)
cplx fourier_deriv_at_zero(const TestFunction& f, const PSParams& p, int k);

// Fourier transform of the Poisson kernel p_{lambda,ell,z}; pole marker when
// t = 0 and lambda in {(1-k)/2}
MeromorphicValue poisson_kernel_ft(const PSParams& p, cplx z, double t);

enum class ZetaRoute { Continued, Reduction };

// local zeta Phi_sign(f;s), meromorphically continued
MeromorphicValue local_zeta(const TestFunction& f, const PSParams& p, cplx s, int sign,
                            ZetaRoute route = ZetaRoute::Continued, int reduction_m = 4);

// residue of Phi_sign at s = -k (dual_side=false) or s = 2 lambda + k (true)
cplx local_zeta_residue(const TestFunction& f, const PSParams& p, int k, int sign,
                        bool at_shifted_pole);

// dual local zeta Phi_sign(F f; s) by direct integration (Re s > m0)
cplx dual_local_zeta(const TestFunction& f, const PSParams& p, cplx s, int sign,
                     double abs_tol = 1e-10);

// max-norm residual of the local functional equation at s
double lfe_residual(const TestFunction& f, const PSParams& p, cplx s);

// residue data of Phi_sign(F f; s); throws domain_error inside the
// double-pole set A of integral/half-integral lambda
MeromorphicValue dual_residue(const TestFunction& f, const PSParams& p, int k, int sign,
                              bool at_shifted_pole);

} // namespace msf
