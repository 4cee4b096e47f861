#pragma once

#include "msf/coeffs.hpp"
#include "msf/line_model.hpp"
#include <vector>

namespace msf {

struct SummationReport {
    cplx lhs{0.0}, rhs{0.0};
    double residual = 0.0;
    long long truncation = 0;
    double tail_bound = 0.0;
};

// partial sum of xi_pm(alpha;s) = sum alpha(+-n)/n^s; absolute-convergence
// region Re(s) > growth_degree + 1 only
cplx xi_partial(const CoefficientSystem& cs, int sign, cplx s, long long cutoff,
                bool beta_side = false, double* tail_bound = nullptr);

// |Z_direct - Z_factorized| for the zeta integral with test function f
double zeta_integral_check(const CoefficientSystem& cs, const TestFunction& f,
                           const PSParams& p, cplx s, long long cutoff = 4000);

// both sides of the level-N Ferrar-Suzuki summation formula
SummationReport summation_check(const CoefficientSystem& cs, const TestFunction& f,
                                const PSParams& p, long long cutoff);

// context holding the transforms F f_infty(n/(N r^2)) shared across psi
struct TwistedContext {
    long long r = 0;
    long long cutoff_lhs = 0, cutoff_rhs = 0;
    std::vector<cplx> Ff;      // index n = 1..cutoff_lhs, negative side too
    std::vector<cplx> FfNeg;
    std::vector<cplx> FfInf;   // F f_infty(n/(N r^2)), n = 1..cutoff_rhs
    std::vector<cplx> FfInfNeg;
    cplx Ff0{0.0}, FfInf0{0.0};
    cplx f_at_inf{0.0}, finf_at_inf{0.0};
    double tail_bound = 0.0;
};

TwistedContext make_twisted_context(const CoefficientSystem& cs, const TestFunction& f,
                                    const PSParams& p, long long r, long long cutoff);

SummationReport twisted_summation_check(const CoefficientSystem& cs, const TwistedContext& ctx,
                                        const DirichletCharacter& psi);

SummationReport twisted_summation_check(const CoefficientSystem& cs, long long r,
                                        const DirichletCharacter& psi, const TestFunction& f,
                                        const PSParams& p, long long cutoff);

struct MaassEvalSpec {
    double tol = 1e-8;
    long long m_min = 16;
    double c_max = 1e9; // automorphy harness filters |c| <= c_max
};

long long maass_truncation(const CoefficientSystem& cs, double y, const MaassEvalSpec& spec);

// F_alpha(z): Whittaker expansion of the Poisson transform
cplx maass_F(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec);
cplx maass_G(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec);

// max_z |(F |_ell w_N)(z) - G(z)|
double maass_wN_check(const CoefficientSystem& cs, const std::vector<cplx>& grid,
                      const MaassEvalSpec& spec);

// max over gammas and grid of |(F |_ell gamma~)(z) - chi(gamma~) F(z)|
double maass_automorphy_check(const CoefficientSystem& cs, const std::vector<Mat2>& gammas,
                              const ModCharacter& chi, const std::vector<cplx>& grid,
                              const MaassEvalSpec& spec);

// |Delta_{ell/2} F(z) - (lambda - ell/4)(1 - lambda - ell/4) F(z)| by
// 5-point central differences with a Richardson step pair
double laplacian_check(const std::function<cplx(cplx)>& F, cplx eigenvalue_lambda, int ell,
                       cplx z, double h);
double laplacian_check_F(const CoefficientSystem& cs, cplx z, const MaassEvalSpec& spec,
                         double h);

// the default verification grid
std::vector<cplx> default_grid();

} // namespace msf
