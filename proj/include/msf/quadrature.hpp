#pragma once

#include "msf/jets.hpp"
#include <functional>
#include <stdexcept>
#include <vector>

namespace msf {

struct QuadratureSpec {
    enum class Scheme { DoubleExponential, TailExtrapolatedOscillatory };
    Scheme scheme = Scheme::TailExtrapolatedOscillatory;
    double abs_tol = 1e-10;
    int max_levels = 12;
};

struct QuadFailure : std::runtime_error {
    QuadFailure(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

struct QuadResult {
    cplx value{0.0};
    double err = 0.0;
};

using RealFn = std::function<cplx(double)>;

// 15-point Gauss-Kronrod on [a,b]; err from the embedded 7-point rule
QuadResult gauss_kronrod_15(const RealFn& f, double a, double b);

// bisection-adaptive GK15
QuadResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                              int max_intervals = 4000);

// tanh-sinh on a finite interval; tolerates endpoint singularities
QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b, double abs_tol,
                               int max_levels = 12);

// exp-sinh on (0, inf); integrand must decay exponentially
QuadResult integrate_exp_sinh(const RealFn& f, double abs_tol, int max_levels = 12);

// Levin t-transform of the series with terms `terms`; returns the
// accelerated sum of the whole series and an error estimate.
QuadResult levin_sum(const std::vector<cplx>& terms);

// How the integrand of fourier_integral decays.
struct DecayHint {
    enum class Kind { GaussianLike, Algebraic, Compact } kind = Kind::Algebraic;
    double exponent = 2.0;    // |g(x)| <~ C |x|^{-exponent} for Kind::Algebraic
    double support = 1.0;     // |g| negligible beyond this for Compact
};

// \int_R g(x) e^{2 pi i x t} dx for t != 0.
QuadResult fourier_integral(const RealFn& g, double t, const DecayHint& hint,
                            const QuadratureSpec& spec);

// in-place radix-2 FFT, sign=+1 computes sum a_k e^{+2 pi i jk/n}
void fft_pow2(std::vector<cplx>& a, int sign);

// Trapezoid/Poisson evaluation of F(t_j) = \int g(x) e^{2 pi i x t_j} dx on the
// uniform grid t_j = j / (2 X), j = 0..npts/2, from npts samples on [-X, X).
// Accuracy is governed by the caller's choice of X (truncation) and npts
// (aliasing); npts must be a power of two.
std::vector<cplx> fourier_uniform_grid(const RealFn& g, double X, int npts);

} // namespace msf
