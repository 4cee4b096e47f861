#include "msf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace msf {

namespace {

const double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

} // namespace

QuadResult gauss_kronrod_15(const RealFn& f, double a, double b) {
    double hw = 0.5 * (b - a), c = 0.5 * (a + b);
    cplx fc = f(c);
    cplx resk = kGK15WeightsK[7] * fc;
    cplx resg = kGK15WeightsG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = hw * kGK15Nodes[i];
        cplx s = f(c - dx) + f(c + dx);
        resk += kGK15WeightsK[i] * s;
        if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * s;
    }
    QuadResult r;
    r.value = resk * hw;
    double diff = std::abs(resk - resg) * std::abs(hw);
    r.err = diff == 0.0 ? 0.0 : std::min(diff, 200.0 * diff * std::sqrt(200.0 * diff));
    r.err = std::max(r.err, 1e-16 * std::abs(r.value));
    return r;
}

QuadResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                              int max_intervals) {
    struct Piece {
        double a, b, err;
        cplx val;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    std::priority_queue<Piece> q;
    QuadResult whole = gauss_kronrod_15(f, a, b);
    q.push({a, b, whole.err, whole.value});
    cplx total = whole.value;
    double toterr = whole.err;
    int n = 1;
    while (toterr > abs_tol && n < max_intervals) {
        Piece p = q.top();
        q.pop();
        double m = 0.5 * (p.a + p.b);
        QuadResult l = gauss_kronrod_15(f, p.a, m);
        QuadResult r = gauss_kronrod_15(f, m, p.b);
        total += l.value + r.value - p.val;
        toterr += l.err + r.err - p.err;
        q.push({p.a, m, l.err, l.value});
        q.push({m, p.b, r.err, r.value});
        ++n;
    }
    if (toterr > 10 * abs_tol + 1e-300)
        throw QuadFailure("integrate_adaptive: tolerance not met", toterr);
    return {total, std::max(toterr, 0.0)};
}

QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b, double abs_tol,
                               int max_levels) {
    // x = c + hw * tanh(pi/2 sinh t)
    double hw = 0.5 * (b - a), c = 0.5 * (a + b);
    const double tmax = 4.0;
    auto eval = [&](double t) -> cplx {
        double sh = std::sinh(t);
        double u = 0.5 * M_PI * sh;
        double sech = 1.0 / std::cosh(u);
        double w = 0.5 * M_PI * std::cosh(t) * sech * sech;
        if (w < 1e-300) return 0.0;
        double x = std::tanh(u);
        double xx = c + hw * x;
        if (xx <= a || xx >= b) return 0.0; // rounding at the very edge
        return f(xx) * w;
    };
    double h = 1.0;
    cplx sum = eval(0.0);
    for (double t = h; t <= tmax; t += h) sum += eval(t) + eval(-t);
    cplx prev = sum * h * hw;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        cplx add = 0.0;
        for (double t = h; t <= tmax; t += 2 * h) add += eval(t) + eval(-t);
        sum += add;
        cplx cur = sum * h * hw;
        double err = std::abs(cur - prev);
        if (level >= 3 && err <= abs_tol) return {cur, err};
        prev = cur;
    }
    double err = std::abs(prev) * 1e-12 + abs_tol;
    if (err > 10 * abs_tol)
        throw QuadFailure("integrate_tanh_sinh: tolerance not met", err);
    return {prev, err};
}

QuadResult integrate_exp_sinh(const RealFn& f, double abs_tol, int max_levels) {
    // x = exp(pi/2 sinh t)
    const double tmax = 4.3;
    auto eval = [&](double t) -> cplx {
        double u = 0.5 * M_PI * std::sinh(t);
        if (u > 690.0 || u < -690.0) return 0.0;
        double x = std::exp(u);
        double w = x * 0.5 * M_PI * std::cosh(t);
        cplx fx = f(x);
        cplx v = fx * w;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return 0.0;
        return v;
    };
    double h = 1.0;
    cplx sum = eval(0.0);
    for (double t = h; t <= tmax; t += h) sum += eval(t) + eval(-t);
    cplx prev = sum * h;
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        cplx add = 0.0;
        for (double t = h; t <= tmax; t += 2 * h) add += eval(t) + eval(-t);
        sum += add;
        cplx cur = sum * h;
        double err = std::abs(cur - prev);
        if (level >= 4 && err <= abs_tol) return {cur, err};
        prev = cur;
    }
    double err = std::abs(prev) * 1e-11 + abs_tol;
    if (err > 100 * abs_tol)
        throw QuadFailure("integrate_exp_sinh: tolerance not met", err);
    return {prev, err};
}

QuadResult levin_sum(const std::vector<cplx>& terms) {
    // Levin u-transform (beta = 1) by the direct binomial sums; the k-th
    // estimate uses partial sums s_0..s_k
    size_t n = terms.size();
    std::vector<cplx> s(n);
    cplx acc = 0.0;
    for (size_t j = 0; j < n; ++j) {
        acc += terms[j];
        s[j] = acc;
    }
    cplx best = acc;
    double best_err = std::abs(terms.back());
    cplx prev_est = acc;
    bool have_prev = false;
    for (size_t k = 2; k < n; ++k) {
        cplx num = 0.0, den = 0.0;
        double binom = 1.0; // C(k, j)
        for (size_t j = 0; j <= k; ++j) {
            cplx w = double(j + 1) * terms[j];
            if (std::abs(w) < 1e-300) w = 1e-300;
            double damp = std::pow(double(j + 1) / double(k + 1), double(k) - 1.0);
            double coef = (j % 2 ? -1.0 : 1.0) * binom * damp;
            num += coef * s[j] / w;
            den += coef / w;
            binom = binom * double(k - j) / double(j + 1);
        }
        if (std::abs(den) > 1e-280) {
            cplx est = num / den;
            if (have_prev) {
                double err = std::abs(est - prev_est);
                if (err < best_err) {
                    best = est;
                    best_err = err;
                }
            }
            prev_est = est;
            have_prev = true;
        }
    }
    return {best, best_err};
}

QuadResult fourier_integral(const RealFn& g, double t, const DecayHint& hint,
                            const QuadratureSpec& spec) {
    const double tol = spec.abs_tol;
    auto integrand = [&](double x) -> cplx {
        return g(x) * std::exp(cplx(0.0, 2.0 * M_PI * x * t));
    };

    // core half-width
    double A;
    switch (hint.kind) {
        case DecayHint::Kind::Compact:
            A = hint.support + 1.0;
            break;
        case DecayHint::Kind::GaussianLike: {
            A = 4.0;
            while (A < 64.0 && (std::abs(g(A)) > tol / 10 || std::abs(g(-A)) > tol / 10))
                A += 2.0;
            break;
        }
        case DecayHint::Kind::Algebraic:
        default:
            A = 16.0;
            break;
    }

    // split the core so no subinterval holds more than ~1 period
    double seg = std::min(2.0 * A, std::max(0.25, 0.5 / std::abs(t)));
    int nseg = std::max(1, int(std::ceil(2.0 * A / seg)));
    QuadResult core{0.0, 0.0};
    double core_tol = tol / (3.0 * nseg);
    for (int i = 0; i < nseg; ++i) {
        double a = -A + 2.0 * A * i / nseg, b = -A + 2.0 * A * (i + 1) / nseg;
        QuadResult piece = integrate_adaptive(integrand, a, b, core_tol);
        core.value += piece.value;
        core.err += piece.err;
    }
    if (hint.kind != DecayHint::Kind::Algebraic) return core;

    // algebraic tails
    double aexp = hint.exponent;
    QuadResult total = core;
    if (t == 0.0) {
        // non-oscillatory: geometric segments until the decay bound covers the rest
        for (int side = 0; side < 2; ++side) {
            double dir = side == 0 ? 1.0 : -1.0;
            double x0 = A;
            for (int j = 0; j < 40; ++j) {
                double cb = std::abs(g(dir * x0)) * std::pow(x0, aexp);
                double bound = (cb + 1e-30) * std::pow(x0, 1.0 - aexp) / (aexp - 1.0);
                if (bound < tol / 4) {
                    total.err += bound;
                    break;
                }
                QuadResult piece =
                    integrate_adaptive([&](double x) { return g(x); }, dir * x0,
                                       dir * 2.0 * x0, tol / 40.0);
                total.value += dir * piece.value;
                total.err += piece.err;
                x0 *= 2.0;
            }
        }
        return total;
    }
    double h = 0.5 / std::abs(t);
    for (int side = 0; side < 2; ++side) {
        double dir = side == 0 ? 1.0 : -1.0;
        double cbound = std::abs(g(dir * A)) * std::pow(A, aexp) + std::abs(g(dir * 2 * A)) * std::pow(2 * A, aexp);
        double plain_tail = (cbound + 1e-30) * std::pow(A, 1.0 - aexp) / (aexp - 1.0);
        if (plain_tail < tol / 4) {
            total.err += plain_tail;
            continue;
        }
        size_t max_terms = 64;
        std::vector<cplx> slices;
        slices.reserve(max_terms);
        double x0 = A;
        for (size_t k = 0; k < max_terms; ++k) {
            QuadResult piece = integrate_adaptive(
                integrand, dir * x0, dir * (x0 + h), tol / 50.0);
            slices.push_back(dir * piece.value);
            x0 += h;
            if (k >= 7) {
                QuadResult acc = levin_sum(slices);
                if (acc.err < tol / 4) {
                    total.value += acc.value;
                    total.err += acc.err;
                    goto side_done;
                }
            }
        }
        {
            QuadResult acc = levin_sum(slices);
            if (acc.err > 50 * tol)
                throw QuadFailure("fourier_integral: oscillatory tail did not converge",
                                  acc.err);
            total.value += acc.value;
            total.err += acc.err;
        }
    side_done:;
    }
    return total;
}

void fft_pow2(std::vector<cplx>& a, int sign) {
    size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * M_PI / double(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> fourier_uniform_grid(const RealFn& g, double X, int npts) {
    double h = 2.0 * X / npts;
    std::vector<cplx> a((size_t(npts)));
    for (int k = 0; k < npts; ++k) a[size_t(k)] = g(-X + k * h);
    fft_pow2(a, +1);
    // t_j = j/(2X); e^{2 pi i x_k t_j} with x_k = -X + k h gives phase (-1)^j
    std::vector<cplx> out(size_t(npts / 2 + 1));
    for (int j = 0; j <= npts / 2; ++j) {
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        out[size_t(j)] = a[size_t(j)] * h * sgn;
    }
    return out;
}

} // namespace msf
