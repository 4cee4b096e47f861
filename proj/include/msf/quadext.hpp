#pragma once

#include "msf/rational.hpp"
#include <cmath>
#include <ostream>

namespace msf {

// Elements a + b*sqrt(d) of a real quadratic extension, d a squarefree
// positive integer (d == 1 means plain rationals).  Used so that matrix
// entries of lifted group elements involving sqrt(N) stay exact.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(1) {}
    QuadExt(Rat a) : a_(std::move(a)), b_(0), d_(1) {}
    QuadExt(long long a) : a_(a), b_(0), d_(1) {}
    QuadExt(Rat a, Rat b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ <= 0) throw std::domain_error("QuadExt: radical must be positive");
        if (d_ == 1) { a_ += b_; b_ = 0; }
        if (b_ == 0) d_ = 1;
    }

    // sqrt(n) for a positive integer n, with the square part extracted
    static QuadExt sqrt_of(long long n) {
        if (n <= 0) throw std::domain_error("QuadExt::sqrt_of: need n > 0");
        long long f = 1, d = n;
        for (long long p = 2; p * p <= d; ++p) {
            while (d % (p * p) == 0) { d /= p * p; f *= p; }
        }
        if (d == 1) return QuadExt(Rat(f));
        return QuadExt(Rat(0), Rat(f), d);
    }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    long long d() const { return d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    double to_double() const {
        return msf::to_double(a_) + msf::to_double(b_) * std::sqrt(double(d_));
    }

    friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_ == 1 ? 1 : x.d_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        long long d = merge_radical(x, y);
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        long long d = merge_radical(x, y);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }

    QuadExt inverse() const {
        Rat nrm = a_ * a_ - b_ * b_ * d_;
        if (nrm == 0) throw std::domain_error("QuadExt: division by zero");
        return QuadExt(a_ / nrm, -b_ / nrm, d_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return (x - y).is_zero();
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    // exact sign of a + b*sqrt(d)
    int sign() const {
        int sa = sign_of(a_), sb = sign_of(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with b^2 d
        Rat diff = a_ * a_ - b_ * b_ * d_;
        int sd = sign_of(diff);
        return sd == 0 ? 0 : sa * sd;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
        os << rat_to_string(x.a_);
        if (x.b_ != 0) os << "+(" << rat_to_string(x.b_) << ")*sqrt(" << x.d_ << ")";
        return os;
    }

private:
    static long long merge_radical(const QuadExt& x, const QuadExt& y) {
        if (x.d_ == y.d_ || y.b_ == 0) return x.d_;
        if (x.b_ == 0) return y.d_;
        throw std::domain_error("QuadExt: mixed radicals");
    }

    Rat a_, b_;
    long long d_;
};

} // namespace msf
