#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace msf {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// r must be integral and fit in int64
inline long long to_int64(const Rat& r) {
    if (!is_integer(r)) throw std::domain_error("to_int64: not an integer");
    return rat_num(r).convert_to<long long>();
}

inline long long to_int64(const Int& n) { return n.convert_to<long long>(); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline int sign_of(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }
inline int sign_of(const Int& n) { return n < 0 ? -1 : (n > 0 ? 1 : 0); }

// Parses "a", "-a", "a/b".
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("rat_from_string: zero denominator");
    return Rat(num) / Rat(den);
}

inline std::string rat_to_string(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// Euclidean mod: result in [0, m)
inline Int mod_euclid(Int a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

inline long long mod_euclid(long long a, long long m) {
    long long r = a % m;
    if (r < 0) r += (m < 0 ? -m : m);
    return r;
}

} // namespace msf
