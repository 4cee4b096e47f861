#include "msf/quadform.hpp"

#include "msf/zetafn.hpp"
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace msf {

// ----------------------------------------------------------------- cache

std::optional<long long> CountCache::get(bool star, long long l, long long n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find({star, l, n});
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void CountCache::put(bool star, long long l, long long n, long long cnt) {
    std::lock_guard<std::mutex> lock(mu_);
    map_[{star, l, n}] = cnt;
}

void CountCache::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    std::string header;
    std::getline(in, header);
    if (header != "# A-digest:" + digest_) return;
    std::string tag;
    long long l, n, c;
    std::lock_guard<std::mutex> lock(mu_);
    while (in >> tag >> l >> n >> c) {
        if (tag == "r")
            map_[{false, l, n}] = c;
        else if (tag == "rstar")
            map_[{true, l, n}] = c;
    }
}

void CountCache::save(const std::string& path) const {
    std::ofstream out(path);
    out << "# A-digest:" << digest_ << "\n";
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [key, c] : map_) {
        auto [star, l, n] = key;
        out << (star ? "rstar " : "r ") << l << " " << n << " " << c << "\n";
    }
}

// ------------------------------------------------------- matrix utilities

namespace {

Rat rat_det(RatMatrix M) {
    int m = int(M.size());
    Rat det(1);
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int row = col; row < m; ++row)
            if (M[size_t(row)][size_t(col)] != 0) { piv = row; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(M[size_t(piv)], M[size_t(col)]);
            det = -det;
        }
        det *= M[size_t(col)][size_t(col)];
        for (int row = col + 1; row < m; ++row) {
            if (M[size_t(row)][size_t(col)] == 0) continue;
            Rat f = M[size_t(row)][size_t(col)] / M[size_t(col)][size_t(col)];
            for (int j = col; j < m; ++j)
                M[size_t(row)][size_t(j)] -= f * M[size_t(col)][size_t(j)];
        }
    }
    return det;
}

RatMatrix rat_inverse(const RatMatrix& A) {
    int m = int(A.size());
    RatMatrix M = A, I(size_t(m), std::vector<Rat>(size_t(m), Rat(0)));
    for (int i = 0; i < m; ++i) I[size_t(i)][size_t(i)] = 1;
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int row = col; row < m; ++row)
            if (M[size_t(row)][size_t(col)] != 0) { piv = row; break; }
        if (piv < 0) throw std::domain_error("rat_inverse: singular");
        std::swap(M[size_t(piv)], M[size_t(col)]);
        std::swap(I[size_t(piv)], I[size_t(col)]);
        Rat d = M[size_t(col)][size_t(col)];
        for (int j = 0; j < m; ++j) {
            M[size_t(col)][size_t(j)] /= d;
            I[size_t(col)][size_t(j)] /= d;
        }
        for (int row = 0; row < m; ++row) {
            if (row == col || M[size_t(row)][size_t(col)] == 0) continue;
            Rat f = M[size_t(row)][size_t(col)];
            for (int j = 0; j < m; ++j) {
                M[size_t(row)][size_t(j)] -= f * M[size_t(col)][size_t(j)];
                I[size_t(row)][size_t(j)] -= f * I[size_t(col)][size_t(j)];
            }
        }
    }
    return I;
}

// signature by symmetric (congruence) diagonalization over Q
std::pair<int, int> signature_of(RatMatrix M) {
    int m = int(M.size());
    int pos = 0, neg = 0;
    for (int k = 0; k < m; ++k) {
        if (M[size_t(k)][size_t(k)] == 0) {
            int sw = -1;
            for (int i = k + 1; i < m; ++i)
                if (M[size_t(i)][size_t(i)] != 0) { sw = i; break; }
            if (sw >= 0) {
                std::swap(M[size_t(k)], M[size_t(sw)]);
                for (auto& row : M) std::swap(row[size_t(k)], row[size_t(sw)]);
            } else {
                int j = -1;
                for (int i = k + 1; i < m; ++i)
                    if (M[size_t(k)][size_t(i)] != 0) { j = i; break; }
                if (j < 0) throw std::domain_error("signature_of: singular block");
                for (int t = 0; t < m; ++t) M[size_t(k)][size_t(t)] += M[size_t(j)][size_t(t)];
                for (int t = 0; t < m; ++t) M[size_t(t)][size_t(k)] += M[size_t(t)][size_t(j)];
            }
        }
        Rat piv = M[size_t(k)][size_t(k)];
        if (piv > 0) ++pos; else ++neg;
        for (int i = k + 1; i < m; ++i) {
            if (M[size_t(i)][size_t(k)] == 0) continue;
            Rat f = M[size_t(i)][size_t(k)] / piv;
            for (int j = k; j < m; ++j) M[size_t(i)][size_t(j)] -= f * M[size_t(k)][size_t(j)];
            for (int j = k; j < m; ++j) M[size_t(j)][size_t(i)] -= f * M[size_t(j)][size_t(k)];
        }
    }
    return {pos, neg};
}

bool half_integral(const RatMatrix& M) {
    int m = int(M.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (M[size_t(i)][size_t(j)] != M[size_t(j)][size_t(i)]) return false;
            Rat v = i == j ? M[size_t(i)][size_t(j)] : 2 * M[size_t(i)][size_t(j)];
            if (!is_integer(v)) return false;
        }
    return true;
}

std::string form_digest(const RatMatrix& A) {
    std::string s = std::to_string(A.size());
    for (const auto& row : A)
        for (const auto& v : row) s += ";" + rat_to_string(v);
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : s) {
        h ^= std::uint64_t((unsigned char)ch);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace

QuadraticFormData analyze(const RatMatrix& A) {
    int m = int(A.size());
    if (m == 0) throw std::domain_error("analyze: empty matrix");
    for (const auto& row : A)
        if (int(row.size()) != m) throw std::domain_error("analyze: not square");
    if (!half_integral(A))
        throw std::domain_error("analyze: matrix must be half-integral symmetric");

    QuadraticFormData qf;
    qf.A = A;
    qf.m = m;
    Rat d2 = rat_det(A);
    for (int i = 0; i < m; ++i) d2 *= 2; // det(2A) = 2^m det(A)
    if (d2 == 0) throw std::domain_error("analyze: singular matrix");
    if (!is_integer(d2)) throw std::logic_error("analyze: det(2A) not integral");
    qf.D = rat_num(d2);
    auto [pp, qq] = signature_of(A);
    qf.p = pp;
    qf.q = qq;

    // level: smallest divisor N of 4|D| with N * (1/4) A^{-1} half-integral
    RatMatrix Ainv = rat_inverse(A);
    Int fourD = 4 * abs(qf.D);
    long long fd = to_int64(fourD);
    long long level = 0;
    for (long long cand = 1; cand <= fd; ++cand) {
        if (fd % cand != 0) continue;
        RatMatrix NB = Ainv;
        for (auto& row : NB)
            for (auto& v : row) v *= Rat(cand) / 4;
        if (half_integral(NB)) { level = cand; break; }
    }
    if (level == 0) throw std::logic_error("analyze: no level found below 4|D|");
    qf.N = level;
    qf.B = Ainv;
    for (auto& row : qf.B)
        for (auto& v : row) v *= Rat(level) / 4;
    Rat db = rat_det(qf.B);
    for (int i = 0; i < m; ++i) db *= 2;
    qf.detB = rat_num(db);

    auto views = [&](const RatMatrix& M, std::vector<long long>& diag,
                     std::vector<std::vector<long long>>& off) {
        diag.assign(size_t(m), 0);
        off.assign(size_t(m), std::vector<long long>(size_t(m), 0));
        for (int i = 0; i < m; ++i) {
            diag[size_t(i)] = to_int64(M[size_t(i)][size_t(i)]);
            for (int j = i + 1; j < m; ++j)
                off[size_t(i)][size_t(j)] = to_int64(2 * M[size_t(i)][size_t(j)]);
        }
    };
    views(qf.A, qf.Adiag, qf.Aoff);
    views(qf.B, qf.Bdiag, qf.Boff);

    qf.digest = form_digest(A);
    qf.cache = std::make_shared<CountCache>(qf.digest);
    return qf;
}

QuadraticFormData analyze_form_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int m = -1;
    std::vector<std::string> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed;
        for (char c : line)
            if (!isspace((unsigned char)c)) trimmed += c;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (m < 0) {
            if (trimmed.rfind("m=", 0) != 0)
                throw std::domain_error("form file line " + std::to_string(lineno) +
                                        ": expected 'm = <int>'");
            m = std::stoi(trimmed.substr(2));
            continue;
        }
        rows.push_back(line);
    }
    if (m <= 0 || int(rows.size()) != m)
        throw std::domain_error("form file: need m and exactly m rows");
    RatMatrix A((size_t(m)));
    for (int i = 0; i < m; ++i) {
        std::istringstream rs(rows[size_t(i)]);
        std::string tok;
        while (rs >> tok) A[size_t(i)].push_back(rat_from_string(tok));
        if (int(A[size_t(i)].size()) != m)
            throw std::domain_error("form file: row " + std::to_string(i + 1) +
                                    " needs " + std::to_string(m) + " entries");
    }
    return analyze(A);
}

// ------------------------------------------------------- counting engine

namespace {

using i128 = __int128;

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e--) {
        if (r > (long long)4e18 / std::max(b, 1LL))
            throw BudgetError("prime power exceeds 64-bit budget");
        r *= b;
    }
    return r;
}

long long mod_ll(i128 v, long long M) {
    long long r = (long long)(v % M);
    return r < 0 ? r + M : r;
}

// #{x mod p^k : a x^2 + b x + c = 0 (mod p^k)} by Hensel branching
long long count_1d(long long a, long long b, long long c, long long p, int k) {
    if (k == 0) return 1;
    long long pk = pow_ll(p, k);
    a = mod_euclid(a, pk);
    b = mod_euclid(b, pk);
    c = mod_euclid(c, pk);
    if (a == 0 && b == 0 && c == 0) return pk;
    if (a % p == 0 && b % p == 0 && c % p == 0)
        return p * count_1d(a / p, b / p, c / p, p, k - 1);
    long long total = 0;
    long long pk1 = pk / p;
    for (long long x0 = 0; x0 < p; ++x0) {
        long long f0 = mod_ll((i128)a * x0 % pk * x0 + (i128)b * x0 + c, pk);
        if (f0 % p != 0) continue;
        long long g0 = mod_ll((i128)2 * a % pk * x0 + b, pk);
        if (g0 % p != 0) {
            total += 1; // nonsingular roots lift uniquely
        } else if (k == 1) {
            total += 1;
        } else {
            // x = x0 + p y: p^2 a y^2 + p g0 y + f0 = 0 (mod p^k)
            total += count_1d(mod_euclid(p * (a % pk1), pk1), mod_euclid(g0, pk1),
                              mod_euclid(f0 / p, pk1), p, k - 1);
        }
    }
    return total;
}

struct FormView {
    int m;
    const std::vector<long long>* diag;
    const std::vector<std::vector<long long>>* off;
    Int det2;
    long long modulus_mult; // 1 for the A side, N for the dual side
};

FormView a_view(const QuadraticFormData& qf) {
    return {qf.m, &qf.Adiag, &qf.Aoff, qf.D, 1};
}
FormView b_view(const QuadraticFormData& qf) {
    return {qf.m, &qf.Bdiag, &qf.Boff, qf.detB, qf.N};
}

long long form_value_mod(const FormView& v, const std::vector<long long>& x, long long M) {
    i128 acc = 0;
    for (int i = 0; i < v.m; ++i) {
        acc += (i128)(*v.diag)[size_t(i)] * x[size_t(i)] % M * x[size_t(i)];
        for (int j = i + 1; j < v.m; ++j)
            acc += (i128)(*v.off)[size_t(i)][size_t(j)] * x[size_t(i)] % M * x[size_t(j)];
        acc %= M;
    }
    return mod_ll(acc, M);
}

constexpr long long kEnumBudget = 20'000'000;

long long enum_count(const FormView& v, long long M, long long n) {
    double states = std::pow(double(M), v.m);
    if (states > double(kEnumBudget))
        throw BudgetError("enumeration budget exceeded at modulus " + std::to_string(M));
    long long nn = mod_euclid(n, M);
    std::vector<long long> x(size_t(v.m), 0);
    long long cnt = 0;
    for (;;) {
        if (form_value_mod(v, x, M) == nn) ++cnt;
        int i = 0;
        for (; i < v.m; ++i) {
            if (++x[size_t(i)] < M) break;
            x[size_t(i)] = 0;
        }
        if (i == v.m) break;
    }
    return cnt;
}

// binary forms: slice the first variable and count the 1-d congruence
long long slice_count_2d(const FormView& v, long long p, int e, long long n) {
    long long pe = pow_ll(p, e);
    if (pe > 6'000'000) throw BudgetError("2-d slice budget exceeded");
    long long a11 = (*v.diag)[0], a22 = (*v.diag)[1], b12 = (*v.off)[0][1];
    long long nn = mod_euclid(n, pe);
    long long total = 0;
    for (long long u = 0; u < pe; ++u) {
        long long Bc = mod_ll((i128)b12 * u, pe);
        long long Cc = mod_ll((i128)a11 * u % pe * u - nn, pe);
        total += count_1d(a22, Bc, Cc, p, e);
    }
    return total;
}

// number of solutions of Q(v) = n (mod p) for odd p not dividing det(2A)
long long classical_count_mod_p(const FormView& v, long long p, long long n) {
    long long nn = mod_euclid(n, p);
    Int k2 = v.det2;
    for (int i = 0; i < v.m; ++i) k2 *= 2; // det2 * 2^m, square class of det(A)
    if (v.m % 2 == 1) {
        Int K = k2 * nn;
        if ((v.m - 1) / 2 % 2 == 1) K = -K;
        int chi = nn == 0 ? 0 : jacobi_symbol(to_int64(mod_euclid(K, Int(p))), p);
        return pow_ll(p, v.m - 1) + pow_ll(p, (v.m - 1) / 2) * chi;
    }
    Int K = k2;
    if (v.m / 2 % 2 == 1) K = -K;
    int chi = jacobi_symbol(to_int64(mod_euclid(K, Int(p))), p);
    long long corr = nn == 0 ? p - 1 : -1;
    return pow_ll(p, v.m - 1) + pow_ll(p, v.m / 2 - 1) * chi * corr;
}

Int pow_int(long long b, long long e) {
    Int r = 1;
    for (long long i = 0; i < e; ++i) r *= b;
    return r;
}

// p odd, p not dividing det2: primitive solutions Hensel-lift, imprimitive
// ones reduce to n/p^2
Int good_prime_count(const FormView& v, long long p, int e, long long n) {
    if (e == 0) return 1;
    long long nn = mod_euclid(n, p);
    Int prim = Int(classical_count_mod_p(v, p, n)) - (nn == 0 ? 1 : 0);
    Int cnt;
    if (e == 1) {
        cnt = prim + (nn == 0 ? 1 : 0);
    } else {
        cnt = prim * pow_int(p, (long long)(v.m - 1) * (e - 1));
        long long p2 = p * p;
        if (mod_euclid(n, p2) == 0)
            cnt += pow_int(p, v.m) * good_prime_count(v, p, e - 2, n / p2);
    }
    return cnt;
}

Int prime_power_count(const FormView& v, long long p, int e, long long n) {
    if (e == 0) return 1;
    Int bad = 2 * abs(v.det2);
    if (mod_euclid(bad, Int(p)) != 0) return good_prime_count(v, p, e, n);
    if (v.m == 1) return Int(count_1d((*v.diag)[0], 0, -n, p, e));
    if (v.m == 2) return Int(slice_count_2d(v, p, e, n));
    return Int(enum_count(v, pow_ll(p, e), n));
}

// #{v mod M : Q_view(v) = n (mod M)} by CRT over the prime powers of M
long long count_mod(const FormView& v, long long M, long long n) {
    if (M == 1) return 1;
    Int total = 1;
    for (auto [p, e] : factorize(M)) {
        total *= prime_power_count(v, p, e, n);
        if (total == 0) return 0;
    }
    if (total > Int((long long)4e18)) throw BudgetError("count overflow");
    return to_int64(total);
}

} // namespace

long long r_count(const QuadraticFormData& qf, long long l, long long n) {
    if (l < 1) throw std::domain_error("r_count: l must be positive");
    if (auto hit = qf.cache->get(false, l, n)) return *hit;
    long long c = count_mod(a_view(qf), l, n);
    qf.cache->put(false, l, n, c);
    return c;
}

long long r_star_count_dual(const QuadraticFormData& qf, long long l, long long n) {
    // v* mod 2lA with (N/4) v*^T A^{-1} v* = n (mod Nl) pulls back along
    // (Z/Nl)^m -> Z^m/2lA Z^m with fibers of size N^m/|D|
    FormView v = b_view(qf);
    long long cnt = count_mod(v, qf.N * l, n);
    Int scale_num = abs(qf.D);
    Int scale_den = 1;
    for (int i = 0; i < qf.m; ++i) scale_den *= qf.N;
    Int res = scale_num * cnt;
    if (res % scale_den != 0) throw std::logic_error("r_star_count_dual: fiber mismatch");
    Int quo = res / scale_den;
    return to_int64(quo);
}

namespace {

// column-style Hermite normal form; returns a lower-triangular basis with
// positive diagonal spanning the same lattice
std::vector<std::vector<Int>> hermite_lower(std::vector<std::vector<Int>> L) {
    int m = int(L.size());
    // work on columns: L[r][c]
    for (int r = 0; r < m; ++r) {
        // clear row r to the right of column r by gcd steps
        for (int c = r + 1; c < m; ++c) {
            while (L[size_t(r)][size_t(c)] != 0) {
                if (abs(L[size_t(r)][size_t(r)]) > abs(L[size_t(r)][size_t(c)]) ||
                    L[size_t(r)][size_t(r)] == 0) {
                    for (int i = 0; i < m; ++i)
                        std::swap(L[size_t(i)][size_t(r)], L[size_t(i)][size_t(c)]);
                }
                if (L[size_t(r)][size_t(c)] == 0) break;
                Int q = L[size_t(r)][size_t(r)] / L[size_t(r)][size_t(c)];
                for (int i = 0; i < m; ++i)
                    L[size_t(i)][size_t(r)] -= q * L[size_t(i)][size_t(c)];
            }
        }
        if (L[size_t(r)][size_t(r)] < 0)
            for (int i = 0; i < m; ++i) L[size_t(i)][size_t(r)] = -L[size_t(i)][size_t(r)];
    }
    return L;
}

} // namespace

long long r_star_count(const QuadraticFormData& qf, long long l, long long n) {
    if (l < 1) throw std::domain_error("r_star_count: l must be positive");
    if (auto hit = qf.cache->get(true, l, n)) return *hit;

    int m = qf.m;
    std::vector<std::vector<Int>> L(size_t(m), std::vector<Int>(size_t(m), Int(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            L[size_t(i)][size_t(j)] = rat_num(2 * Rat(l) * qf.A[size_t(i)][size_t(j)]);
    auto H = hermite_lower(L);
    Int det = 1;
    for (int i = 0; i < m; ++i) det *= H[size_t(i)][size_t(i)];
    if (det > kEnumBudget) throw BudgetError("r_star_count: coset box too large");

    Int NL = Int(qf.N) * l;
    long long cnt = 0;
    std::vector<Int> t(size_t(m), 0);
    for (;;) {
        // value (N/4) v^T A^{-1} v = v^T B v, exact rational
        Rat val(0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                val += Rat(t[size_t(i)]) * qf.B[size_t(i)][size_t(j)] * Rat(t[size_t(j)]);
        if (!is_integer(val))
            throw std::logic_error("r_star_count: integrality monitor tripped");
        if (mod_euclid(rat_num(val) - n, NL) == 0) ++cnt;
        int i = 0;
        for (; i < m; ++i) {
            if (++t[size_t(i)] < H[size_t(i)][size_t(i)]) break;
            t[size_t(i)] = 0;
        }
        if (i == m) break;
    }
    qf.cache->put(true, l, n, cnt);
    return cnt;
}

// ----------------------------------------------------------- zeta series

namespace {

struct LocalSeq {
    // cnt(k) for k = 0, 1, ...; e0-shifted counts on the dual side
    std::function<Int(int)> cnt;
    long long p;
    int m;
};

// sum_{k>=0} cnt(k) x^k with the tail closed once the sequence follows a
// geometric / interleaved-geometric / affine-geometric pattern
cplx local_factor(const LocalSeq& seq, cplx x) {
    constexpr int kMax = 26;
    std::vector<Int> c;
    auto at = [&](int k) -> const Int& {
        while (int(c.size()) <= k) c.push_back(seq.cnt(int(c.size())));
        return c[size_t(k)];
    };
    auto atd = [&](int k) -> double { return to_double(Rat(at(k))); };
    Int g = pow_int(seq.p, seq.m - 1);
    double gd = to_double(Rat(g));

    auto head_sum = [&](int k0) {
        cplx head = 0.0;
        for (int k = 0; k < k0; ++k) head += atd(k) * std::pow(x, double(k));
        return head;
    };

    for (int k0 = 1; k0 + 4 <= kMax; ++k0) {
        at(k0 + 4);
        // G1: cnt(k+1) = c1 cnt(k)
        if (at(k0) != 0) {
            bool ok = true;
            for (int k = k0; k < k0 + 4; ++k)
                if (at(k + 1) * at(k0) != at(k0 + 1) * at(k)) { ok = false; break; }
            if (ok) {
                cplx ratio = cplx(atd(k0 + 1) / atd(k0));
                if (std::abs(ratio * x) >= 0.95)
                    throw BudgetError("local factor: tail ratio too large (Re w too small?)");
                return head_sum(k0) + atd(k0) * std::pow(x, double(k0)) / (1.0 - ratio * x);
            }
        }
        if (at(k0) == 0 && at(k0 + 1) == 0 && at(k0 + 2) == 0 && at(k0 + 3) == 0 &&
            at(k0 + 4) == 0)
            return head_sum(k0);
        // AFF: cnt(k+1) = g cnt(k) + delta g^k
        {
            at(k0 + 5);
            std::vector<Int> delta;
            for (int k = k0; k <= k0 + 4; ++k) delta.push_back(at(k + 1) - g * at(k));
            bool ok = true;
            for (size_t j = 0; j + 1 < delta.size(); ++j)
                if (delta[j + 1] != g * delta[j]) { ok = false; break; }
            if (ok) {
                double d0 = to_double(Rat(delta[0])); // delta * g^{k0}
                cplx gx = gd * x;
                if (std::abs(gx) >= 0.95)
                    throw BudgetError("local factor: affine tail diverges");
                cplx xs = std::pow(x, double(k0));
                cplx tail = xs * (atd(k0) / (1.0 - gx) +
                                  (d0 / gd) * gx / ((1.0 - gx) * (1.0 - gx)));
                return head_sum(k0) + tail;
            }
        }
        // G2: interleaved geometric with ratio c2 = cnt(k0+2)/cnt(k0)
        if (at(k0) != 0 && at(k0 + 1) != 0) {
            at(k0 + 6);
            bool ok = true;
            for (int k = k0; k + 2 <= k0 + 6; ++k)
                if (at(k + 2) * at(k0) != at(k0 + 2) * at(k)) { ok = false; break; }
            if (ok) {
                cplx c2 = cplx(atd(k0 + 2) / atd(k0));
                if (std::abs(c2 * x * x) >= 0.95)
                    throw BudgetError("local factor: interleaved tail diverges");
                cplx xs = std::pow(x, double(k0));
                cplx num = atd(k0) * xs + atd(k0 + 1) * xs * x;
                return head_sum(k0) + num / (1.0 - c2 * x * x);
            }
        }
    }
    throw BudgetError("local factor: no stabilization detected up to k = 26 at p = " +
                      std::to_string(seq.p));
}

std::vector<long long> primes_up_to(long long P) {
    std::vector<bool> sieve(size_t(P) + 1, true);
    std::vector<long long> out;
    for (long long i = 2; i <= P; ++i) {
        if (!sieve[size_t(i)]) continue;
        out.push_back(i);
        for (long long j = i * i; j <= P; j += i) sieve[size_t(j)] = false;
    }
    return out;
}

struct SeriesSetup {
    FormView view;
    long long n;
    double scale = 1.0; // |D|/N^m on the dual side
};

ZetaValue series_by_euler(const SeriesSetup& su, cplx w, double tol) {
    if (!(w.real() > su.view.m))
        throw std::domain_error("zeta series: need Re(w) > m");
    double sigma = w.real();
    int m = su.view.m;
    auto local_at = [&](long long p) -> cplx {
        int e0 = 0;
        long long q = su.view.modulus_mult;
        while (q % p == 0) { q /= p; ++e0; }
        LocalSeq seq{[&, p, e0](int k) { return prime_power_count(su.view, p, e0 + k, su.n); },
                     p, m};
        cplx x = std::exp(-w * std::log(double(p)));
        return local_factor(seq, x);
    };
    // past the cutoff every prime is good and prime to n, where the classical
    // count gives r(p^k, n) <= 2 p^{(m-1)k}; so |log L_p| <= 4 p^{m-1-sigma}
    // once p^{m-sigma} < 1/2, and the sum is bounded by the integral below
    auto tail_of = [&](long long P) {
        return 8.0 * std::pow(double(P), double(m) - sigma) / (sigma - m);
    };
    long long Pmin = 512;
    Pmin = std::max(Pmin, 2 * (su.n > 0 ? su.n : -su.n) + 16);
    Int bad = 2 * abs(su.view.det2) * su.view.modulus_mult;
    for (auto [p, e] : factorize(to_int64(bad))) {
        (void)e;
        Pmin = std::max(Pmin, 2 * p);
    }
    long long P = Pmin;
    std::map<long long, cplx> factors;
    cplx prod = 1.0;
    for (;;) {
        for (long long p : primes_up_to(P))
            if (!factors.count(p)) {
                cplx f = local_at(p);
                factors[p] = f;
                prod *= f;
            }
        if (tail_of(P) < tol / 2) break;
        if (P > 2'500'000)
            throw BudgetError("zeta series: prime cutoff tail above tolerance (bound " +
                              std::to_string(tail_of(P)) + ")");
        P *= 2;
    }
    double bound = std::abs(prod) * (std::exp(tail_of(P)) - 1.0);
    return {su.scale * prod, su.scale * bound + 1e-16};
}

ZetaValue series_by_brute(const SeriesSetup& su, cplx w,
                          const std::function<long long(long long)>& cnt, long long L) {
    double sigma = w.real();
    int m = su.view.m;
    cplx sum = 0.0;
    double cemp = 1.0;
    for (long long l = 1; l <= L; ++l) {
        long long c = cnt(l);
        sum += double(c) * std::exp(-w * std::log(double(l)));
        double margin = double(c) / (std::pow(double(l), double(m - 1)) * 2.0 * std::sqrt(double(l)));
        cemp = std::max(cemp, margin);
    }
    // r(l,n) <= cemp * l^{m-1} * 2 sqrt(l) empirically; tail by the integral bound
    double expn = sigma - (m - 0.5);
    if (expn <= 1.0) throw std::domain_error("zeta brute: Re(w) too small for the tail bound");
    double bound = 2.0 * cemp * 2.0 * std::pow(double(L), 1.0 - expn) / (expn - 1.0);
    return {sum, bound};
}

} // namespace

ZetaValue z_series(const QuadraticFormData& qf, long long n, cplx w, double tol) {
    return series_by_euler({a_view(qf), n, 1.0}, w, tol);
}

ZetaValue z_star_series(const QuadraticFormData& qf, long long n, cplx w, double tol) {
    double scale = to_double(Rat(Int(abs(qf.D))));
    for (int i = 0; i < qf.m; ++i) scale /= double(qf.N);
    return series_by_euler({b_view(qf), n, scale}, w, tol);
}

ZetaValue z_brute(const QuadraticFormData& qf, long long n, cplx w, long long L) {
    return series_by_brute({a_view(qf), n, 1.0}, w,
                           [&](long long l) { return r_count(qf, l, n); }, L);
}

ZetaValue z_star_brute(const QuadraticFormData& qf, long long n, cplx w, long long L) {
    return series_by_brute({b_view(qf), n, 1.0}, w,
                           [&](long long l) { return r_star_count_dual(qf, l, n); }, L);
}

// ------------------------------------------------- closed forms (m <= 2)

namespace {

cplx closed_for_view(const FormView& view, long long n, cplx w) {
    int m = view.m;
    if (m > 2)
        throw std::domain_error("z_closed: closed evaluation implemented for m <= 2");
    // bad primes: p | 2 det2, p | n, p | modulus multiplier
    std::vector<long long> bad;
    {
        Int prod = 2 * abs(view.det2) * view.modulus_mult;
        if (n != 0) prod *= (n > 0 ? n : -n);
        for (auto [p, e] : factorize(to_int64(prod))) {
            (void)e;
            bad.push_back(p);
        }
    }
    long long D0;
    if (m == 1) {
        D0 = n == 0 ? 1 : fundamental_discriminant(to_int64(Int(2) * view.det2 * n));
    } else {
        Int K = -4 * view.det2; // (-1)^{m/2} det2 2^m for m = 2
        D0 = fundamental_discriminant(to_int64(K));
    }
    auto chi = [&](long long p) -> double { return double(kronecker_symbol(D0, p)); };

    cplx global;
    if (m == 1) {
        if (n != 0)
            global = riemann_zeta(w) * dirichlet_L_kronecker(w, D0) / riemann_zeta(2.0 * w);
        else
            global = riemann_zeta(w) * riemann_zeta(2.0 * w - 1.0) / riemann_zeta(2.0 * w);
    } else {
        if (n != 0)
            global = riemann_zeta(w - 1.0) / dirichlet_L_kronecker(w, D0);
        else
            global = riemann_zeta(w - 1.0) * dirichlet_L_kronecker(w - 1.0, D0) /
                     dirichlet_L_kronecker(w, D0);
    }

    auto shape = [&](long long p) -> cplx {
        cplx xw = std::exp(-w * std::log(double(p)));
        if (m == 1) {
            if (n != 0)
                return (1.0 - xw * xw) / ((1.0 - xw) * (1.0 - chi(p) * xw));
            cplx px2 = double(p) * xw * xw;
            return (1.0 - xw * xw) / ((1.0 - xw) * (1.0 - px2));
        }
        cplx px = double(p) * xw;
        if (n != 0) return (1.0 - chi(p) * xw) / (1.0 - px);
        return (1.0 - chi(p) * xw) / ((1.0 - px) * (1.0 - chi(p) * px));
    };

    cplx result = global;
    for (long long p : bad) {
        int e0 = 0;
        long long q = view.modulus_mult;
        while (q % p == 0) { q /= p; ++e0; }
        LocalSeq seq{[&, p, e0](int k) -> Int { return prime_power_count(view, p, e0 + k, n); },
                     p, m};
        cplx x = std::exp(-w * std::log(double(p)));
        result *= local_factor(seq, x) / shape(p);
    }
    return result;
}

} // namespace

cplx z_closed(const QuadraticFormData& qf, long long n, cplx w) {
    if (!(w.real() > qf.m)) throw std::domain_error("z_closed: need Re(w) > m");
    return closed_for_view(a_view(qf), n, w);
}

cplx z_star_closed(const QuadraticFormData& qf, long long n, cplx w) {
    if (!(w.real() > qf.m)) throw std::domain_error("z_star_closed: need Re(w) > m");
    double scale = to_double(Rat(Int(abs(qf.D))));
    for (int i = 0; i < qf.m; ++i) scale /= double(qf.N);
    return scale * closed_for_view(b_view(qf), n, w);
}

// ---------------------------------------------- Fourier transform of phi_psi

ModCharacter chi_K(const QuadraticFormData& qf, int ell) {
    if (ell % 2 == 0) {
        if (qf.m % 2 != 0)
            throw std::domain_error("chi_K: even ell requires even m");
        long long d = to_int64(qf.D);
        if ((qf.m / 2) % 2 == 1) d = -d;
        return kronecker_char(d);
    }
    return kronecker_char(2 * to_int64(Int(abs(qf.D))));
}

ModCharacter chi_K_N(const QuadraticFormData& qf, int ell) {
    if (ell % 2 == 0) return chi_K(qf, ell);
    return kronecker_char(2 * to_int64(Int(abs(qf.D))) * qf.N);
}

cplx k_r_psi(const QuadraticFormData& qf, const DirichletCharacter& psi) {
    long long r = psi.modulus();
    int ell = qf.p - qf.q;
    DirichletCharacter ps = psi_star(psi, ell);
    return c_ell_r(ell, r).to_complex() * ps.value(-qf.N) * chi_K(qf, ell)(r).to_complex();
}

PhiPsiHatValue phi_psi_hat(const QuadraticFormData& qf, const DirichletCharacter& psi,
                           const std::vector<Rat>& y) {
    long long r = psi.modulus();
    if (std::gcd(r, qf.N) != 1)
        throw std::domain_error("phi_psi_hat: r must be coprime to the level");
    int dim = qf.m + 2;
    if (int(y.size()) != dim) throw std::domain_error("phi_psi_hat: y has wrong dimension");
    int M = gauss_field_order(r);

    // common denominator of y
    long long den = 1;
    for (const auto& yi : y) den = std::lcm(den, to_int64(rat_den(yi)));
    if (r % den != 0 && den % r != 0 && den != 1)
        throw std::domain_error("phi_psi_hat: y must lie in r^{-k} Z^{m+2}");
    long long q0 = std::lcm(r, den);
    if (std::pow(double(q0), dim) > 4e6)
        throw BudgetError("phi_psi_hat: finite sum budget exceeded");

    // tau_psi table
    std::vector<Cyclotomic> tau((size_t(r)));
    for (long long j = 0; j < r; ++j) tau[size_t(j)] = gauss_sum(psi, j).exact;

    // scaled finite sum: q0^{m+2} * phi_psi_hat(y)
    Cyclotomic fs(M);
    std::vector<long long> x(size_t(dim), 0);
    std::vector<Rat> yq(y);
    for (;;) {
        // Q(x) = x_0 x_{m+1} + x'^T A x'
        i128 qv = (i128)x[0] * x[size_t(dim - 1)];
        for (int i = 0; i < qf.m; ++i) {
            qv += (i128)qf.Adiag[size_t(i)] * x[size_t(i + 1)] * x[size_t(i + 1)];
            for (int j = i + 1; j < qf.m; ++j)
                qv += (i128)qf.Aoff[size_t(i)][size_t(j)] * x[size_t(i + 1)] * x[size_t(j + 1)];
        }
        long long qmod = (long long)(qv % r);
        if (qmod < 0) qmod += r;
        // <x, y> mod 1 with denominator q0
        Rat dot(0);
        for (int i = 0; i < dim; ++i) dot += Rat(x[size_t(i)]) * yq[size_t(i)];
        long long dnum = to_int64(rat_num(dot)), dden = to_int64(rat_den(dot));
        long long expo = mod_euclid(-dnum * (M / dden), (long long)M);
        fs += tau[size_t(qmod)] * Cyclotomic::root(M, expo);
        int i = 0;
        for (; i < dim; ++i) {
            if (++x[size_t(i)] < q0) break;
            x[size_t(i)] = 0;
        }
        if (i == dim) break;
    }

    PhiPsiHatValue out;
    out.finite_sum = fs;

    // closed form: q0^{m+2} r^{-m/2-1} K_{r,psi} tau_{psi*}(N Q*(ry)) when
    // y in r^{-1} V_Z, else 0
    bool in_lattice = true;
    for (const auto& yi : y)
        if (!is_integer(yi * r)) in_lattice = false;
    Cyclotomic closed(M);
    if (in_lattice) {
        int ell = qf.p - qf.q;
        DirichletCharacter ps = psi_star(psi, ell);
        // N Q*(ry), integer
        std::vector<Rat> ry((size_t(dim)));
        for (int i = 0; i < dim; ++i) ry[size_t(i)] = y[size_t(i)] * r;
        Rat qstar = Rat(rat_num(ry[0])) * Rat(rat_num(ry[size_t(dim - 1)]));
        for (int i = 0; i < qf.m; ++i)
            for (int j = 0; j < qf.m; ++j)
                qstar += ry[size_t(i + 1)] * (qf.B[size_t(i)][size_t(j)] / qf.N) * ry[size_t(j + 1)];
        Rat nq = Rat(qf.N) * qstar;
        if (!is_integer(nq)) throw std::logic_error("phi_psi_hat: N Q*(ry) not integral");
        long long t = to_int64(mod_euclid(rat_num(nq), Int(r)));

        Cyclotomic tstar = gauss_sum(ps, t).exact;
        // q0^{m+2} r^{-m/2-1}: integer power of r times sqrt(r) for odd m
        // q0 = r here (den | r and y in r^{-1}Z => q0 = r)
        long long intpow2 = (qf.m + 2) * 2 - qf.m - 2; // exponent of sqrt(r)
        Cyclotomic scale(M, Rat(1));
        for (long long i = 0; i < intpow2 / 2; ++i) scale = Rat(r) * scale;
        if (intpow2 % 2 == 1) {
            // sqrt(r) = eps_r^{-1} tau_Legendre
            DirichletCharacter leg(r, int((r - 1) / 2));
            Cyclotomic tl = gauss_sum(leg, 1).exact;
            int ipow = mod_euclid((long long)-epsilon_d(r).pow(), (long long)4);
            scale = scale * tl * Cyclotomic::root(M, ipow * (M / 4));
        }
        // K_{r,psi}
        Cyclotomic K(M, Rat(1));
        Mu4 clr = c_ell_r(ell, r);
        K = K * Cyclotomic::root(M, clr.pow() * (M / 4));
        auto pse = ps.value_exponent(-qf.N);
        if (!pse) throw std::logic_error("phi_psi_hat: psi*(-N) vanished");
        K = K * Cyclotomic::root(M, *pse * (M / (r - 1)));
        CharValue ck = chi_K(qf, ell)(r);
        Rat ckr = ck.zero ? Rat(0) : (ck.num == 0 ? Rat(1) : Rat(-1));
        K = ckr * K;

        closed = scale * K * tstar;
    }
    out.closed_form = closed;
    out.equal = (out.finite_sum == out.closed_form);
    double q0pow = std::pow(double(q0), dim);
    out.value = fs.to_complex() / q0pow;
    return out;
}

} // namespace msf
