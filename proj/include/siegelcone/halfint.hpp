#pragma once

// Half-integral symmetric 2x2 matrices (n, r/2; r/2, m), GL2(Z) reduction and
// the local data entering the Siegel series.

#include "arith.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace siegelcone {

// T = (n, r/2; r/2, m); 4 det T = 4nm - r^2.
struct HalfIntMatrix {
    long n = 0;
    long r = 0;
    long m = 0;

    long four_det() const { return 4 * n * m - r * r; }
    bool is_zero() const { return n == 0 && r == 0 && m == 0; }
    bool is_psd() const { return n >= 0 && m >= 0 && four_det() >= 0; }
    bool is_pd() const { return n > 0 && m > 0 && four_det() > 0; }
    bool is_reduced() const { return 0 <= r && r <= m && m <= n; }
    long content() const {
        long g = std::abs(n);
        g = std::gcd(g, std::abs(r));
        g = std::gcd(g, std::abs(m));
        return g;
    }
    bool operator==(const HalfIntMatrix& o) const { return n == o.n && r == o.r && m == o.m; }
    bool operator<(const HalfIntMatrix& o) const {
        return std::array<long, 3>{n, r, m} < std::array<long, 3>{o.n, o.r, o.m};
    }
    std::string str() const {
        return "(" + std::to_string(n) + "," + std::to_string(r) + "," + std::to_string(m) + ")";
    }
};

inline HalfIntMatrix rank_one_matrix(long e) { return HalfIntMatrix{e, 0, 0}; }

// 2x2 unimodular matrix acting by T -> U^t T U.
struct Unimodular {
    long a = 1, b = 0, c = 0, d = 1;  // (a b; c d)

    friend Unimodular operator*(const Unimodular& u, const Unimodular& v) {
        return {u.a * v.a + u.b * v.c, u.a * v.b + u.b * v.d,
                u.c * v.a + u.d * v.c, u.c * v.b + u.d * v.d};
    }
    long det() const { return a * d - b * c; }
};

// Apply the substitution (x,y) -> U (x,y): quadratic form pulls back to U^t T U.
inline HalfIntMatrix transform(const HalfIntMatrix& T, const Unimodular& U) {
    // Q(x,y) = n x^2 + r x y + m y^2 evaluated on (a x + b y, c x + d y)
    const long n2 = T.n * U.a * U.a + T.r * U.a * U.c + T.m * U.c * U.c;
    const long r2 = 2 * T.n * U.a * U.b + T.r * (U.a * U.d + U.b * U.c) + 2 * T.m * U.c * U.d;
    const long m2 = T.n * U.b * U.b + T.r * U.b * U.d + T.m * U.d * U.d;
    return {n2, r2, m2};
}

struct ReductionResult {
    HalfIntMatrix reduced;
    Unimodular U;  // reduced = U^t T U
};

// Gaussian reduction of the positive definite binary form to 0 <= r <= m <= n.
inline ReductionResult reduce(const HalfIntMatrix& T) {
    if (!T.is_pd()) throw std::domain_error("reduce: matrix must be positive definite");
    HalfIntMatrix cur = T;
    Unimodular U;
    for (int guard = 0; guard < 10000; ++guard) {
        if (cur.n < cur.m) {
            const Unimodular swap{0, 1, 1, 0};
            cur = transform(cur, swap);
            U = U * swap;
            continue;
        }
        if (cur.r > cur.m || cur.r < -cur.m) {
            // y -> y - s x shifts r by -2 m s while fixing m
            long s = (2 * (cur.r >= 0 ? cur.r : -cur.r) + 2 * cur.m) / (4 * cur.m);
            if (cur.r < 0) s = -s;
            const Unimodular shift{1, 0, -s, 0 + 1};
            cur = transform(cur, shift);
            U = U * shift;
            continue;
        }
        if (cur.r < 0) {
            const Unimodular flip{1, 0, 0, -1};
            cur = transform(cur, flip);
            U = U * flip;
            continue;
        }
        break;
    }
    if (!cur.is_reduced()) throw std::logic_error("reduce: did not terminate in reduced form");
    if (transform(T, U) != cur) throw std::logic_error("reduce: transform bookkeeping failed");
    if (cur.four_det() != T.four_det()) throw std::logic_error("reduce: determinant changed");
    return {cur, U};
}

// Reduced representative of any nonzero psd matrix: positive definite ones via
// Gaussian reduction, rank-one ones to (content, 0; 0, 0).
inline HalfIntMatrix reduced_representative(const HalfIntMatrix& T) {
    if (T.is_zero()) return T;
    if (!T.is_psd()) throw std::domain_error("reduced_representative: matrix not psd");
    if (T.four_det() == 0) return rank_one_matrix(T.content());
    return reduce(T).reduced;
}

// T_t = (n, r/2t; r/2t, m/t^2), defined when t^2 | m; half-integral iff t | r.
struct TDivided {
    HalfIntMatrix matrix;
    bool half_integral = false;
};

inline TDivided t_divide(const HalfIntMatrix& T, long t) {
    if (t < 1 || T.m % (t * t) != 0) throw std::domain_error("t_divide: t^2 must divide m");
    TDivided out;
    out.half_integral = (T.r % t == 0);
    if (out.half_integral) out.matrix = {T.n, T.r / t, T.m / (t * t)};
    return out;
}

// alpha_1(T,p) = v_p(gcd(n,r,m)); alpha(T,p) = v_p(c) with 4 det T = -D c^2.
struct LocalSeriesData {
    long p = 0;
    int alpha1 = 0;
    int alpha = 0;
    int chi = 0;  // chi_D(p)
};

inline LocalSeriesData local_data(const HalfIntMatrix& T, long p) {
    if (!T.is_pd()) throw std::domain_error("local_data: matrix must be positive definite");
    const auto dec = fund_disc_decompose(T.four_det());
    LocalSeriesData out;
    out.p = p;
    out.alpha1 = T.content() % p == 0 ? valuation(Int(T.content()), p) : 0;
    out.alpha = dec.c % p == 0 ? valuation(Int(dec.c), p) : 0;
    out.chi = kronecker(dec.D, p);
    return out;
}

}  // namespace siegelcone
