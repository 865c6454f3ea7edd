#pragma once

// Genus-1 modular forms over Q: truncated q-expansions, the normalized
// Eisenstein series, echelonized cusp bases from generator monomials, and the
// auxiliary functions g_k and alpha_m feeding the accumulation-ray formulas.

#include "arith.hpp"

#include <stdexcept>
#include <vector>

namespace siegelcone {

// Truncated q-expansion c_0 + c_1 q + ... + c_N q^N.
struct QExpansion {
    int weight = 0;
    std::vector<Rat> coeffs;  // length N+1

    QExpansion() = default;
    QExpansion(int k, int N) : weight(k), coeffs(static_cast<std::size_t>(N) + 1, Rat(0)) {}

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

    const Rat& c(int n) const {
        if (n < 0 || n > truncation())
            throw std::out_of_range("QExpansion: coefficient beyond truncation");
        return coeffs[static_cast<std::size_t>(n)];
    }
    Rat& c(int n) { return coeffs[static_cast<std::size_t>(n)]; }

    bool is_cusp() const { return coeffs.at(0) == 0; }
    bool is_zero() const {
        for (const auto& x : coeffs)
            if (x != 0) return false;
        return true;
    }

    QExpansion& operator+=(const QExpansion& o) {
        if (o.truncation() < truncation())
            throw std::invalid_argument("QExpansion+=: truncation too small");
        for (int n = 0; n <= truncation(); ++n) c(n) += o.c(n);
        return *this;
    }
    QExpansion& operator*=(const Rat& s) {
        for (auto& x : coeffs) x *= s;
        return *this;
    }

    friend QExpansion operator*(const QExpansion& a, const QExpansion& b) {
        const int N = std::min(a.truncation(), b.truncation());
        QExpansion out(a.weight + b.weight, N);
        for (int i = 0; i <= N; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (int j = 0; i + j <= N; ++j) {
                if (b.coeffs[j] == 0) continue;
                out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
            }
        }
        return out;
    }
    friend QExpansion operator+(QExpansion a, const QExpansion& b) {
        if (a.truncation() > b.truncation()) {
            a.coeffs.resize(b.coeffs.size());
        }
        a += b;
        return a;
    }
    friend QExpansion operator-(QExpansion a, const QExpansion& b) {
        QExpansion nb = b;
        nb *= Rat(-1);
        return a + nb;
    }
    friend QExpansion operator*(QExpansion a, const Rat& s) {
        a *= s;
        return a;
    }
    bool operator==(const QExpansion& o) const {
        return weight == o.weight && coeffs == o.coeffs;
    }
};

// E^k_1 = 1 + (2/zeta(1-k)) sum sigma_{k-1}(n) q^n.
inline QExpansion eisenstein1(int k, int N) {
    if (k < 4 || k % 2) throw std::domain_error("eisenstein1: k must be even and >= 4");
    QExpansion e(k, N);
    e.c(0) = 1;
    const Rat factor = Rat(2) / zeta_neg(static_cast<unsigned>(k));
    for (int n = 1; n <= N; ++n)
        e.c(n) = factor * Rat(sigma_pow(static_cast<unsigned>(k - 1), n));
    return e;
}

inline int dim_M1(int k) {
    if (k < 0 || k % 2) return 0;
    return k / 12 + (k % 12 == 2 ? 0 : 1);
}

inline int dim_S1(int k) { return k >= 4 ? dim_M1(k) - 1 : 0; }

inline QExpansion delta_form(int N) {
    const QExpansion e4 = eisenstein1(4, N), e6 = eisenstein1(6, N);
    QExpansion d = (e4 * e4 * e4 - e6 * e6) * Rat(1, 1728);
    d.weight = 12;
    return d;
}

// Echelonized basis of M^k_1(Q): eis has c_i = 0 for 1 <= i <= l, and the cusp
// basis satisfies c_i(f_j) = delta_{ij}.
struct EllipticBasis {
    int k = 0;
    int N = 0;
    QExpansion eis;
    std::vector<QExpansion> cusp;
};

namespace detail {

// Reduced row echelon over Q, in place; returns pivot columns.
inline std::vector<int> rref(std::vector<RatVec>& rows) {
    std::vector<int> pivots;
    const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::size_t r = 0;
    for (int col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Rat inv = Rat(1) / rows[r][col];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const Rat f = rows[i][col];
            for (int c = 0; c < ncols; ++c) rows[i][c] -= f * rows[r][c];
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace detail

// Victor-Miller-style basis from monomials E4^a E6^b Delta^j with
// 4a + 6b + 12j = k, echelonized. Throws when N is too small to reach rank.
inline EllipticBasis elliptic_basis(int k, int N) {
    if (k < 4 || k % 2) throw std::domain_error("elliptic_basis: k must be even and >= 4");
    const int dim = dim_M1(k);
    if (N < dim + 1) throw std::invalid_argument("elliptic_basis: truncation too small");

    const QExpansion e4 = eisenstein1(4, N), e6 = eisenstein1(6, N);
    std::vector<QExpansion> e4pow{QExpansion(0, N)}, e6pow{QExpansion(0, N)};
    e4pow[0].c(0) = 1;
    e6pow[0].c(0) = 1;
    for (int a = 1; 4 * a <= k; ++a) e4pow.push_back(e4pow.back() * e4);
    for (int b = 1; 6 * b <= k; ++b) e6pow.push_back(e6pow.back() * e6);

    // E4^a E6^b with 4a + 6b = k form a basis of M^k_1.
    std::vector<RatVec> rows;
    for (int b = 0; 6 * b <= k; ++b) {
        if ((k - 6 * b) % 4) continue;
        const int a = (k - 6 * b) / 4;
        rows.push_back((e4pow[static_cast<std::size_t>(a)] * e6pow[static_cast<std::size_t>(b)]).coeffs);
    }
    const auto pivots = detail::rref(rows);
    if (static_cast<int>(rows.size()) != dim)
        throw std::runtime_error("elliptic_basis: monomial span rank disagrees with dimension formula");
    for (int i = 0; i < dim; ++i)
        if (pivots[static_cast<std::size_t>(i)] != i)
            throw std::runtime_error("elliptic_basis: pivots are not q^0..q^{dim-1}; raise N");

    EllipticBasis B;
    B.k = k;
    B.N = N;
    B.eis.weight = k;
    B.eis.coeffs = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        QExpansion f;
        f.weight = k;
        f.coeffs = rows[i];
        B.cusp.push_back(std::move(f));
    }
    return B;
}

// g_k(s) = sum_{d^2 | s} mu(d) sigma_{k-1}(s/d^2), equivalently
// s^{k-1} prod_{p|s} (1 + p^{1-k}); both are computed and must agree.
inline Rat g_k(int k, long s) {
    if (s < 1) throw std::domain_error("g_k: s must be positive");
    Int acc = 0;
    for (long d : square_divisors(s)) {
        const int mu = mobius(d);
        if (mu) acc += Int(mu) * sigma_pow(static_cast<unsigned>(k - 1), s / (d * d));
    }
    Rat closed = rat_pow(Rat(s), k - 1);
    for (const auto& [p, e] : factorize(s)) {
        closed *= Rat(1) + rat_pow(Rat(p), 1 - k);
        (void)e;
    }
    if (Rat(acc) != closed) throw std::logic_error("g_k: the two formulas disagree");
    return Rat(acc);
}

// alpha_m(1,f) = (sum_{d^2|m} mu(d) c_{m/d^2}(f)) / g_k(m).
inline Rat alpha_one(long m, const QExpansion& f) {
    if (m < 1) throw std::domain_error("alpha_one: m must be positive");
    if (f.truncation() < m) throw std::invalid_argument("alpha_one: truncation too small");
    Rat num = 0;
    for (long d : square_divisors(m)) {
        const int mu = mobius(d);
        if (mu) num += Rat(mu) * f.c(static_cast<int>(m / (d * d)));
    }
    return num / g_k(f.weight, m);
}

// alpha_m(t,f) = sum_{l | t} mu(t/l) alpha_{m/l^2}(1,f), defined for t^2 | m.
inline Rat alpha(long m, long t, const QExpansion& f) {
    if (t < 1 || m % (t * t) != 0) throw std::domain_error("alpha: t^2 must divide m");
    Rat acc = 0;
    for (long l : divisors(t)) {
        const int mu = mobius(t / l);
        if (mu) acc += Rat(mu) * alpha_one(m / (l * l), f);
    }
    return acc;
}

}  // namespace siegelcone
