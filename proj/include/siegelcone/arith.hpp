#pragma once

// Multiplicative number theory behind the coefficient formulas: divisor sums,
// Möbius, Kronecker symbols, Bernoulli numbers, exact L-values at negative
// integers, the Cohen H-function and fundamental discriminant decompositions.

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace siegelcone {

inline std::vector<std::pair<long, int>> factorize(long n) {
    if (n <= 0) throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t sz = ds.size();
        long pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= p;
            for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline int mobius(long n) {
    if (n < 1) throw std::domain_error("mobius: n must be positive");
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
        (void)p;
    }
    return mu;
}

// sigma_s(n) = sum of s-th powers of positive divisors.
inline Int sigma_pow(unsigned s, long n) {
    Int acc = 0;
    for (long d : divisors(n)) acc += int_pow(Int(d), s);
    return acc;
}

inline int valuation(Int n, long p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    int v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

inline long isqrt_long(long n) {
    if (n < 0) return -1;
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Positive integers t with t^2 | m, ascending (t_0 = 1 first).
inline std::vector<long> square_divisors(long m) {
    std::vector<long> ts;
    for (long t = 1; t * t <= m; ++t)
        if (m % (t * t) == 0) ts.push_back(t);
    return ts;
}

// --- Bernoulli numbers and zeta at negative integers ------------------------

// B_0..B_n with the B_1 = -1/2 convention, via the defining recurrence.
// Returns a copy so callers never hold references into the shared table.
inline RatVec bernoulli_table(std::size_t n) {
    static std::vector<Rat> table{Rat(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (table.size() <= n) {
        const std::size_t m = table.size();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat s = 0;
        Int binom = 1;  // C(m+1, j), built incrementally
        for (std::size_t j = 0; j < m; ++j) {
            s += Rat(binom) * table[j];
            binom = binom * Int(m + 1 - j) / Int(j + 1);
        }
        table.push_back(-s / Rat(binom));
    }
    return RatVec(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(n + 1));
}

inline Rat bernoulli(unsigned n) { return bernoulli_table(n)[n]; }

// zeta(1-k) = -B_k / k for k >= 1; rational for k even (and for k = 1).
inline Rat zeta_neg(unsigned k) {
    if (k == 0) throw std::domain_error("zeta_neg: k must be >= 1");
    Rat bk = bernoulli(k);
    if (k == 1) bk = Rat(1, 2);  // zeta(0) = -1/2
    return -bk / Rat(k);
}

// zeta(3-2k) = zeta(1-(2k-2)).
inline Rat zeta_neg_companion(unsigned k) {
    if (k < 2) throw std::domain_error("zeta_neg_companion: k must be >= 2");
    return zeta_neg(2 * k - 2);
}

// --- Kronecker symbol and fundamental discriminants -------------------------

inline bool is_squarefree(long n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return false;
        (void)p;
    }
    return true;
}

inline bool is_fundamental_discriminant(long D) {
    if (D == 1) return true;
    const long r = ((D % 4) + 4) % 4;
    if (r == 1) return is_squarefree(D);
    if (r == 0) {
        const long s = D / 4;
        const long sr = ((s % 4) + 4) % 4;
        return is_squarefree(s) && (sr == 2 || sr == 3);
    }
    return false;
}

// Kronecker symbol (a/n) for n >= 0.
inline int kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (n < 0) throw std::domain_error("kronecker: n must be non-negative");
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int res = 1;
    while ((n & 1) == 0) {
        n >>= 1;
        const long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) res = -res;
    }
    // Jacobi symbol (a/n) for odd n > 0.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) res = -res;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

// chi_D(n) = (D/n) for D fundamental (or D = 1, the trivial character).
inline int kronecker_chi(long D, long n) {
    if (!is_fundamental_discriminant(D))
        throw std::domain_error("kronecker_chi: D must be a fundamental discriminant or 1");
    if (n < 1) throw std::domain_error("kronecker_chi: n must be positive");
    return kronecker(D, n);
}

struct FundDiscDecomp {
    long N = 0;  // N = -D c^2
    long D = 1;  // fundamental discriminant
    long c = 1;  // positive
};

// Decompose N = -D c^2 for N > 0 with -N = 0 or 1 mod 4.
inline FundDiscDecomp fund_disc_decompose(long N) {
    if (N <= 0) throw std::domain_error("fund_disc_decompose: N must be positive");
    const long rem = ((-N) % 4 + 4) % 4;
    if (rem != 0 && rem != 1)
        throw std::domain_error("fund_disc_decompose: -N must be 0 or 1 mod 4");
    long s = 1;  // squarefree part of N
    for (const auto& [p, e] : factorize(N))
        if (e & 1) s *= p;
    FundDiscDecomp out;
    out.N = N;
    if (((s % 4) + 4) % 4 == 3) {
        out.D = -s;
        out.c = isqrt_long(N / s);
    } else {
        out.D = -4 * s;
        if (N % (4 * s) != 0)
            throw std::logic_error("fund_disc_decompose: congruence bookkeeping failed");
        out.c = isqrt_long(N / (4 * s));
    }
    if (-out.D * out.c * out.c != N || !is_fundamental_discriminant(out.D))
        throw std::logic_error("fund_disc_decompose: verification failed");
    return out;
}

// --- Dirichlet L-values at non-positive integers ----------------------------

// Bernoulli polynomial B_n(x) = sum C(n,i) B_i x^{n-i}.
inline Rat bernoulli_poly(unsigned n, const Rat& x) {
    const RatVec& B = bernoulli_table(n);
    Rat acc = 0;
    Int binom = 1;
    Rat xpow = 1;
    // iterate i = n down to 0 so x-powers build up
    for (unsigned i = n + 1; i-- > 0;) {
        acc += Rat(binom) * B[i] * xpow;
        if (i > 0) {
            binom = binom * Int(i) / Int(n - i + 1);
            xpow *= x;
        }
    }
    return acc;
}

// L(1-r, chi_D) = -B_{r,chi_D}/r with B_{r,chi} = f^{r-1} sum_{a=1}^{f} chi(a) B_r(a/f),
// conductor f = |D|. D = 1 yields zeta(1-r).
inline Rat dirichlet_L_neg(unsigned r, long D) {
    if (r == 0) throw std::domain_error("dirichlet_L_neg: r must be positive");
    if (!is_fundamental_discriminant(D))
        throw std::domain_error("dirichlet_L_neg: D must be a fundamental discriminant or 1");
    const long f = D < 0 ? -D : D;
    Rat s = 0;
    for (long a = 1; a <= f; ++a) {
        const int chi = kronecker(D, a % f == 0 ? f : a);
        if (chi == 0) continue;
        s += Rat(chi) * bernoulli_poly(r, Rat(a, f));
    }
    const Rat B_r_chi = rat_pow(Rat(f), static_cast<long>(r) - 1) * s;
    return -B_r_chi / Rat(r);
}

// --- Cohen H-function --------------------------------------------------------

namespace detail {
// Thread-shareable read-mostly memo.
template <class K, class V>
class ConcurrentMemo {
  public:
    template <class F>
    V get(const K& key, F&& compute) {
        {
            std::shared_lock lock(mtx_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V value = compute();
        std::unique_lock lock(mtx_);
        return map_.emplace(key, std::move(value)).first->second;
    }

  private:
    std::shared_mutex mtx_;
    std::map<K, V> map_;
};
}  // namespace detail

// H(r,0) = zeta(1-2r); for N > 0 with (-1)^r N = 0,1 mod 4, decompose and apply
// the L-and-divisor-sum formula; 0 when the congruence fails.
inline Rat cohen_H_uncached(unsigned r, long N) {
    if (r == 0) throw std::domain_error("cohen_H: r must be positive");
    if (N < 0) throw std::domain_error("cohen_H: N must be non-negative");
    if (N == 0) return zeta_neg(2 * r);
    const long signedN = (r & 1) ? -N : N;
    if (((signedN % 4) + 4) % 4 > 1) return 0;

    long D, c;
    if (r & 1) {
        const auto dec = fund_disc_decompose(N);
        D = dec.D;
        c = dec.c;
    } else {
        // (-1)^r N = N = D c^2 with D > 0 fundamental
        long s = 1;
        for (const auto& [p, e] : factorize(N))
            if (e & 1) s *= p;
        D = (s % 4 == 1) ? s : 4 * s;
        c = isqrt_long(N / D);
        if (D * c * c != N) throw std::logic_error("cohen_H: positive decomposition failed");
    }

    Rat sum = 0;
    for (long d : divisors(c)) {
        const int mu = mobius(d);
        if (mu == 0) continue;
        const int chi = kronecker(D, d);
        if (chi == 0) continue;
        sum += Rat(mu * chi) * Rat(int_pow(Int(d), r - 1)) * Rat(sigma_pow(2 * r - 1, c / d));
    }
    return dirichlet_L_neg(r, D) * sum;
}

inline Rat cohen_H(unsigned r, long N) {
    static detail::ConcurrentMemo<std::pair<unsigned, long>, Rat> memo;
    return memo.get({r, N}, [&] { return cohen_H_uncached(r, N); });
}

}  // namespace siegelcone
