#pragma once

// Box-truncated genus-2 Fourier expansions. Storage is keyed by reduced
// representatives (positive definite reduced triples, rank-one contents, and
// the zero matrix); lookups reduce first. Multiplication enumerates unreduced
// summand pairs, whose diagonals never exceed the target's, so a box is
// closed under products.

#include "jacobi.hpp"
#include "siegel_eis.hpp"

#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace siegelcone {

// Precomputed reduction lookup for every psd triple with diagonal <= N.
class BoxReducer {
  public:
    struct Entry {
        enum class Kind : unsigned char { zero, singular, pd } kind = Kind::zero;
        long e = 0;              // singular content
        long n = 0, r = 0, m = 0;  // reduced pd triple
    };

    explicit BoxReducer(int N) : N_(N), rspan_(4 * static_cast<std::size_t>(N) + 1) {
        entries_.resize(static_cast<std::size_t>(N + 1) * (N + 1) * rspan_);
        for (long n = 0; n <= N; ++n)
            for (long m = 0; m <= N; ++m)
                for (long r = -2 * N; r <= 2 * N; ++r) {
                    const HalfIntMatrix T{n, r, m};
                    if (!T.is_psd()) continue;
                    Entry& e = entries_[idx(n, r, m)];
                    if (T.is_zero()) {
                        e.kind = Entry::Kind::zero;
                    } else if (T.four_det() == 0) {
                        e.kind = Entry::Kind::singular;
                        e.e = T.content();
                    } else {
                        const auto red = reduce(T).reduced;
                        e.kind = Entry::Kind::pd;
                        e.n = red.n;
                        e.r = red.r;
                        e.m = red.m;
                    }
                }
    }

    int box() const { return N_; }
    const Entry& at(long n, long r, long m) const { return entries_[idx(n, r, m)]; }

  private:
    int N_;
    std::size_t rspan_;
    std::vector<Entry> entries_;

    std::size_t idx(long n, long r, long m) const {
        return (static_cast<std::size_t>(n) * (N_ + 1) + static_cast<std::size_t>(m)) * rspan_ +
               static_cast<std::size_t>(r + 2 * N_);
    }
};

class SiegelExpansion {
  public:
    SiegelExpansion() = default;
    SiegelExpansion(int k, int N)
        : weight_(k),
          box_(N),
          zero_(0),
          singular_(static_cast<std::size_t>(N) + 1, Rat(0)),
          pd_(static_cast<std::size_t>(N + 1) * (N + 1) * (N + 1), Rat(0)) {}

    int weight() const { return weight_; }
    int box() const { return box_; }

    Rat& zero_coeff() { return zero_; }
    const Rat& zero_coeff() const { return zero_; }

    Rat& singular_coeff(long e) { return singular_.at(static_cast<std::size_t>(e)); }
    const Rat& singular_coeff(long e) const { return singular_.at(static_cast<std::size_t>(e)); }

    Rat& pd_coeff(long n, long r, long m) { return pd_[pd_idx(n, r, m)]; }
    const Rat& pd_coeff(long n, long r, long m) const { return pd_[pd_idx(n, r, m)]; }

    // Coefficient at an arbitrary psd matrix; reduces first.
    const Rat& at(const HalfIntMatrix& T) const {
        const auto red = reduced_representative(T);
        if (red.is_zero()) return zero_;
        if (red.four_det() == 0) {
            if (red.n > box_) throw std::out_of_range("SiegelExpansion: singular index beyond box");
            return singular_coeff(red.n);
        }
        if (red.n > box_) throw std::out_of_range("SiegelExpansion: matrix beyond box");
        return pd_coeff(red.n, red.r, red.m);
    }

    // All reduced pd triples in the box, lexicographic; the canonical slot order.
    template <class Fn>
    void for_each_reduced(Fn&& fn) const {
        for (long n = 1; n <= box_; ++n)
            for (long m = 1; m <= n; ++m)
                for (long r = 0; r <= m; ++r)
                    if (4 * n * m - r * r > 0) fn(n, r, m);
    }

    SiegelExpansion& operator+=(const SiegelExpansion& o) {
        check_shape(o);
        zero_ += o.zero_;
        for (std::size_t i = 0; i < singular_.size(); ++i) singular_[i] += o.singular_[i];
        for (std::size_t i = 0; i < pd_.size(); ++i)
            if (o.pd_[i] != 0) pd_[i] += o.pd_[i];
        return *this;
    }
    SiegelExpansion& operator*=(const Rat& s) {
        zero_ *= s;
        for (auto& x : singular_) x *= s;
        for (auto& x : pd_) x *= s;
        return *this;
    }

    bool operator==(const SiegelExpansion& o) const {
        return weight_ == o.weight_ && box_ == o.box_ && zero_ == o.zero_ &&
               singular_ == o.singular_ && pd_ == o.pd_;
    }

    friend SiegelExpansion multiply(const SiegelExpansion& F, const SiegelExpansion& G,
                                    const BoxReducer& red);

    void fingerprint(Fnv1a& h) const {
        h.feed(zero_);
        for (const auto& x : singular_) h.feed(x);
        for_each_reduced([&](long n, long r, long m) { h.feed(pd_coeff(n, r, m)); });
    }

  private:
    int weight_ = 0;
    int box_ = 0;
    Rat zero_;
    std::vector<Rat> singular_;
    std::vector<Rat> pd_;

    std::size_t pd_idx(long n, long r, long m) const {
        return (static_cast<std::size_t>(n) * (box_ + 1) + static_cast<std::size_t>(m)) *
                   (box_ + 1) +
               static_cast<std::size_t>(r);
    }
    void check_shape(const SiegelExpansion& o) const {
        if (box_ != o.box_) throw std::invalid_argument("SiegelExpansion: box mismatch");
    }
};

// Integer-cleared view used by the convolution: numerators over one common
// denominator, addressed like the source expansion.
namespace detail {

struct ScaledExpansion {
    Int den = 1;
    Int zero;
    std::vector<Int> singular;
    std::vector<Int> pd;

    explicit ScaledExpansion(const SiegelExpansion& F) {
        den = 1;
        auto lcm_in = [&](const Rat& q) {
            const Int d = siegelcone::den(q);
            den = den / gcd(den, d) * d;
        };
        lcm_in(F.zero_coeff());
        for (long e = 0; e <= F.box(); ++e)
            if (e >= 1) lcm_in(F.singular_coeff(e));
        F.for_each_reduced([&](long n, long r, long m) { lcm_in(F.pd_coeff(n, r, m)); });
        zero = num(F.zero_coeff()) * (den / siegelcone::den(F.zero_coeff()));
        singular.assign(static_cast<std::size_t>(F.box()) + 1, Int(0));
        for (long e = 1; e <= F.box(); ++e)
            singular[static_cast<std::size_t>(e)] =
                num(F.singular_coeff(e)) * (den / siegelcone::den(F.singular_coeff(e)));
        pd.assign(static_cast<std::size_t>(F.box() + 1) * (F.box() + 1) * (F.box() + 1), Int(0));
        F.for_each_reduced([&](long n, long r, long m) {
            const Rat& q = F.pd_coeff(n, r, m);
            pd[idx(F.box(), n, r, m)] = num(q) * (den / siegelcone::den(q));
        });
    }

    static std::size_t idx(int box, long n, long r, long m) {
        return (static_cast<std::size_t>(n) * (box + 1) + static_cast<std::size_t>(m)) * (box + 1) +
               static_cast<std::size_t>(r);
    }

    // numerator at a psd triple already inside the box, via the reducer
    const Int& at(const BoxReducer& red, int box, long n, long r, long m) const {
        const auto& e = red.at(n, r, m);
        using K = BoxReducer::Entry::Kind;
        if (e.kind == K::zero) return zero;
        if (e.kind == K::singular) return singular[static_cast<std::size_t>(e.e)];
        return pd[idx(box, e.n, e.r, e.m)];
    }
};

}  // namespace detail

inline SiegelExpansion multiply(const SiegelExpansion& F, const SiegelExpansion& G,
                                const BoxReducer& red) {
    if (F.box() != G.box()) throw std::invalid_argument("multiply: box mismatch");
    if (red.box() < F.box()) throw std::invalid_argument("multiply: reducer box too small");
    const int N = F.box();
    SiegelExpansion out(F.weight() + G.weight(), N);
    const detail::ScaledExpansion sf(F), sg(G);
    const Rat scale = Rat(1) / (Rat(sf.den) * Rat(sg.den));

    out.zero_coeff() = Rat(sf.zero * sg.zero) * scale;
    for (long e = 1; e <= N; ++e) {
        Int acc = 0;
        for (long a = 0; a <= e; ++a) {
            const Int& x = a == 0 ? sf.zero : sf.singular[static_cast<std::size_t>(a)];
            if (x == 0) continue;
            const Int& y = (e - a) == 0 ? sg.zero : sg.singular[static_cast<std::size_t>(e - a)];
            if (y == 0) continue;
            acc += x * y;
        }
        out.singular_coeff(e) = Rat(acc) * scale;
    }
    out.for_each_reduced([&](long n, long r, long m) {
        Int acc = 0;
        for (long n1 = 0; n1 <= n; ++n1)
            for (long m1 = 0; m1 <= m; ++m1) {
                const long n2 = n - n1, m2 = m - m1;
                const long rb1 = isqrt_long(4 * n1 * m1);
                const long rb2 = isqrt_long(4 * n2 * m2);
                const long lo = std::max(-rb1, r - rb2);
                const long hi = std::min(rb1, r + rb2);
                for (long r1 = lo; r1 <= hi; ++r1) {
                    const Int& x = sf.at(red, N, n1, r1, m1);
                    if (x == 0) continue;
                    const Int& y = sg.at(red, N, n2, r - r1, m2);
                    if (y == 0) continue;
                    acc += x * y;
                }
            }
        out.pd_coeff(n, r, m) = Rat(acc) * scale;
    });
    return out;
}

// Expansion of the Siegel Eisenstein series E^k_2 within the box.
inline SiegelExpansion eis_expansion(int k, int N) {
    SiegelExpansion out(k, N);
    out.zero_coeff() = 1;
    const Rat fac = Rat(2) / zeta_neg(static_cast<unsigned>(k));
    for (long e = 1; e <= N; ++e)
        out.singular_coeff(e) = fac * Rat(sigma_pow(static_cast<unsigned>(k - 1), e));
    out.for_each_reduced([&](long n, long r, long m) {
        out.pd_coeff(n, r, m) = siegel_eis_coeff(k, {n, r, m});
    });
    return out;
}

// Saito-Kurokawa rule A(T) = sum_{d | (n,r,m)} d^{k-1} c_phi(4 det T / d^2);
// turns an index-1 Jacobi cusp form of weight k into a genus-2 cusp form.
inline SiegelExpansion maass_lift(const JacobiIndex1& phi, int N) {
    if (!phi.is_cusp()) throw std::domain_error("maass_lift: input must be a cusp form");
    SiegelExpansion out(phi.weight, N);
    out.for_each_reduced([&](long n, long r, long m) {
        Rat acc = 0;
        const long fourdet = 4 * n * m - r * r;
        for (long d : divisors(std::gcd(std::gcd(n, r), m)))
            acc += Rat(int_pow(Int(d), static_cast<unsigned>(phi.weight - 1))) *
                   phi.coeff_disc(fourdet / (d * d));
        out.pd_coeff(n, r, m) = acc;
    });
    return out;
}

// Siegel Phi-operator: restriction to the singular support, an elliptic form.
inline QExpansion phi_operator(const SiegelExpansion& F) {
    QExpansion out(F.weight(), F.box());
    out.c(0) = F.zero_coeff();
    for (long e = 1; e <= F.box(); ++e) out.c(static_cast<int>(e)) = F.singular_coeff(e);
    return out;
}

}  // namespace siegelcone
