#pragma once

// The Igusa-generator model of M^k_2: monomials in E4, E6, chi10, chi12,
// the degree-2 Hecke operator at p = 2, and the self-certifying spectral
// construction of Klingen Eisenstein series.

#include "cones.hpp"
#include "siegel_expansion.hpp"

#include <array>
#include <map>
#include <memory>

namespace siegelcone {

// --- small exact polynomial helper (monic gcd over Q) -----------------------

namespace polyq {

using Poly = RatVec;  // coeffs[i] multiplies x^i

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline Poly divide_exact(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (degree(num) >= degree(den) && !num.empty()) {
        const int shift = degree(num) - degree(den);
        const Rat f = num.back() / den.back();
        q[static_cast<std::size_t>(shift)] = f;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[static_cast<std::size_t>(shift) + i] -= f * den[i];
        trim(num);
    }
    if (!num.empty()) throw std::logic_error("polyq::divide_exact: nonzero remainder");
    return q;
}

inline Poly remainder(Poly num, const Poly& den) {
    while (degree(num) >= degree(den) && !num.empty()) {
        const int shift = degree(num) - degree(den);
        const Rat f = num.back() / den.back();
        for (std::size_t i = 0; i < den.size(); ++i)
            num[static_cast<std::size_t>(shift) + i] -= f * den[i];
        trim(num);
    }
    return num;
}

inline Poly monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    const Rat lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

}  // namespace polyq

// --- monomials ---------------------------------------------------------------

using IgusaExp = std::array<int, 4>;  // exponents of (E4, E6, chi10, chi12)

inline std::vector<IgusaExp> igusa_exponents(int k) {
    std::vector<IgusaExp> out;
    for (int d = 0; 12 * d <= k; ++d)
        for (int c = 0; 12 * d + 10 * c <= k; ++c)
            for (int b = 0; 12 * d + 10 * c + 6 * b <= k; ++b) {
                const int rest = k - 12 * d - 10 * c - 6 * b;
                if (rest % 4) continue;
                out.push_back({rest / 4, b, c, d});
            }
    std::sort(out.begin(), out.end());
    return out;
}

inline int dim_M2(int k) { return static_cast<int>(igusa_exponents(k).size()); }
inline int dim_S2(int k) { return dim_M2(k) - dim_M1(k); }
inline bool is_cusp_exponent(const IgusaExp& e) { return e[2] + e[3] >= 1; }

// Shared builder for generator expansions and their monomial products.
class MonomialCache {
  public:
    explicit MonomialCache(int N)
        : box_(N),
          reducer_(std::make_shared<BoxReducer>(N)),
          e4_(eis_expansion(4, N)),
          e6_(eis_expansion(6, N)) {
        const auto gens = cusp_generators_index1(4L * N * N);
        chi10_ = maass_lift(gens.phi10, N);
        chi12_ = maass_lift(gens.phi12, N);
    }

    int box() const { return box_; }
    const BoxReducer& reducer() const { return *reducer_; }
    std::shared_ptr<BoxReducer> reducer_ptr() const { return reducer_; }

    const SiegelExpansion& monomial(const IgusaExp& e) {
        auto it = memo_.find(e);
        if (it != memo_.end()) return it->second;
        SiegelExpansion val = compute(e);
        return memo_.emplace(e, std::move(val)).first->second;
    }

  private:
    int box_;
    std::shared_ptr<BoxReducer> reducer_;
    SiegelExpansion e4_, e6_, chi10_, chi12_;
    std::map<IgusaExp, SiegelExpansion> memo_;

    SiegelExpansion compute(const IgusaExp& e) {
        if (e == IgusaExp{0, 0, 0, 0}) {
            SiegelExpansion one(0, box_);
            one.zero_coeff() = 1;
            return one;
        }
        for (int slot = 0; slot < 4; ++slot) {
            if (e[static_cast<std::size_t>(slot)] == 0) continue;
            IgusaExp prev = e;
            --prev[static_cast<std::size_t>(slot)];
            const SiegelExpansion* gen =
                slot == 0 ? &e4_ : slot == 1 ? &e6_ : slot == 2 ? &chi10_ : &chi12_;
            if (prev == IgusaExp{0, 0, 0, 0}) return *gen;
            return multiply(monomial(prev), *gen, *reducer_);
        }
        throw std::logic_error("MonomialCache: unreachable");
    }
};

// --- Hecke operator at p = 2 --------------------------------------------------

// Classical double-coset action on Fourier coefficients:
//   (T(p)F)(T) = A(pT)
//     + p^{k-2} [ sum_{j mod p} A(((n+rj+mj^2)/p, r+2mj, pm)) + A((pn, r, m/p)) ]
//     + p^{2k-3} A(T/p),
// terms dropped when the matrix is not half-integral. Requires the source box
// to be at least p times the output box.
inline SiegelExpansion hecke_Tp(const SiegelExpansion& F, long p, int box_out) {
    if (F.box() < p * box_out) throw std::invalid_argument("hecke_Tp: source box too small");
    const int k = F.weight();
    const Rat pk2 = rat_pow(Rat(p), k - 2);
    const Rat p2k3 = rat_pow(Rat(p), 2 * k - 3);
    SiegelExpansion out(k, box_out);

    auto act = [&](long n, long r, long m) -> Rat {
        Rat acc = F.at({p * n, p * r, p * m});
        for (long j = 0; j < p; ++j) {
            const long top = n + r * j + m * j * j;
            if (top % p == 0) acc += pk2 * F.at({top / p, r + 2 * m * j, p * m});
        }
        if (m % p == 0) acc += pk2 * F.at({p * n, r, m / p});
        if (n % p == 0 && r % p == 0 && m % p == 0) acc += p2k3 * F.at({n / p, r / p, m / p});
        return acc;
    };

    out.zero_coeff() = act(0, 0, 0);
    for (long e = 1; e <= box_out; ++e) out.singular_coeff(e) = act(e, 0, 0);
    out.for_each_reduced([&](long n, long r, long m) { out.pd_coeff(n, r, m) = act(n, r, m); });
    return out;
}

inline SiegelExpansion hecke_T2(const SiegelExpansion& F, int box_out) {
    return hecke_Tp(F, 2, box_out);
}

// --- coordinate solving -------------------------------------------------------

// Coordinates of the target over the given expansions, pinned on a full-rank
// probe set and then verified on every slot of the common box. Hard failure
// when the target is not in the span.
inline RatVec coords_over(const std::vector<const SiegelExpansion*>& basis,
                          const SiegelExpansion& target) {
    if (basis.empty()) throw std::invalid_argument("coords_over: empty basis");
    int common = target.box();
    for (const auto* b : basis) common = std::min(common, b->box());

    struct Key {
        long n, r, m;
        bool singular;
        bool zero;
    };
    std::vector<Key> keys;
    keys.push_back({0, 0, 0, false, true});
    for (long e = 1; e <= common; ++e) keys.push_back({e, 0, 0, true, false});
    for (long n = 1; n <= common; ++n)
        for (long m = 1; m <= n; ++m)
            for (long r = 0; r <= m; ++r)
                if (4 * n * m - r * r > 0) keys.push_back({n, r, m, false, false});

    auto value = [](const SiegelExpansion& f, const Key& key) -> Rat {
        if (key.zero) return f.zero_coeff();
        if (key.singular) return f.singular_coeff(key.n);
        return f.pd_coeff(key.n, key.r, key.m);
    };

    std::vector<RatVec> rows;
    RatVec rhs;
    std::vector<RatVec> rank_probe;
    for (const auto& key : keys) {
        if (rows.size() == basis.size()) break;
        RatVec row(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) row[j] = value(*basis[j], key);
        rank_probe.push_back(row);
        if (linalg::rank(rank_probe) == static_cast<int>(rank_probe.size())) {
            rows.push_back(row);
            rhs.push_back(value(target, key));
        } else {
            rank_probe.pop_back();
        }
    }
    if (rows.size() != basis.size())
        throw std::logic_error("coords_over: basis not independent within the box");
    const auto sol = linalg::solve(rows, rhs);
    if (!sol) throw std::logic_error("coords_over: inconsistent system");
    for (const auto& key : keys) {
        Rat acc = 0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if ((*sol)[j] != 0) acc += (*sol)[j] * value(*basis[j], key);
        if (acc != value(target, key))
            throw std::logic_error("coords_over: target leaves the span (consistency failure)");
    }
    return *sol;
}

// --- spectral split and Klingen lifts ----------------------------------------

// Rational spectral data of T(2) on M^k_2 over the monomial model. The Klingen
// subspace is the part of the minimal polynomial coprime to both the Siegel
// eigenvalue and the cusp block; any collision aborts.
struct SpectralSplit {
    int k = 0;
    int box = 0;            // monomial box N; T(2) images solved at N/2
    std::vector<IgusaExp> exps;
    std::vector<const SiegelExpansion*> monomials;  // owned by the cache
    std::vector<std::size_t> cusp_idx;
    std::vector<RatVec> t2;     // dim x dim, column j = coords of T2(monomial j)
    RatVec eis_coords;
    Rat eis_eigenvalue = 0;
    std::vector<RatVec> klingen_coords;  // basis of K, monomial coordinates
    polyq::Poly min_poly;
};

namespace detail {

inline RatVec mat_apply(const std::vector<RatVec>& cols, const RatVec& v) {
    const std::size_t d = cols.size();
    RatVec out(d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
        if (v[j] == 0) continue;
        for (std::size_t i = 0; i < d; ++i) out[i] += cols[j][i] * v[j];
    }
    return out;
}

// Minimal polynomial via Krylov dependencies of the coordinate vectors.
inline polyq::Poly min_poly_of(const std::vector<RatVec>& cols) {
    const std::size_t d = cols.size();
    polyq::Poly mp{Rat(1)};
    for (std::size_t s = 0; s < d; ++s) {
        RatVec v(d, Rat(0));
        v[s] = 1;
        // apply current mp(A) to v; if already zero, nothing to add
        RatVec w(d, Rat(0));
        {
            RatVec power = v;
            for (std::size_t i = 0; i < mp.size(); ++i) {
                if (mp[i] != 0)
                    for (std::size_t t = 0; t < d; ++t) w[t] += mp[i] * power[t];
                if (i + 1 < mp.size()) power = mat_apply(cols, power);
            }
        }
        if (is_zero(w)) continue;
        // Krylov chain on w
        std::vector<RatVec> chain{w};
        for (;;) {
            RatVec next = mat_apply(cols, chain.back());
            std::vector<RatVec> test = chain;
            test.push_back(next);
            if (linalg::rank(test) < static_cast<int>(test.size())) {
                // dependency: next = sum a_i chain[i]; poly = x^len - sum a_i x^i
                std::vector<RatVec> M(d, RatVec(chain.size(), Rat(0)));
                for (std::size_t j = 0; j < chain.size(); ++j)
                    for (std::size_t i = 0; i < d; ++i) M[i][j] = chain[j][i];
                const auto a = linalg::solve(M, next);
                if (!a) throw std::logic_error("min_poly_of: dependency solve failed");
                polyq::Poly q(chain.size() + 1, Rat(0));
                q.back() = 1;
                for (std::size_t i = 0; i < chain.size(); ++i) q[i] = -(*a)[i];
                mp = polyq::mul(mp, q);
                break;
            }
            chain.push_back(std::move(next));
        }
    }
    return polyq::monic(mp);
}

}  // namespace detail

inline SpectralSplit spectral_split(int k, MonomialCache& cache) {
    SpectralSplit S;
    S.k = k;
    S.box = cache.box();
    S.exps = igusa_exponents(k);
    const std::size_t dim = S.exps.size();
    if (dim == 0) throw std::domain_error("spectral_split: trivial space");
    for (std::size_t i = 0; i < dim; ++i) {
        S.monomials.push_back(&cache.monomial(S.exps[i]));
        if (is_cusp_exponent(S.exps[i])) S.cusp_idx.push_back(i);
    }
    const int half = cache.box() / 2;

    // T(2) matrix
    S.t2.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const SiegelExpansion img = hecke_T2(*S.monomials[j], half);
        std::vector<const SiegelExpansion*> basis = S.monomials;
        S.t2[j] = coords_over(basis, img);
    }
    // cusp invariance: images of cusp monomials stay cuspidal
    for (std::size_t j : S.cusp_idx)
        for (std::size_t i = 0; i < dim; ++i)
            if (S.t2[j][i] != 0 && !is_cusp_exponent(S.exps[i]))
                throw std::logic_error("spectral_split: T(2) leaves the cusp space");

    // Siegel Eisenstein coordinates and eigenvalue
    const SiegelExpansion E = eis_expansion(k, cache.box());
    S.eis_coords = coords_over(S.monomials, E);
    {
        const RatVec Ae = detail::mat_apply(S.t2, S.eis_coords);
        std::size_t pivot = dim;
        for (std::size_t i = 0; i < dim; ++i)
            if (S.eis_coords[i] != 0) {
                pivot = i;
                break;
            }
        S.eis_eigenvalue = Ae[pivot] / S.eis_coords[pivot];
        for (std::size_t i = 0; i < dim; ++i)
            if (Ae[i] != S.eis_eigenvalue * S.eis_coords[i])
                throw std::logic_error("spectral_split: E^k_2 is not a T(2) eigenvector");
    }

    S.min_poly = detail::min_poly_of(S.t2);

    // minimal polynomial of the cusp block
    polyq::Poly cusp_mp{Rat(1)};
    if (!S.cusp_idx.empty()) {
        const std::size_t cd = S.cusp_idx.size();
        std::vector<RatVec> cusp_cols(cd, RatVec(cd, Rat(0)));
        for (std::size_t j = 0; j < cd; ++j)
            for (std::size_t i = 0; i < cd; ++i) cusp_cols[j][i] = S.t2[S.cusp_idx[j]][S.cusp_idx[i]];
        cusp_mp = detail::min_poly_of(cusp_cols);
    }

    // Klingen factor: strip Siegel and cusp factors from the minimal polynomial
    polyq::Poly g = polyq::mul(cusp_mp, polyq::Poly{-S.eis_eigenvalue, Rat(1)});
    polyq::Poly h = S.min_poly;
    for (;;) {
        const polyq::Poly d = polyq::gcd(h, g);
        if (polyq::degree(d) < 1) break;
        h = polyq::divide_exact(h, d);
    }

    // K = ker h(T2)
    const std::size_t hdim = static_cast<std::size_t>(std::max(polyq::degree(h), 0));
    std::vector<RatVec> hA(dim, RatVec(dim, Rat(0)));  // columns of h(A)
    for (std::size_t s = 0; s < dim; ++s) {
        RatVec acc(dim, Rat(0));
        RatVec power(dim, Rat(0));
        power[s] = 1;
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (h[i] != 0)
                for (std::size_t t = 0; t < dim; ++t) acc[t] += h[i] * power[t];
            if (i + 1 < h.size()) power = detail::mat_apply(S.t2, power);
        }
        hA[s] = acc;
    }
    (void)hdim;
    std::vector<RatVec> rows(dim, RatVec(dim, Rat(0)));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] = hA[j][i];
    S.klingen_coords = linalg::kernel_of_rows(rows, dim);

    const int ell = dim_S1(k);
    if (static_cast<int>(S.klingen_coords.size()) != ell)
        throw std::logic_error(
            "spectral_split: spectral characterization failed (eigenvalue collision)");
    return S;
}

// The Klingen Eisenstein series attached to the echelon cusp form f, as the
// inverse image of f under Phi restricted to the Klingen subspace.
struct KlingenLifter {
    const SpectralSplit& split;
    const EllipticBasis& ell;

    SiegelExpansion lift(std::size_t which) const {
        const std::size_t ellc = ell.cusp.size();
        if (which >= ellc) throw std::out_of_range("KlingenLifter: no such cusp form");
        // Phi of every K basis vector, expressed over (echelon cusp basis)
        std::vector<RatVec> M(ellc, RatVec(ellc, Rat(0)));
        for (std::size_t j = 0; j < ellc; ++j) {
            const QExpansion phi = phi_of(split.klingen_coords[j]);
            if (phi.c(0) != 0)
                throw std::logic_error("KlingenLifter: Phi image of K is not cuspidal");
            // echelon coordinates are literal leading coefficients
            for (std::size_t i = 0; i < ellc; ++i) M[i][j] = phi.c(static_cast<int>(i) + 1);
            // confirm it *is* that combination, exactly
            QExpansion check(phi.weight, phi.truncation());
            for (std::size_t i = 0; i < ellc; ++i)
                for (int n = 0; n <= check.truncation(); ++n)
                    check.c(n) += M[i][j] * ell.cusp[i].c(n);
            for (int n = 0; n <= check.truncation(); ++n)
                if (check.c(n) != phi.c(n))
                    throw std::logic_error("KlingenLifter: Phi(K) escapes the cusp space");
        }
        RatVec e(ellc, Rat(0));
        e[which] = 1;
        const auto sol = linalg::solve(M, e);
        if (!sol) throw std::logic_error("KlingenLifter: Phi restricted to K is not bijective");
        // expansion of the lift
        const std::size_t dim = split.exps.size();
        RatVec mono_coords(dim, Rat(0));
        for (std::size_t j = 0; j < ellc; ++j)
            for (std::size_t i = 0; i < dim; ++i)
                mono_coords[i] += (*sol)[j] * split.klingen_coords[j][i];
        SiegelExpansion out(split.k, split.box);
        for (std::size_t i = 0; i < dim; ++i) {
            if (mono_coords[i] == 0) continue;
            SiegelExpansion term = *split.monomials[i];
            term *= mono_coords[i];
            out += term;
        }
        // Phi(lift) = f, exactly
        const QExpansion back = phi_operator(out);
        for (int n = 0; n <= back.truncation(); ++n)
            if (back.c(n) != ell.cusp[which].c(n))
                throw std::logic_error("KlingenLifter: Phi of the lift is not f");
        return out;
    }

  private:
    QExpansion phi_of(const RatVec& coords) const {
        QExpansion acc(split.k, split.box);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            const QExpansion p = phi_operator(*split.monomials[i]);
            for (int n = 0; n <= acc.truncation(); ++n) acc.c(n) += coords[i] * p.c(n);
        }
        return acc;
    }
};

// Eisenstein-plus-cusp decomposition residual of the Klingen coefficients:
// residual(n, r) = a^k_2(f, T) - (zeta(1-k)/2) sum_{t^2|m} alpha_m(t,f) a^k_2(T_t)
// for T = (n, r/2; r/2, m); the t-term is 0 when t does not divide r.
inline std::map<std::pair<long, long>, Rat> bodapetn_residual(const SiegelExpansion& klingen_f,
                                                              const QExpansion& f, long m, int N) {
    const int k = klingen_f.weight();
    const Rat zeta_half = zeta_neg(static_cast<unsigned>(k)) / 2;
    std::map<std::pair<long, long>, Rat> out;
    for (long n = 0; n <= N; ++n)
        for (long r = 0; r * r <= 4 * n * m; ++r) {
            const HalfIntMatrix T{n, r, m};
            Rat eis_part = 0;
            for (long t : square_divisors(m)) {
                if (r % t) continue;
                const auto Tt = t_divide(T, t);
                eis_part += alpha(m, t, f) * siegel_eis_coeff(k, Tt.matrix);
            }
            out[{n, r}] = klingen_f.at(T) - zeta_half * eis_part;
        }
    return out;
}

}  // namespace siegelcone
