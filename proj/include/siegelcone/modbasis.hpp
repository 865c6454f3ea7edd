#pragma once

// The assembly layer's fixed basis (E^k_2, Klingen lifts, Siegel cusp forms)
// and the distinguished points V_s, P_s, P_inf, Q_m(lambda) of the closed
// section, together with the convex-hull decompositions tying them together.

#include "siegel_basis.hpp"

#include <map>
#include <string>

namespace siegelcone {

// Tuple (lambda_{t_1}, ..., lambda_{t_d}) over the square-divisors t > 1 of m.
struct LimitTuple {
    long m = 1;
    std::map<long, Rat> lambda;  // key t with t^2 | m, t > 1; lambda_1 = 1 implicit

    Rat at(long t) const {
        if (t == 1) return 1;
        auto it = lambda.find(t);
        if (it == lambda.end()) throw std::out_of_range("LimitTuple: no such square-divisor");
        return it->second;
    }
};

class ModBasis {
  public:
    ModBasis(int k, int box, int ell_trunc) : k_(k), box_(box) {
        if (k <= 4 || ((k % 4) + 4) % 4 != 2)
            throw std::domain_error("ModBasis: cone weights require k = 2 mod 4, k > 4");
        ell_ = elliptic_basis(k, ell_trunc);
        cache_ = std::make_shared<MonomialCache>(box);
        eis_ = eis_expansion(k, box);
        if (!ell_.cusp.empty()) {
            split_ = spectral_split(k, *cache_);
            const KlingenLifter lifter{split_, ell_};
            for (std::size_t i = 0; i < ell_.cusp.size(); ++i) klingen_.push_back(lifter.lift(i));
        }
        for (const auto& e : igusa_exponents(k))
            if (is_cusp_exponent(e)) cusp_.push_back(cache_->monomial(e));
        if (1 + static_cast<int>(klingen_.size() + cusp_.size()) != dim_M2(k))
            throw std::logic_error("ModBasis: dimension bookkeeping failed");
        zeta_half_ = zeta_neg(static_cast<unsigned>(k)) / 2;
    }

    int k() const { return k_; }
    int box() const { return box_; }
    int dim() const { return 1 + static_cast<int>(klingen_.size() + cusp_.size()); }
    std::size_t ell() const { return klingen_.size(); }
    std::size_t ell_prime() const { return cusp_.size(); }
    const Rat& const_factor() const { return zeta_half_; }  // zeta(1-k)/2
    const EllipticBasis& elliptic() const { return ell_; }
    const SiegelExpansion& eisenstein() const { return eis_; }
    const SiegelExpansion& klingen(std::size_t i) const { return klingen_.at(i); }
    const SiegelExpansion& cusp(std::size_t i) const { return cusp_.at(i); }
    const BoxReducer& reducer() const { return cache_->reducer(); }

    // Coordinates of the coefficient extraction functional c_T: values of the
    // T-th Fourier coefficient on every basis element. GL2(Z)-invariant.
    RatVec c_T_vec(const HalfIntMatrix& T) const {
        RatVec v;
        v.reserve(static_cast<std::size_t>(dim()));
        v.push_back(eis_.at(T));
        for (const auto& f : klingen_) v.push_back(f.at(T));
        for (const auto& f : cusp_) v.push_back(f.at(T));
        return v;
    }

    // c over the rank-one matrix M(n) = (n, 0; 0, 0): elliptic coefficients,
    // cusp coordinates exactly zero.
    RatVec rank_one_vec(long n) const {
        if (n < 1) throw std::domain_error("rank_one_vec: n must be positive");
        RatVec v;
        v.push_back(Rat(2) * Rat(sigma_pow(static_cast<unsigned>(k_ - 1), n)) /
                    zeta_neg(static_cast<unsigned>(k_)));
        for (std::size_t i = 0; i < klingen_.size(); ++i)
            v.push_back(ell_.cusp[i].c(static_cast<int>(n)));
        for (std::size_t i = 0; i < cusp_.size(); ++i) v.push_back(Rat(0));
        return v;
    }

    RatVec p_inf() const {
        RatVec v(static_cast<std::size_t>(dim()), Rat(0));
        v[0] = 1;
        return v;
    }

    // V_s = (1, const * alpha_s(1, f_i), 0...)
    RatVec v_point(long s) const {
        RatVec v(static_cast<std::size_t>(dim()), Rat(0));
        v[0] = 1;
        for (std::size_t i = 0; i < klingen_.size(); ++i)
            v[i + 1] = zeta_half_ * alpha_one(s, ell_.cusp[i]);
        return v;
    }

    // P_s = (1, const * c_s(f_i)/sigma_{k-1}(s), 0...)
    RatVec p_point(long s) const {
        RatVec v(static_cast<std::size_t>(dim()), Rat(0));
        v[0] = 1;
        const Rat sig = Rat(sigma_pow(static_cast<unsigned>(k_ - 1), s));
        for (std::size_t i = 0; i < klingen_.size(); ++i)
            v[i + 1] = zeta_half_ * ell_.cusp[i].c(static_cast<int>(s)) / sig;
        return v;
    }

    // Q_m(lambda) = (1, const * sum_{t^2|m} lambda_t alpha_m(t, f_i), 0...)
    RatVec q_point(const LimitTuple& lt) const {
        for (const auto& [t, lam] : lt.lambda) {
            if (t < 2 || lt.m % (t * t)) throw std::domain_error("q_point: bad lambda index");
            (void)lam;
        }
        RatVec v(static_cast<std::size_t>(dim()), Rat(0));
        v[0] = 1;
        for (std::size_t i = 0; i < klingen_.size(); ++i) {
            Rat acc = 0;
            for (long t : square_divisors(lt.m)) acc += lt.at(t) * alpha(lt.m, t, ell_.cusp[i]);
            v[i + 1] = zeta_half_ * acc;
        }
        return v;
    }

    std::string fingerprint() const {
        Fnv1a h;
        h.feed("k=" + std::to_string(k_) + ";box=" + std::to_string(box_) + ";");
        eis_.fingerprint(h);
        for (const auto& f : klingen_) f.fingerprint(h);
        for (const auto& f : cusp_) f.fingerprint(h);
        return h.hex();
    }

  private:
    int k_;
    int box_;
    EllipticBasis ell_;
    std::shared_ptr<MonomialCache> cache_;
    SiegelExpansion eis_;
    SpectralSplit split_;
    std::vector<SiegelExpansion> klingen_;
    std::vector<SiegelExpansion> cusp_;
    Rat zeta_half_;
};

struct RelPmResult {
    bool holds = false;
    std::vector<std::pair<long, Rat>> coefficients;  // (s/t^2, g_k(s/t^2)/sigma_{k-1}(s))
};

// P_s = sum_{t^2|s} (g_k(s/t^2)/sigma_{k-1}(s)) V_{s/t^2}; coefficients are
// positive and sum to 1.
inline RelPmResult relPm_check(const ModBasis& B, long s) {
    RelPmResult out;
    const Rat sig = Rat(sigma_pow(static_cast<unsigned>(B.k() - 1), s));
    RatVec acc(static_cast<std::size_t>(B.dim()), Rat(0));
    Rat total = 0;
    for (long t : square_divisors(s)) {
        const Rat coeff = g_k(B.k(), s / (t * t)) / sig;
        out.coefficients.emplace_back(s / (t * t), coeff);
        if (coeff <= 0) return out;
        total += coeff;
        const RatVec v = B.v_point(s / (t * t));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * v[i];
    }
    out.holds = (total == 1) && (acc == B.p_point(s));
    return out;
}

struct QDecomposition {
    std::vector<std::pair<long, Rat>> coefficients;  // (m/t_j^2, coefficient of V_{m/t_j^2})
    bool sum_is_one = false;
    bool all_nonnegative = false;
};

// Q_m(lambda) = sum_j (sum_{t_j | t_i} mu(t_i/t_j) lambda_{t_i}) V_{m/t_j^2}.
inline QDecomposition decompose_Q(const LimitTuple& lt) {
    QDecomposition out;
    const auto ts = square_divisors(lt.m);
    Rat total = 0;
    bool nonneg = true;
    for (long tj : ts) {
        Rat coeff = 0;
        for (long ti : ts)
            if (ti % tj == 0) {
                const int mu = mobius(ti / tj);
                if (mu) coeff += Rat(mu) * lt.at(ti);
            }
        out.coefficients.emplace_back(lt.m / (tj * tj), coeff);
        total += coeff;
        if (coeff < 0) nonneg = false;
    }
    if (total != 1) throw std::logic_error("decompose_Q: coefficients do not sum to 1");
    out.sum_is_one = true;
    out.all_nonnegative = nonneg;
    return out;
}

// Verify Q_m(lambda) equals its V-decomposition as vectors.
inline bool decompose_Q_matches(const ModBasis& B, const LimitTuple& lt) {
    const auto dec = decompose_Q(lt);
    RatVec acc(static_cast<std::size_t>(B.dim()), Rat(0));
    for (const auto& [idx, coeff] : dec.coefficients) {
        const RatVec v = B.v_point(idx);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * v[i];
    }
    return acc == B.q_point(lt);
}

}  // namespace siegelcone
