#pragma once

// Fourier coefficients a^k_2(T) of the genus-2 Siegel Eisenstein series, via
// two independent routes: the Cohen H-function formula and the local Siegel
// series product. Their exact agreement is the central cross-formula oracle.

#include "halfint.hpp"

#include <stdexcept>

namespace siegelcone {

// a^k_2(T) = 1 for T = 0, else (2/(zeta(1-k) zeta(3-2k))) *
// sum_{d | (n,r,m)} d^{k-1} H(k-1, 4 det T / d^2).
inline Rat siegel_eis_coeff(int k, const HalfIntMatrix& T) {
    if (k < 4 || k % 2) throw std::domain_error("siegel_eis_coeff: k must be even and >= 4");
    if (!T.is_psd()) throw std::domain_error("siegel_eis_coeff: matrix must be psd");
    if (T.is_zero()) return 1;
    const Rat constant =
        Rat(2) / (zeta_neg(static_cast<unsigned>(k)) * zeta_neg_companion(static_cast<unsigned>(k)));
    Rat sum = 0;
    const long fourdet = T.four_det();
    for (long d : divisors(T.content()))
        sum += Rat(int_pow(Int(d), static_cast<unsigned>(k - 1))) *
               cohen_H(static_cast<unsigned>(k - 1), fourdet / (d * d));
    return constant * sum;
}

// Local Siegel series at s = 3-k: the double truncated-geometric sum. Integer.
inline Int local_siegel_series(const LocalSeriesData& L, int k) {
    if (k < 4 || k % 2) throw std::domain_error("local_siegel_series: k must be even and >= 4");
    Int total = 0;
    for (int l = 0; l <= L.alpha1; ++l) {
        Int inner = 0;
        for (int w = 0; w <= L.alpha - l; ++w)
            inner += int_pow(Int(L.p), static_cast<unsigned>(w * (2 * k - 3)));
        if (L.chi != 0) {
            Int corr = 0;
            for (int w = 0; w <= L.alpha - l - 1; ++w)
                corr += int_pow(Int(L.p), static_cast<unsigned>(w * (2 * k - 3)));
            inner -= Int(L.chi) * int_pow(Int(L.p), static_cast<unsigned>(k - 2)) * corr;
        }
        total += int_pow(Int(L.p), static_cast<unsigned>(l * (k - 1))) * inner;
    }
    return total;
}

inline Int local_siegel_series(const HalfIntMatrix& T, long p, int k) {
    return local_siegel_series(local_data(T, p), k);
}

// a^k_2(T) = (2 L(2-k, chi_D) / (zeta(1-k) zeta(3-2k))) * prod_{p | 4detT} F_p(T, 3-k).
inline Rat siegel_series_coeff(int k, const HalfIntMatrix& T) {
    if (!T.is_pd()) throw std::domain_error("siegel_series_coeff: matrix must be positive definite");
    const auto dec = fund_disc_decompose(T.four_det());
    Rat value = Rat(2) * dirichlet_L_neg(static_cast<unsigned>(k - 1), dec.D) /
                (zeta_neg(static_cast<unsigned>(k)) * zeta_neg_companion(static_cast<unsigned>(k)));
    for (const auto& [p, e] : factorize(T.four_det())) {
        value *= Rat(local_siegel_series(T, p, k));
        (void)e;
    }
    return value;
}

// a^k_2(T_t) / a^k_2(T) for t^2 | m: 0 when t does not divide r, else equal to
// the per-prime product of local-series quotients. Both routes are computed
// and must agree exactly.
inline Rat ratio(int k, const HalfIntMatrix& T, long t) {
    if (!T.is_pd()) throw std::domain_error("ratio: matrix must be positive definite");
    const auto div = t_divide(T, t);
    if (!div.half_integral) return 0;
    if (t == 1) return 1;

    Rat product = 1;
    for (const auto& [p, e] : factorize(t)) {
        const long ps = int_pow(Int(p), static_cast<unsigned>(e)).convert_to<long>();
        const auto dp = t_divide(T, ps);
        product *= Rat(local_siegel_series(dp.matrix, p, k)) / Rat(local_siegel_series(T, p, k));
    }
    const Rat direct = siegel_eis_coeff(k, div.matrix) / siegel_eis_coeff(k, T);
    if (direct != product) throw std::logic_error("ratio: product law failed");
    return product;
}

// Ratio from local data alone; used by witness families whose determinants are
// too large to factor but whose (alpha1, alpha, chi) are known in closed form.
inline Rat ratio_from_local(int k, const LocalSeriesData& small, const LocalSeriesData& big) {
    return Rat(local_siegel_series(small, k)) / Rat(local_siegel_series(big, k));
}

}  // namespace siegelcone
