#pragma once

// Positive-kernel certificate for the restriction of coefficient extraction
// functionals to the elliptic cusp space: strictly positive eta_1..eta_A with
// sum_j eta_j c_j(f) = 0 for every cusp form f of weight k.

#include "lp.hpp"
#include "qexp.hpp"

#include <optional>

namespace siegelcone {

// Found via the exact LP maximizing the minimum multiplier, normalized to
// sum eta = 1. NotFound (nullopt) signals that A is too small.
inline std::optional<RatVec> propbmc_certificate(int k, int A, int N) {
    if (k <= 4 || ((k % 4) + 4) % 4 != 2)
        throw std::domain_error("propbmc_certificate: requires k = 2 mod 4, k > 4");
    if (A < 1) throw std::invalid_argument("propbmc_certificate: A must be positive");
    const auto B = elliptic_basis(k, std::max(N, std::max(A, dim_M1(k) + 2)));
    const std::size_t ell = B.cusp.size();
    if (ell == 0) return RatVec(static_cast<std::size_t>(A), Rat(1));

    // eta_j = t + s_j with s >= 0, t >= 0; maximize t subject to
    //   sum_j s_j c_j(f_i) + t C_i = 0,  sum_j s_j + A t = 1.
    const std::size_t n = static_cast<std::size_t>(A);
    std::vector<RatVec> M(ell + 1, RatVec(n + 1, Rat(0)));
    RatVec b(ell + 1, Rat(0)), c(n + 1, Rat(0));
    for (std::size_t i = 0; i < ell; ++i) {
        Rat Ci = 0;
        for (std::size_t j = 0; j < n; ++j) {
            M[i][j] = B.cusp[i].c(static_cast<int>(j) + 1);
            Ci += M[i][j];
        }
        M[i][n] = Ci;
    }
    for (std::size_t j = 0; j < n; ++j) M[ell][j] = 1;
    M[ell][n] = A;
    b[ell] = 1;
    c[n] = 1;

    const LpResult res = lp_maximize(M, b, c);
    if (res.status != LpResult::Status::optimal || res.objective == 0) return std::nullopt;
    RatVec eta(n);
    for (std::size_t j = 0; j < n; ++j) eta[j] = res.x[j] + res.objective;
    // replay: strict positivity and exact kernel membership
    Rat total = 0;
    for (const auto& e : eta) {
        if (e <= 0) throw std::logic_error("propbmc_certificate: non-positive multiplier");
        total += e;
    }
    if (total != 1) throw std::logic_error("propbmc_certificate: normalization failed");
    for (std::size_t i = 0; i < ell; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < n; ++j) s += eta[j] * B.cusp[i].c(static_cast<int>(j) + 1);
        if (s != 0) throw std::logic_error("propbmc_certificate: kernel replay failed");
    }
    return eta;
}

}  // namespace siegelcone
