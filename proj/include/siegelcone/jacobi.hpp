#pragma once

// Index-1 Jacobi forms over Q. Coefficients of an index-1 form depend only on
// the discriminant 4n - r^2, so expansions are stored on the discriminant
// line. Higher index appears only through the index-raising operator V_l,
// kept as an explicit (n, r) table for consistency diagnostics.

#include "qexp.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace siegelcone {

struct JacobiIndex1 {
    int weight = 0;
    long max_disc = 0;          // coefficients stored for 0 <= D <= max_disc
    std::vector<Rat> by_disc;   // index D; nonzero only for D = 0, 3 mod 4

    JacobiIndex1() = default;
    JacobiIndex1(int k, long dmax)
        : weight(k), max_disc(dmax), by_disc(static_cast<std::size_t>(dmax) + 1, Rat(0)) {}

    const Rat& coeff_disc(long D) const {
        if (D < 0) {
            static const Rat zero(0);
            return zero;
        }
        if (D > max_disc) throw std::out_of_range("JacobiIndex1: discriminant beyond truncation");
        return by_disc[static_cast<std::size_t>(D)];
    }
    const Rat& coeff(long n, long r) const { return coeff_disc(4 * n - r * r); }
    bool is_cusp() const { return by_disc.at(0) == 0; }
};

// e(n,r) = H(k-1, 4n - r^2) / zeta(3-2k); e(0,0) = 1 comes out of the formula.
inline JacobiIndex1 jacobi_eisenstein_1(int k, long dmax) {
    if (k < 4 || k % 2) throw std::domain_error("jacobi_eisenstein_1: k must be even and >= 4");
    JacobiIndex1 e(k, dmax);
    const Rat z = zeta_neg_companion(static_cast<unsigned>(k));
    for (long D = 0; D <= dmax; ++D) {
        const long rm = D % 4;
        if (rm == 1 || rm == 2) continue;
        e.by_disc[static_cast<std::size_t>(D)] = cohen_H(static_cast<unsigned>(k - 1), D) / z;
    }
    return e;
}

// (f * phi)(n, r) = sum_a c_a(f) phi(n - a, r); on the discriminant line this
// is a convolution along D -> D - 4a.
inline JacobiIndex1 multiply_elliptic(const QExpansion& f, const JacobiIndex1& phi) {
    if (4 * f.truncation() < phi.max_disc)
        throw std::invalid_argument("multiply_elliptic: elliptic truncation too small");
    JacobiIndex1 out(f.weight + phi.weight, phi.max_disc);
    for (long D = 0; D <= phi.max_disc; ++D) {
        Rat acc = 0;
        for (long a = 0; 4 * a <= D; ++a) {
            const Rat& cf = f.c(static_cast<int>(a));
            if (cf == 0) continue;
            const Rat& cp = phi.by_disc[static_cast<std::size_t>(D - 4 * a)];
            if (cp != 0) acc += cf * cp;
        }
        out.by_disc[static_cast<std::size_t>(D)] = acc;
    }
    return out;
}

inline JacobiIndex1 jacobi_sub(JacobiIndex1 a, const JacobiIndex1& b) {
    if (a.weight != b.weight || a.max_disc != b.max_disc)
        throw std::invalid_argument("jacobi_sub: shape mismatch");
    for (std::size_t i = 0; i < a.by_disc.size(); ++i) a.by_disc[i] -= b.by_disc[i];
    return a;
}

struct CuspGeneratorsIndex1 {
    JacobiIndex1 phi10;
    JacobiIndex1 phi12;
};

// phi_10,1 and phi_12,1 from elliptic Eisenstein series times E_{4,1}, E_{6,1}.
// Cuspidality and the position of the first nonzero coefficient are enforced,
// then each form is normalized to 1 at discriminant 3.
inline CuspGeneratorsIndex1 cusp_generators_index1(long dmax) {
    if (dmax < 4) throw std::invalid_argument("cusp_generators_index1: need dmax >= 4");
    const int N = static_cast<int>(dmax / 4) + 1;
    const QExpansion e4 = eisenstein1(4, N), e6 = eisenstein1(6, N);
    const JacobiIndex1 e41 = jacobi_eisenstein_1(4, dmax), e61 = jacobi_eisenstein_1(6, dmax);

    auto finish = [&](JacobiIndex1 phi, const char* name) {
        if (!phi.is_cusp() || phi.by_disc.at(3) == 0)
            throw std::logic_error(std::string(name) + ": combination is not a normalized cusp form");
        for (long D = 1; D < 3; ++D)
            if (phi.coeff_disc(D) != 0)
                throw std::logic_error(std::string(name) + ": unexpected support below disc 3");
        const Rat lead = phi.by_disc.at(3);
        for (auto& c : phi.by_disc) c /= lead;
        return phi;
    };

    CuspGeneratorsIndex1 out;
    out.phi10 = finish(jacobi_sub(multiply_elliptic(e6, e41), multiply_elliptic(e4, e61)), "phi10");
    out.phi12 =
        finish(jacobi_sub(multiply_elliptic(e4 * e4, e41), multiply_elliptic(e6, e61)), "phi12");
    return out;
}

// Index-l coefficient table, the output shape of V_l.
struct JacobiTable {
    int weight = 0;
    long index = 1;
    long max_n = 0;
    std::map<std::pair<long, long>, Rat> coeffs;  // (n, r) with 4 n index - r^2 >= 0

    const Rat& coeff(long n, long r) const {
        static const Rat zero(0);
        auto it = coeffs.find({n, r});
        return it == coeffs.end() ? zero : it->second;
    }
    bool is_cusp() const {
        for (const auto& [nr, c] : coeffs)
            if (4 * nr.first * index - nr.second * nr.second == 0 && c != 0) return false;
        return true;
    }
};

// (V_l phi)(n, r) = sum_{d | (n, r, l)} d^{k-1} c_phi(n l / d^2, r / d).
inline JacobiTable v_operator(const JacobiIndex1& phi, long l, long max_n) {
    if (l < 1) throw std::domain_error("v_operator: l must be positive");
    JacobiTable out;
    out.weight = phi.weight;
    out.index = l;
    out.max_n = max_n;
    for (long n = 0; n <= max_n; ++n) {
        for (long r = 0; r * r <= 4 * n * l; ++r) {
            for (int s : {1, -1}) {
                const long rr = s * r;
                if (rr == 0 && s < 0) continue;
                long g = std::gcd(std::gcd(n, std::abs(rr)), l);
                if (n == 0 && rr == 0) g = l;
                Rat acc = 0;
                for (long d : divisors(g))
                    acc += Rat(int_pow(Int(d), static_cast<unsigned>(phi.weight - 1))) *
                           phi.coeff_disc((4 * n * l - rr * rr) / (d * d));
                out.coeffs[{n, rr}] = acc;
            }
        }
    }
    // index-1 structure propagates: coefficients constant on (r mod 2l, disc) classes
    for (const auto& [nr, c] : out.coeffs) {
        const auto [n, r] = nr;
        const long n2 = n + r + l, r2 = r + 2 * l;
        if (n2 <= max_n && out.coeffs.count({n2, r2}) && out.coeffs.at({n2, r2}) != c)
            throw std::logic_error("v_operator: coefficient not constant on its class");
    }
    return out;
}

}  // namespace siegelcone
