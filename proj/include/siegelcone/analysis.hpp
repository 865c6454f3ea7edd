#pragma once

// Cone assembly and certification: truncated modular cones, boundary tables,
// the F_m subcone analysis, the accumulation cone, and the polyhedrality
// certificate pipeline.

#include "limits.hpp"

#include <optional>
#include <set>
#include <sstream>

namespace siegelcone {

struct TruncatedCone {
    int k = 0;
    long det_bound = 0;   // det T <= D
    long diag_bound = 0;  // n, m <= d
    std::vector<HalfIntMatrix> matrices;
    GeneratorSet cone;  // generators normalized to first coordinate 1
    int rank = 0;
};

// Generators c_T over reduced T with 0 <= r <= m <= n <= d and det T <= D,
// scaled to the section (first coordinate 1). Positivity of a^k_2(T) is
// asserted before scaling.
inline TruncatedCone build_cone(const ModBasis& B, long D, long d) {
    TruncatedCone out;
    out.k = B.k();
    out.det_bound = D;
    out.diag_bound = d;
    if (d > B.box()) throw std::invalid_argument("build_cone: diagonal bound exceeds the box");
    std::vector<RatVec> gens;
    std::vector<std::string> labels;
    for (long n = 1; n <= d; ++n)
        for (long m = 1; m <= n; ++m)
            for (long r = 0; r <= m; ++r) {
                const HalfIntMatrix T{n, r, m};
                if (!T.is_pd() || T.four_det() > 4 * D) continue;
                RatVec v = B.c_T_vec(T);
                if (v[0] <= 0) throw std::logic_error("build_cone: non-positive leading coordinate");
                const Rat lead = v[0];
                for (auto& x : v) x /= lead;
                out.matrices.push_back(T);
                gens.push_back(std::move(v));
                labels.push_back(T.str());
            }
    out.cone = GeneratorSet(std::move(gens), std::move(labels));
    out.rank = out.cone.rank();
    return out;
}

enum class PointVerdict { interior, boundary, outside };

inline const char* verdict_name(PointVerdict v) {
    switch (v) {
        case PointVerdict::interior: return "interior";
        case PointVerdict::boundary: return "boundary";
        default: return "outside";
    }
}

inline PointVerdict to_verdict(const Classification& c) {
    switch (c.kind) {
        case Classification::Kind::interior: return PointVerdict::interior;
        case Classification::Kind::boundary: return PointVerdict::boundary;
        default: return PointVerdict::outside;
    }
}

struct BoundaryTableRow {
    long m = 0;
    PointVerdict verdict = PointVerdict::outside;
    Classification cls;
};

struct BoundaryTable {
    int k = 0;
    long det_bound = 0, diag_bound = 0;
    std::vector<BoundaryTableRow> rows;
    bool any_outside = false;
};

// Classify V_m in the truncated cone for m = 1..m_max. Outside verdicts mean
// the truncation is insufficient, never that the point leaves the full cone.
inline BoundaryTable boundary_table(const ModBasis& B, const TruncatedCone& C, long m_max) {
    BoundaryTable out;
    out.k = B.k();
    out.det_bound = C.det_bound;
    out.diag_bound = C.diag_bound;
    for (long m = 1; m <= m_max; ++m) {
        BoundaryTableRow row;
        row.m = m;
        row.cls = C.cone.classify(B.v_point(m));
        row.verdict = to_verdict(row.cls);
        if (row.verdict == PointVerdict::outside) out.any_outside = true;
        out.rows.push_back(std::move(row));
    }
    return out;
}

struct FmAnalysis {
    long m = 0;
    long bound = 0;
    int dim_Fm = 0;
    int dim_cone = 0;
    bool contains = false;
    bool internal = false;
    Classification cls;
    GeneratorSet Fm;
};

// The subcone F_m generated by all functionals c_T with bottom-right entry m
// (r of both signs collapse to r >= 0), n up to the bound.
inline FmAnalysis f_m_analysis(const ModBasis& B, const TruncatedCone& C, long m, long bound) {
    FmAnalysis out;
    out.m = m;
    out.bound = bound;
    out.dim_cone = C.rank;
    if (bound > B.box()) throw std::invalid_argument("f_m_analysis: bound exceeds the box");
    std::vector<RatVec> gens;
    std::vector<std::string> labels;
    for (long n = 1; n <= bound; ++n)
        for (long r = 0; r * r < 4 * n * m; ++r) {
            const HalfIntMatrix T{n, r, m};
            RatVec v = B.c_T_vec(T);
            const Rat lead = v[0];
            for (auto& x : v) x /= lead;
            gens.push_back(std::move(v));
            labels.push_back(T.str());
        }
    out.Fm = GeneratorSet(std::move(gens), std::move(labels));
    out.dim_Fm = out.Fm.rank();
    out.cls = out.Fm.classify(B.v_point(m));
    out.contains = out.cls.kind != Classification::Kind::outside;
    out.internal = out.cls.kind == Classification::Kind::interior;
    return out;
}

struct TailRadius {
    Rat rho_sq;          // squared ball radius
    bool eigen_regime;   // echelon basis is the normalized eigenbasis (ell <= 1)
    Rat kappa_sq;        // 1 in the eigen regime, else the computed basis constant
};

// rho^2 = kappa^2 * ell * zeta(1-k)^2 / m^{k-3}; kappa = 1 in the eigen regime.
inline TailRadius tail_radius_sq(const ModBasis& B, long m) {
    TailRadius out{Rat(0), true, Rat(1)};
    const std::size_t ell = B.ell();
    if (ell == 0) return out;
    if (ell > 1) {
        out.eigen_regime = false;
        Rat kap = 0;
        const int k = B.k();
        for (std::size_t i = 0; i < ell; ++i) {
            const auto& f = B.elliptic().cusp[i];
            for (long n = 1; n <= f.truncation(); ++n) {
                const Rat c = f.c(static_cast<int>(n));
                const Rat v =
                    c * c / (Rat(sigma_pow(0, n) * sigma_pow(0, n)) * rat_pow(Rat(n), k - 1));
                if (v > kap) kap = v;
            }
        }
        out.kappa_sq = kap;
    }
    const Rat z = zeta_neg(static_cast<unsigned>(B.k()));
    out.rho_sq = out.kappa_sq * Rat(ell) * z * z / rat_pow(Rat(m), B.k() - 3);
    return out;
}

// Exact squared distance between two section points.
inline Rat dist_sq(const RatVec& a, const RatVec& b) {
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc;
}

struct AcconeAnalysis {
    int k = 0;
    long S = 0;
    int dim = 0;
    std::vector<long> extremal_s;  // s values of extremal V_s; 0 stands for P_inf
    bool stable = false;           // extremal set identical from S/2 to S
    bool ball_ok = false;
    TailRadius tail;
    Classification pinf_class;
    DDResult dd;
};

// The truncated accumulation cone <P_inf, V_s : s <= S>: double description,
// extremal rays, stability from S/2 to S, the interiority of P_inf, and the
// ball-based tail certificate at radius tail_radius_sq(S).
inline AcconeAnalysis accone_analysis(const ModBasis& B, long S) {
    AcconeAnalysis out;
    out.k = B.k();
    out.S = S;

    auto build = [&](long bound) {
        std::vector<RatVec> gens{B.p_inf()};
        std::vector<std::string> labels{"Pinf"};
        for (long s = 1; s <= bound; ++s) {
            gens.push_back(B.v_point(s));
            labels.push_back("V_" + std::to_string(s));
        }
        return GeneratorSet(std::move(gens), std::move(labels));
    };
    const GeneratorSet full = build(S);
    out.dim = full.rank();
    if (out.dim != dim_M1(B.k()))
        throw std::logic_error("accone_analysis: dimension differs from dim M^k_1");
    out.dd = double_description(full);

    auto extremal_labels = [&](const GeneratorSet& G, const DDResult& dd) {
        std::set<RatVec> dirs;
        for (std::size_t idx : dd.extremal) {
            RatVec v = G.generator(idx);
            dirs.insert(detail::normalize_direction(std::move(v)));
        }
        return dirs;
    };
    const auto dirs_full = extremal_labels(full, out.dd);
    const GeneratorSet half = build(S / 2);
    const auto dd_half = double_description(half);
    out.stable = (extremal_labels(half, dd_half) == dirs_full);

    for (std::size_t idx : out.dd.extremal)
        out.extremal_s.push_back(idx == 0 ? 0 : static_cast<long>(idx));

    out.pinf_class = full.classify(B.p_inf());
    out.tail = tail_radius_sq(B, S);
    out.ball_ok = B.ell() == 0 || ball_in_cone(B.p_inf(), out.tail.rho_sq, out.dd.facets).inside;
    return out;
}

// sum_j eta_j sigma_{k-1}(j) P_j = (sum_j eta_j sigma_{k-1}(j)) P_inf, exactly.
inline bool pinf_identity(const ModBasis& B, const RatVec& eta) {
    RatVec acc(static_cast<std::size_t>(B.dim()), Rat(0));
    Rat total = 0;
    for (std::size_t j = 0; j < eta.size(); ++j) {
        const Rat w = eta[j] * Rat(sigma_pow(static_cast<unsigned>(B.k() - 1),
                                             static_cast<long>(j) + 1));
        total += w;
        const RatVec p = B.p_point(static_cast<long>(j) + 1);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * p[i];
    }
    RatVec rhs = B.p_inf();
    for (auto& x : rhs) x *= total;
    return acc == rhs;
}

struct PolyhedralityStage {
    long m = 0;
    std::string action;  // "subcone-certificate" | "interior" | "covered-by-ball"
    PointVerdict verdict = PointVerdict::outside;
    bool ok = false;
};

struct PolyhedralityReport {
    int k = 0;
    long det_bound = 0, diag_bound = 0;
    long m_switch = 0, S_tail = 0;
    std::vector<PolyhedralityStage> stages;
    std::vector<std::pair<long, FmAnalysis>> subcone_certificates;
    Rat tail_rho_sq;
    bool full_dimensional = false;
    bool ball_ok = false;
    bool verdict = false;
    std::string failure;
    std::optional<DDResult> facets;
};

// Desk-scale reproduction of the polyhedrality certification:
//  (i)  squarefree m <= m_switch with V_m on the boundary get the F_m
//       positive-combination certificate (V_m internal in F_m);
//  (ii) every other m <= S_tail has V_m interior in C_k(D,d);
//  (iii) the ball around P_inf with the S_tail radius lies inside the cone,
//       covering every m > S_tail.
inline PolyhedralityReport polyhedrality_certificate(const ModBasis& B, const TruncatedCone& C,
                                                     long m_switch, long S_tail) {
    PolyhedralityReport rep;
    rep.k = B.k();
    rep.det_bound = C.det_bound;
    rep.diag_bound = C.diag_bound;
    rep.m_switch = m_switch;
    rep.S_tail = S_tail;
    rep.full_dimensional = (C.rank == B.dim());
    bool ok = rep.full_dimensional;
    if (!ok) rep.failure = "cone not full-dimensional at this truncation";

    for (long m = 1; m <= S_tail && ok; ++m) {
        PolyhedralityStage st;
        st.m = m;
        const auto cls = C.cone.classify(B.v_point(m));
        st.verdict = to_verdict(cls);
        const bool squarefree_small = (m <= m_switch) && is_squarefree(m);
        if (st.verdict == PointVerdict::interior) {
            st.action = "interior";
            st.ok = true;
        } else if (st.verdict == PointVerdict::boundary && squarefree_small) {
            st.action = "subcone-certificate";
            auto fm = f_m_analysis(B, C, m, C.diag_bound);
            st.ok = fm.internal && fm.cls.interior.has_value();
            rep.subcone_certificates.emplace_back(m, std::move(fm));
            if (!st.ok) rep.failure = "F_m certificate failed at m=" + std::to_string(m);
        } else {
            st.action = st.verdict == PointVerdict::outside ? "truncation-insufficient"
                                                            : "boundary-without-certificate";
            st.ok = false;
            rep.failure = "V_m " + std::string(verdict_name(st.verdict)) +
                          " unhandled at m=" + std::to_string(m);
        }
        ok = ok && st.ok;
        rep.stages.push_back(std::move(st));
    }

    if (ok) {
        rep.facets = double_description(C.cone);
        const auto tail = tail_radius_sq(B, S_tail);
        rep.tail_rho_sq = tail.rho_sq;
        rep.ball_ok = ball_in_cone(B.p_inf(), tail.rho_sq, rep.facets->facets).inside;
        if (!rep.ball_ok) {
            ok = false;
            rep.failure = "tail ball not contained in the cone";
        }
    }
    rep.verdict = ok;
    return rep;
}

struct ConePrimeChecks {
    bool intersection_trivial = false;
    IntersectionResult intersection;
    bool rank_one_proportional = false;  // c_M(s) = (2 sigma/zeta) P_s for all s
    bool relPm_all = false;
    std::vector<long> line_witness_failures;  // s where P_s membership failed
    bool lines_ok = false;
};

// Rank-one cone interactions: trivial intersection with the modular cone, the
// proportionality c_M(s) = (2 sigma_{k-1}(s)/zeta(1-k)) P_s, and the
// non-pointedness witness for every adjoined rank-one generator.
inline ConePrimeChecks cone_prime_checks(const ModBasis& B, const TruncatedCone& C, long s_max) {
    ConePrimeChecks out;
    std::vector<RatVec> rank_one;
    std::vector<std::string> labels;
    out.rank_one_proportional = true;
    out.relPm_all = true;
    for (long s = 1; s <= s_max; ++s) {
        RatVec v = B.rank_one_vec(s);
        const Rat factor = Rat(2) * Rat(sigma_pow(static_cast<unsigned>(B.k() - 1), s)) /
                           zeta_neg(static_cast<unsigned>(B.k()));
        RatVec ps = B.p_point(s);
        for (auto& x : ps) x *= factor;
        if (ps != v) out.rank_one_proportional = false;
        if (!relPm_check(B, s).holds) out.relPm_all = false;
        rank_one.push_back(std::move(v));
        labels.push_back("M(" + std::to_string(s) + ")");
    }
    const GeneratorSet Cprime(std::move(rank_one), std::move(labels));
    out.intersection = cones_intersect_trivially(C.cone, Cprime);
    out.intersection_trivial = out.intersection.trivial;
    for (long s = 1; s <= s_max; ++s) {
        // +P_s inside the truncated cone makes the line R P_s a subset of the
        // cone enlarged by c_M(s) (the negative direction is the generator).
        const auto cls = C.cone.classify(B.p_point(s));
        if (cls.kind == Classification::Kind::outside) out.line_witness_failures.push_back(s);
    }
    out.lines_ok = out.line_witness_failures.empty();
    return out;
}

inline long infinitude_check(const ModBasis& B, long S) {
    std::set<RatVec> distinct;
    for (long s = 1; s <= S; ++s) distinct.insert(B.v_point(s));
    return static_cast<long>(distinct.size());
}

// Coefficients mu(t) sigma_{b/2}(m/t^2) of the Heegner-divisor classes
// H_{m/t^2} * omega generating the accumulation rays; zero terms dropped.
inline std::vector<std::pair<long, Int>> shimura_generator(int b, long m) {
    if (b <= 2 || b % 2 || ((1 + b / 2) % 4 + 4) % 4 != 2)
        throw std::domain_error("shimura_generator: need even b > 2 with 1 + b/2 = 2 mod 4");
    std::vector<std::pair<long, Int>> out;
    for (long t : square_divisors(m)) {
        const int mu = mobius(t);
        if (!mu) continue;
        out.emplace_back(m / (t * t),
                         Int(mu) * sigma_pow(static_cast<unsigned>(b / 2), m / (t * t)));
    }
    return out;
}

}  // namespace siegelcone
