#pragma once

// Exact convex-cone machinery with replayable certificates: point
// classification, strictly positive combinations, double description, ball
// containment and trivial-intersection tests. All geometry is relative to
// span(G); off-span points get an explicit separator.

#include "lp.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegelcone {

namespace linalg {

inline int rank(std::vector<RatVec> rows) {
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    int r = 0;
    for (std::size_t col = 0; col < ncols && r < static_cast<int>(rows.size()); ++col) {
        std::size_t sel = static_cast<std::size_t>(r);
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[static_cast<std::size_t>(r)], rows[sel]);
        const auto& prow = rows[static_cast<std::size_t>(r)];
        for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            const Rat f = rows[i][col] / prow[col];
            for (std::size_t j = col; j < ncols; ++j)
                if (prow[j] != 0) rows[i][j] -= f * prow[j];
        }
        ++r;
    }
    return r;
}

// Solve M z = rhs by elimination; nullopt when inconsistent; free variables 0.
inline std::optional<RatVec> solve(std::vector<RatVec> M, RatVec rhs) {
    const std::size_t m = M.size();
    if (rhs.size() != m) throw std::invalid_argument("linalg::solve: size mismatch");
    const std::size_t n = m ? M[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t sel = r;
        while (sel < m && M[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(M[r], M[sel]);
        std::swap(rhs[r], rhs[sel]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || M[i][col] == 0) continue;
            const Rat f = M[i][col] / M[r][col];
            for (std::size_t j = col; j < n; ++j)
                if (M[r][j] != 0) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (rhs[i] != 0) return std::nullopt;
    RatVec z(n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = rhs[i] / M[i][pivot_col[i]];
    return z;
}

// Basis of { z : g . z = 0 for every row g }.
inline std::vector<RatVec> kernel_of_rows(std::vector<RatVec> rows, std::size_t dim) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Rat inv = Rat(1) / rows[r][col];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const Rat f = rows[i][col];
            for (std::size_t j = 0; j < dim; ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    std::vector<bool> is_pivot(dim, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVec> kernel;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) continue;
        RatVec z(dim, Rat(0));
        z[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) z[pivots[i]] = -rows[i][free];
        kernel.push_back(std::move(z));
    }
    return kernel;
}

}  // namespace linalg

struct InteriorCertificate {
    RatVec mu;                        // strictly positive multipliers
    std::vector<std::size_t> chosen;  // generator indices mu refers to
    int sublist_rank = 0;             // equals rank(G) by construction
};

struct BoundaryCertificate {
    RatVec y;  // y != 0; y.g >= 0 for all generators; y.x = 0 (or y.x < 0 for separators)
};

struct Classification {
    enum class Kind { interior, boundary, outside } kind = Kind::outside;
    std::optional<InteriorCertificate> interior;
    std::optional<BoundaryCertificate> boundary;  // supporting functional / separator
    bool off_span = false;
};

class GeneratorSet {
  public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<RatVec> gens, std::vector<std::string> labels = {})
        : gens_(std::move(gens)), labels_(std::move(labels)) {
        if (!labels_.empty() && labels_.size() != gens_.size())
            throw std::invalid_argument("GeneratorSet: label count mismatch");
        for (const auto& g : gens_) {
            if (g.size() != dim()) throw std::invalid_argument("GeneratorSet: ragged generators");
            if (is_zero(g)) throw std::invalid_argument("GeneratorSet: zero generator");
        }
        build_span();
    }

    std::size_t size() const { return gens_.size(); }
    std::size_t dim() const { return gens_.empty() ? 0 : gens_[0].size(); }
    int rank() const { return rank_; }
    const std::vector<RatVec>& generators() const { return gens_; }
    const RatVec& generator(std::size_t i) const { return gens_.at(i); }
    const std::string& label(std::size_t i) const {
        static const std::string empty;
        return labels_.empty() ? empty : labels_.at(i);
    }
    const std::vector<RatVec>& gen_coords() const { return gen_coords_; }
    const std::vector<RatVec>& span_basis() const { return span_basis_; }

    std::optional<RatVec> span_coords(const RatVec& v) const {
        std::vector<RatVec> M(dim(), RatVec(static_cast<std::size_t>(rank_), Rat(0)));
        for (int j = 0; j < rank_; ++j)
            for (std::size_t i = 0; i < dim(); ++i)
                M[i][static_cast<std::size_t>(j)] = span_basis_[static_cast<std::size_t>(j)][i];
        return linalg::solve(std::move(M), v);
    }

    // Ambient y in span(G) acting as the span-coordinate functional yc.
    RatVec lift_functional(const RatVec& yc) const {
        const std::size_t r = static_cast<std::size_t>(rank_);
        std::vector<RatVec> gram(r, RatVec(r, Rat(0)));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(span_basis_[i], span_basis_[j]);
        const auto w = linalg::solve(std::move(gram), yc);
        if (!w) throw std::logic_error("lift_functional: Gram system inconsistent");
        RatVec y(dim(), Rat(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < dim(); ++i) y[i] += (*w)[j] * span_basis_[j][i];
        return y;
    }

    RatVec span_separator(const RatVec& x) const {
        for (const auto& z : linalg::kernel_of_rows(gens_, dim()))
            if (dot(z, x) != 0) return z;
        throw std::logic_error("span_separator: x lies in the span");
    }

    // max { eps in [0,1] : x - eps*sum(g) in cone(G) }; nullopt if x off span
    // or not a member. Also returns lambda with  G lambda + eps sum(g) = x
    // and, at eps = 0, the dual functional over the coordinate rows.
    struct EpsLp {
        Rat eps;
        RatVec lambda;
        RatVec dual_coords;
    };
    std::optional<EpsLp> interior_lp(const RatVec& x) const {
        const auto xc = span_coords(x);
        if (!xc) return std::nullopt;
        const std::size_t r = static_cast<std::size_t>(rank_);
        const std::size_t n = size();
        std::vector<RatVec> A(r + 1, RatVec(n + 2, Rat(0)));
        RatVec b(r + 1, Rat(0)), c(n + 2, Rat(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < r; ++i) {
                A[i][j] = gen_coords_[j][i];
                A[i][n] += gen_coords_[j][i];
            }
        for (std::size_t i = 0; i < r; ++i) b[i] = (*xc)[i];
        A[r][n] = 1;
        A[r][n + 1] = 1;
        b[r] = 1;
        c[n] = 1;
        const LpResult res = lp_maximize(A, b, c);
        if (res.status != LpResult::Status::optimal) return std::nullopt;
        EpsLp out;
        out.eps = res.objective;
        out.lambda.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n));
        out.dual_coords.assign(res.dual.begin(), res.dual.begin() + static_cast<std::ptrdiff_t>(r));
        return out;
    }

    std::optional<InteriorCertificate> positive_combination(const RatVec& x) const {
        const auto lp = interior_lp(x);
        if (!lp || lp->eps == 0) return std::nullopt;
        InteriorCertificate cert;
        cert.sublist_rank = rank_;
        RatVec acc(dim(), Rat(0));
        for (std::size_t j = 0; j < size(); ++j) {
            const Rat mu = lp->lambda[j] + lp->eps;
            if (mu <= 0) throw std::logic_error("positive_combination: non-positive multiplier");
            cert.mu.push_back(mu);
            cert.chosen.push_back(j);
            for (std::size_t i = 0; i < dim(); ++i) acc[i] += mu * gens_[j][i];
        }
        if (acc != x) throw std::logic_error("positive_combination: replay failed");
        return cert;
    }

    Classification classify(const RatVec& x) const {
        if (x.size() != dim()) throw std::invalid_argument("classify: dimension mismatch");
        Classification out;
        const auto xc = span_coords(x);
        if (!xc) {
            out.kind = Classification::Kind::outside;
            out.off_span = true;
            out.boundary = BoundaryCertificate{span_separator(x)};
            return out;
        }
        const std::size_t r = static_cast<std::size_t>(rank_);
        std::vector<RatVec> A(r, RatVec(size(), Rat(0)));
        for (std::size_t j = 0; j < size(); ++j)
            for (std::size_t i = 0; i < r; ++i) A[i][j] = gen_coords_[j][i];
        const LpResult member = lp_feasible(A, *xc);
        if (member.status == LpResult::Status::infeasible) {
            out.kind = Classification::Kind::outside;
            RatVec yc(r, Rat(0));
            for (std::size_t i = 0; i < r; ++i) yc[i] = -member.farkas[i];
            RatVec y = lift_functional(yc);
            for (const auto& g : gens_)
                if (dot(y, g) < 0) throw std::logic_error("classify: invalid separator");
            if (dot(y, x) >= 0) throw std::logic_error("classify: separator misses x");
            out.boundary = BoundaryCertificate{std::move(y)};
            return out;
        }
        const auto lp = interior_lp(x);
        if (!lp) throw std::logic_error("classify: member but eps-LP failed");
        if (lp->eps > 0) {
            out.kind = Classification::Kind::interior;
            out.interior = positive_combination(x);
            return out;
        }
        out.kind = Classification::Kind::boundary;
        RatVec y = lift_functional(lp->dual_coords);
        Rat total = 0;
        for (const auto& g : gens_) {
            const Rat v = dot(y, g);
            if (v < 0) throw std::logic_error("classify: invalid supporting functional");
            total += v;
        }
        if (total <= 0 || dot(y, x) != 0)
            throw std::logic_error("classify: supporting functional failed replay");
        for (auto& v : y) v /= total;  // normalize sum_g y.g = 1
        out.boundary = BoundaryCertificate{std::move(y)};
        return out;
    }

  private:
    std::vector<RatVec> gens_;
    std::vector<std::string> labels_;
    std::vector<RatVec> span_basis_;
    std::vector<RatVec> gen_coords_;
    int rank_ = 0;

    void build_span() {
        std::vector<RatVec> rows;
        for (const auto& g : gens_) {
            rows.push_back(g);
            if (linalg::rank(rows) == static_cast<int>(rows.size()))
                span_basis_.push_back(g);
            else
                rows.pop_back();
        }
        rank_ = static_cast<int>(span_basis_.size());
        gen_coords_.reserve(gens_.size());
        for (const auto& g : gens_) {
            auto c = span_coords(g);
            if (!c) throw std::logic_error("GeneratorSet: generator off its own span");
            gen_coords_.push_back(std::move(*c));
        }
    }
};

// --- Double description ------------------------------------------------------

struct FacetList {
    std::vector<RatVec> normals;        // ambient vectors inside span(G), normalized
    std::vector<RatVec> span_normals;   // same facets in span coordinates
};

struct DDResult {
    FacetList facets;
    std::vector<std::size_t> extremal;  // indices into G of extremal generators
};

namespace detail {

using Bitset = std::vector<std::uint64_t>;

inline Bitset bitset_make(std::size_t n) { return Bitset((n + 63) / 64, 0); }
inline void bitset_set(Bitset& b, std::size_t i) { b[i / 64] |= (1ULL << (i % 64)); }
inline bool bitset_get(const Bitset& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
inline Bitset bitset_and(const Bitset& a, const Bitset& b) {
    Bitset out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}
inline bool bitset_subset(const Bitset& small, const Bitset& big) {
    for (std::size_t i = 0; i < small.size(); ++i)
        if (small[i] & ~big[i]) return false;
    return true;
}

inline RatVec normalize_direction(RatVec v) {
    for (const auto& x : v)
        if (x != 0) {
            const Rat s = x > 0 ? x : -x;
            for (auto& y : v) y /= s;
            return v;
        }
    throw std::invalid_argument("normalize_direction: zero vector");
}

}  // namespace detail

// Motzkin double description on span coordinates. The cone must have rank >= 1.
inline DDResult double_description(const GeneratorSet& G) {
    if (G.rank() < 1) throw std::invalid_argument("double_description: empty cone");
    const std::size_t r = static_cast<std::size_t>(G.rank());

    // Deduplicate ray directions, remembering a representative index.
    std::vector<RatVec> dirs;
    std::vector<std::size_t> rep;
    {
        std::vector<RatVec> seen;
        for (std::size_t i = 0; i < G.size(); ++i) {
            RatVec d = detail::normalize_direction(G.gen_coords()[i]);
            bool dup = false;
            for (const auto& s : seen)
                if (s == d) {
                    dup = true;
                    break;
                }
            if (!dup) {
                seen.push_back(d);
                dirs.push_back(G.gen_coords()[i]);
                rep.push_back(i);
            }
        }
    }
    const std::size_t n = dirs.size();

    // Initial simplicial subcone from r independent directions; remaining
    // directions are inserted afterwards (insertion order = discovery order).
    std::vector<std::size_t> init;
    {
        std::vector<RatVec> rows;
        for (std::size_t i = 0; i < n && init.size() < r; ++i) {
            rows.push_back(dirs[i]);
            if (linalg::rank(rows) == static_cast<int>(rows.size()))
                init.push_back(i);
            else
                rows.pop_back();
        }
        if (init.size() < r) throw std::logic_error("double_description: rank drop");
    }

    struct Facet {
        RatVec normal;       // span coordinates
        detail::Bitset zero; // processed directions the facet vanishes on
    };
    std::vector<Facet> facets;
    std::vector<bool> processed(n, false);

    // facet normals of the simplicial cone: rows of M^{-1}, M = [dirs[init]] columns
    {
        std::vector<RatVec> M(r, RatVec(r, Rat(0)));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < r; ++i) M[i][j] = dirs[init[j]][i];
        for (std::size_t i = 0; i < r; ++i) {
            RatVec e(r, Rat(0));
            e[i] = 1;
            // row i of M^{-1}: solve M^T z = e_i
            std::vector<RatVec> Mt(r, RatVec(r, Rat(0)));
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) Mt[a][b] = M[b][a];
            const auto z = linalg::solve(std::move(Mt), e);
            if (!z) throw std::logic_error("double_description: singular simplicial base");
            Facet f;
            f.normal = *z;
            f.zero = detail::bitset_make(n);
            facets.push_back(std::move(f));
        }
        for (std::size_t j = 0; j < r; ++j) {
            processed[init[j]] = true;
            for (auto& f : facets)
                if (dot(f.normal, dirs[init[j]]) == 0) detail::bitset_set(f.zero, init[j]);
        }
    }

    for (std::size_t g = 0; g < n; ++g) {
        if (processed[g]) continue;
        const RatVec& v = dirs[g];
        std::vector<std::size_t> pos, neg, zero;
        std::vector<Rat> val(facets.size());
        for (std::size_t f = 0; f < facets.size(); ++f) {
            val[f] = dot(facets[f].normal, v);
            if (val[f] > 0)
                pos.push_back(f);
            else if (val[f] < 0)
                neg.push_back(f);
            else
                zero.push_back(f);
        }
        std::vector<Facet> next;
        for (std::size_t f : pos) next.push_back(facets[f]);
        for (std::size_t f : zero) {
            next.push_back(facets[f]);
            detail::bitset_set(next.back().zero, g);
        }
        for (std::size_t fp : pos)
            for (std::size_t fn : neg) {
                const auto common = detail::bitset_and(facets[fp].zero, facets[fn].zero);
                // adjacency: no third facet vanishes on everything both do
                bool adjacent = true;
                if (r > 2) {
                    for (std::size_t fo = 0; fo < facets.size() && adjacent; ++fo) {
                        if (fo == fp || fo == fn) continue;
                        if (detail::bitset_subset(common, facets[fo].zero)) adjacent = false;
                    }
                }
                if (!adjacent) continue;
                Facet nf;
                nf.normal.assign(r, Rat(0));
                for (std::size_t i = 0; i < r; ++i)
                    nf.normal[i] = val[fp] * facets[fn].normal[i] - val[fn] * facets[fp].normal[i];
                nf.normal = detail::normalize_direction(nf.normal);
                nf.zero = common;
                detail::bitset_set(nf.zero, g);
                bool dup = false;
                for (const auto& other : next)
                    if (other.normal == nf.normal) {
                        dup = true;
                        break;
                    }
                if (!dup) next.push_back(std::move(nf));
            }
        facets = std::move(next);
        processed[g] = true;
    }

    DDResult out;
    for (auto& f : facets) {
        f.normal = detail::normalize_direction(f.normal);
        out.facets.span_normals.push_back(f.normal);
        out.facets.normals.push_back(detail::normalize_direction(G.lift_functional(f.normal)));
    }
    // soundness replay + facet-rank invariant
    for (std::size_t f = 0; f < facets.size(); ++f) {
        std::vector<RatVec> on_facet;
        for (std::size_t i = 0; i < n; ++i) {
            const Rat v = dot(facets[f].normal, dirs[i]);
            if (v < 0) throw std::logic_error("double_description: generator violates facet");
            if (v == 0) on_facet.push_back(dirs[i]);
        }
        if (static_cast<std::size_t>(G.rank()) >= 2 &&
            linalg::rank(on_facet) != G.rank() - 1)
            throw std::logic_error("double_description: non-facet normal survived");
    }
    // extremal generators: zero-set of facets through them has rank r-1
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RatVec> through;
        for (const auto& f : facets)
            if (dot(f.normal, dirs[i]) == 0) through.push_back(f.normal);
        const int need = static_cast<int>(r) - 1;
        if (linalg::rank(through) == need) out.extremal.push_back(rep[i]);
    }
    return out;
}

// Exact squared form of "dist(P, facet hyperplane) >= rho" for every facet,
// with P strictly inside. Facets empty means the cone fills its span.
struct BallCheck {
    bool inside = false;
    std::vector<std::pair<Rat, Rat>> margins;  // per facet: ((y.P)^2, rho_sq * |y|^2)
};

inline BallCheck ball_in_cone(const RatVec& P, const Rat& rho_sq, const FacetList& facets) {
    BallCheck out;
    out.inside = true;
    for (const auto& y : facets.normals) {
        const Rat yp = dot(y, P);
        const Rat lhs = yp * yp;
        const Rat rhs = rho_sq * norm_sq(y);
        out.margins.emplace_back(lhs, rhs);
        if (yp <= 0 || lhs < rhs) out.inside = false;
    }
    return out;
}

struct IntersectionResult {
    bool trivial = false;
    RatVec witness;    // common nonzero point when not trivial
    RatVec separator;  // y with y.g1 < 0 for all g1, y.g2 >= 0 for all g2, when trivial
};

// true iff cone(G1) and cone(G2) meet only at the origin, decided by the LP
// { G1 lambda = G2 nu, lambda,nu >= 0, sum lambda = 1 }.
inline IntersectionResult cones_intersect_trivially(const GeneratorSet& G1,
                                                    const GeneratorSet& G2) {
    if (G1.dim() != G2.dim())
        throw std::invalid_argument("cones_intersect_trivially: dimension mismatch");
    const std::size_t d = G1.dim(), n1 = G1.size(), n2 = G2.size();
    std::vector<RatVec> A(d + 1, RatVec(n1 + n2, Rat(0)));
    RatVec b(d + 1, Rat(0));
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t i = 0; i < d; ++i) A[i][j] = G1.generator(j)[i];
        A[d][j] = 1;
    }
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < d; ++i) A[i][n1 + j] = -G2.generator(j)[i];
    b[d] = 1;
    const LpResult res = lp_feasible(A, b);
    IntersectionResult out;
    if (res.status == LpResult::Status::infeasible) {
        out.trivial = true;
        out.separator.assign(res.farkas.begin(), res.farkas.begin() + static_cast<std::ptrdiff_t>(d));
        for (std::size_t j = 0; j < n1; ++j)
            if (dot(out.separator, G1.generator(j)) >= 0)
                throw std::logic_error("cones_intersect_trivially: bad separator (G1)");
        for (std::size_t j = 0; j < n2; ++j)
            if (dot(out.separator, G2.generator(j)) < 0)
                throw std::logic_error("cones_intersect_trivially: bad separator (G2)");
        return out;
    }
    out.trivial = false;
    out.witness.assign(d, Rat(0));
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t i = 0; i < d; ++i) out.witness[i] += res.x[j] * G1.generator(j)[i];
    if (is_zero(out.witness))
        throw std::logic_error("cones_intersect_trivially: zero witness (positive circuit)");
    return out;
}

}  // namespace siegelcone
