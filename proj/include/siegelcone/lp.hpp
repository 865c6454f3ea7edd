#pragma once

// Exact rational simplex with dual and Farkas certificate extraction. The
// entering rule is Dantzig's until a degenerate stall, then permanently
// Bland's, which guarantees termination; the result is deterministic for
// deterministic input order either way.

#include "rational.hpp"

#include <stdexcept>
#include <vector>

namespace siegelcone {

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rat objective = 0;
    RatVec x;       // primal solution (original columns), when optimal
    RatVec dual;    // y = c_B B^{-1} per row, when optimal
    RatVec farkas;  // y with y^T A <= 0, y^T b > 0, when infeasible
};

// maximize c^T x  subject to  A x = b, x >= 0.
class SimplexSolver {
  public:
    SimplexSolver(std::vector<RatVec> A, RatVec b, RatVec c)
        : rows_(A.size()), cols_(c.size()), A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {
        for (const auto& row : A_)
            if (row.size() != cols_) throw std::invalid_argument("SimplexSolver: ragged matrix");
        if (b_.size() != rows_) throw std::invalid_argument("SimplexSolver: rhs size mismatch");
    }

    LpResult solve() {
        build_tableau();
        phase_one_ = true;
        rebuild_cost_row();
        run();
        LpResult res;
        if (-cost_[rhs()] != 0) {  // phase-I optimum below zero: infeasible
            res.status = LpResult::Status::infeasible;
            res.farkas = extract_dual();
            for (std::size_t i = 0; i < rows_; ++i) {
                res.farkas[i] = -res.farkas[i];
                if (flipped_[i]) res.farkas[i] = -res.farkas[i];
            }
            return res;
        }
        drive_out_artificials();
        phase_one_ = false;
        rebuild_cost_row();
        if (!run()) {
            res.status = LpResult::Status::unbounded;
            return res;
        }
        res.status = LpResult::Status::optimal;
        res.x.assign(cols_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (!dropped_[i] && basis_[i] < cols_) res.x[basis_[i]] = tab_[i][rhs()];
        res.objective = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (res.x[j] != 0) res.objective += c_[j] * res.x[j];
        res.dual = extract_dual();
        for (std::size_t i = 0; i < rows_; ++i)
            if (flipped_[i]) res.dual[i] = -res.dual[i];
        return res;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<RatVec> A_;
    RatVec b_, c_;
    std::vector<RatVec> tab_;         // rows x (cols + artificials + rhs)
    RatVec cost_;                     // reduced costs, same width; rhs slot = -objective
    std::vector<std::size_t> basis_;
    std::vector<bool> flipped_;
    std::vector<bool> dropped_;
    bool phase_one_ = true;

    std::size_t art(std::size_t i) const { return cols_ + i; }
    std::size_t rhs() const { return cols_ + rows_; }
    std::size_t width() const { return cols_ + rows_ + 1; }

    void build_tableau() {
        flipped_.assign(rows_, false);
        dropped_.assign(rows_, false);
        tab_.assign(rows_, RatVec(width(), Rat(0)));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            const bool flip = b_[i] < 0;
            flipped_[i] = flip;
            for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = flip ? -A_[i][j] : A_[i][j];
            tab_[i][art(i)] = 1;
            tab_[i][rhs()] = flip ? -b_[i] : b_[i];
            basis_[i] = art(i);
        }
    }

    Rat cost_of(std::size_t var) const {
        if (phase_one_) return var >= cols_ ? Rat(-1) : Rat(0);
        return var < cols_ ? c_[var] : Rat(0);
    }

    // cost_[j] = c_j - c_B B^{-1} A_j, recomputed at phase switches only.
    void rebuild_cost_row() {
        cost_.assign(width(), Rat(0));
        for (std::size_t j = 0; j < width(); ++j) {
            Rat z = 0;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (dropped_[i] || tab_[i][j] == 0) continue;
                const Rat cb = cost_of(basis_[i]);
                if (cb != 0) z += cb * tab_[i][j];
            }
            cost_[j] = (j == rhs() ? Rat(0) : cost_of(j)) - z;
        }
    }

    RatVec extract_dual() const {
        RatVec y(rows_, Rat(0));
        // reduced cost of artificial i is cost_of(art) - y_i
        for (std::size_t i = 0; i < rows_; ++i)
            y[i] = (phase_one_ ? Rat(-1) : Rat(0)) - cost_[art(i)];
        return y;
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        const Rat inv = Rat(1) / tab_[prow][pcol];
        if (inv != 1)
            for (auto& v : tab_[prow])
                if (v != 0) v *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == prow || dropped_[i] || tab_[i][pcol] == 0) continue;
            const Rat f = tab_[i][pcol];
            auto& row = tab_[i];
            const auto& prow_v = tab_[prow];
            for (std::size_t j = 0; j < width(); ++j)
                if (prow_v[j] != 0) row[j] -= f * prow_v[j];
        }
        if (cost_[pcol] != 0) {
            const Rat f = cost_[pcol];
            const auto& prow_v = tab_[prow];
            for (std::size_t j = 0; j < width(); ++j)
                if (prow_v[j] != 0) cost_[j] -= f * prow_v[j];
        }
        basis_[prow] = pcol;
    }

    // Returns false on unboundedness.
    bool run() {
        const std::size_t limit = phase_one_ ? cols_ + rows_ : cols_;
        bool bland = false;
        int stall = 0;
        Rat last_obj = -cost_[rhs()];
        for (;;) {
            std::size_t enter = width();
            if (!bland) {
                Rat best = 0;
                for (std::size_t j = 0; j < limit; ++j)
                    if (cost_[j] > best) {
                        best = cost_[j];
                        enter = j;
                    }
            } else {
                for (std::size_t j = 0; j < limit; ++j)
                    if (cost_[j] > 0 && !is_basic(j)) {
                        enter = j;
                        break;
                    }
            }
            if (enter == width()) return true;  // optimal
            std::size_t leave = rows_;
            Rat best_ratio;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (dropped_[i] || tab_[i][enter] <= 0) continue;
                const Rat ratio = tab_[i][rhs()] / tab_[i][enter];
                if (leave == rows_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_) return false;  // unbounded
            pivot(leave, enter);
            if (!bland) {
                const Rat obj = -cost_[rhs()];
                if (obj == last_obj) {
                    if (++stall > 40) bland = true;  // permanent anti-cycling fallback
                } else {
                    stall = 0;
                    last_obj = obj;
                }
            }
        }
    }

    bool is_basic(std::size_t j) const {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!dropped_[i] && basis_[i] == j) return true;
        return false;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (dropped_[i] || basis_[i] < cols_) continue;
            std::size_t j = 0;
            for (; j < cols_; ++j)
                if (tab_[i][j] != 0) break;
            if (j < cols_)
                pivot(i, j);
            else
                dropped_[i] = true;  // redundant constraint
        }
    }
};

inline LpResult lp_maximize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c) {
    return SimplexSolver(A, b, c).solve();
}

inline LpResult lp_feasible(const std::vector<RatVec>& A, const RatVec& b) {
    return lp_maximize(A, b, RatVec(A.empty() ? 0 : A[0].size(), Rat(0)));
}

}  // namespace siegelcone
