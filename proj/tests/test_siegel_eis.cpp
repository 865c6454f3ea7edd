#include <catch2/catch_amalgamated.hpp>

#include <siegelcone/siegel_eis.hpp>

using namespace siegelcone;

namespace {

// Exhaustive oracle: smallest reduced form reachable by short GL2(Z) words.
HalfIntMatrix reduce_by_search(const HalfIntMatrix& T) {
    std::vector<HalfIntMatrix> frontier{T};
    std::vector<HalfIntMatrix> seen{T};
    const std::vector<Unimodular> moves = {
        {0, 1, 1, 0}, {1, 0, 0, -1}, {1, 0, 1, 1}, {1, 0, -1, 1}, {1, 1, 0, 1}, {1, -1, 0, 1}};
    HalfIntMatrix best = T;
    for (int depth = 0; depth < 8; ++depth) {
        std::vector<HalfIntMatrix> next;
        for (const auto& cur : frontier)
            for (const auto& mv : moves) {
                const auto cand = transform(cur, mv);
                if (std::abs(cand.n) > 4 * T.n + 4 * T.m + 8) continue;
                bool dup = false;
                for (const auto& s : seen)
                    if (s == cand) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                seen.push_back(cand);
                next.push_back(cand);
                if (cand.is_reduced() && (!best.is_reduced() || cand < best)) best = cand;
            }
        frontier = std::move(next);
    }
    return best;
}

std::vector<HalfIntMatrix> reduced_matrices_with_det_bound(long four_det_bound) {
    std::vector<HalfIntMatrix> out;
    for (long m = 1; 3 * m * m <= four_det_bound; ++m)
        for (long n = m; 4 * n * m - m * m <= four_det_bound; ++n)
            for (long r = 0; r <= m; ++r) {
                const HalfIntMatrix T{n, r, m};
                if (T.is_pd() && T.four_det() <= four_det_bound) out.push_back(T);
            }
    return out;
}

}  // namespace

TEST_CASE("reduction") {
    SECTION("worked example") {
        const auto res = reduce({5, 3, 1});
        CHECK(res.reduced == HalfIntMatrix{3, 1, 1});
        CHECK(res.reduced.four_det() == 11);
    }
    SECTION("reduced input is fixed") {
        const auto res = reduce({4, 1, 2});
        CHECK(res.reduced == HalfIntMatrix{4, 1, 2});
        CHECK(res.U.a == 1);
        CHECK(res.U.b == 0);
        CHECK(res.U.c == 0);
        CHECK(res.U.d == 1);
    }
    SECTION("agrees with exhaustive search and preserves det") {
        for (long n = 1; n <= 7; ++n)
            for (long m = 1; m <= 7; ++m)
                for (long r = -6; r <= 6; ++r) {
                    const HalfIntMatrix T{n, r, m};
                    if (!T.is_pd()) continue;
                    const auto res = reduce(T);
                    REQUIRE(res.reduced.is_reduced());
                    REQUIRE(res.reduced.four_det() == T.four_det());
                    REQUIRE(std::abs(res.U.det()) == 1);
                    REQUIRE(transform(T, res.U) == res.reduced);
                    REQUIRE(res.reduced == reduce_by_search(T));
                }
    }
    SECTION("singular representative is the content") {
        CHECK(reduced_representative({1, 2, 1}) == rank_one_matrix(1));
        CHECK(reduced_representative({8, 8, 2}) == rank_one_matrix(2));
        CHECK(reduced_representative({0, 0, 3}) == rank_one_matrix(3));
        CHECK(reduced_representative({0, 0, 0}).is_zero());
    }
}

TEST_CASE("siegel eisenstein coefficients") {
    SECTION("normalizations") {
        CHECK(siegel_eis_coeff(10, {0, 0, 0}) == 1);
        // singular coefficients are elliptic Eisenstein coefficients
        for (int k : {10, 14}) {
            const Rat fac = Rat(2) / zeta_neg(static_cast<unsigned>(k));
            for (long n = 1; n <= 8; ++n)
                REQUIRE(siegel_eis_coeff(k, {n, 0, 0}) ==
                        fac * Rat(sigma_pow(static_cast<unsigned>(k - 1), n)));
        }
    }
    SECTION("local series is 1 away from the determinant") {
        const HalfIntMatrix T{1, 1, 1};  // 4det = 3
        CHECK(local_siegel_series(T, 5, 10) == 1);
        CHECK(local_siegel_series(T, 2, 10) == 1);
    }
    SECTION("cross-formula agreement and F_p = 1 mod p") {
        for (int k : {10, 14}) {
            for (const auto& T : reduced_matrices_with_det_bound(200)) {
                REQUIRE(siegel_eis_coeff(k, T) == siegel_series_coeff(k, T));
                for (const auto& [p, e] : factorize(T.four_det())) {
                    REQUIRE(local_siegel_series(T, p, k) % p == 1);
                    (void)e;
                }
            }
        }
    }
    SECTION("sign laws") {
        // positive definite T: positive for every even k; singular T != 0:
        // the sign of zeta(1-k), negative exactly when k = 2 mod 4
        for (const auto& T : reduced_matrices_with_det_bound(200)) {
            REQUIRE(siegel_eis_coeff(10, T) > 0);
            REQUIRE(siegel_eis_coeff(8, T) > 0);
        }
        for (long e = 1; e <= 12; ++e) {
            REQUIRE(siegel_eis_coeff(10, {e, 0, 0}) < 0);
            REQUIRE(siegel_eis_coeff(8, {e, 0, 0}) > 0);
        }
    }
    SECTION("weight 8 pins E_8 = E_4^2 (dim M^8_2 = 1)") {
        // a^8_2((1,0,1)) must equal the (1,0,1)-coefficient of E_4^2
        const Rat a4_101 = siegel_eis_coeff(4, {1, 0, 1});
        const Rat a4_sing = siegel_eis_coeff(4, {1, 0, 0});
        REQUIRE(siegel_eis_coeff(8, {1, 0, 1}) == 2 * a4_101 + 2 * a4_sing * a4_sing);
        REQUIRE(siegel_eis_coeff(8, {1, 0, 1}) == 175680);
    }
    SECTION("k = 10, T = (1,1,1) agreement recorded") {
        const Rat a = siegel_eis_coeff(10, {1, 1, 1});
        const Rat b = siegel_series_coeff(10, {1, 1, 1});
        REQUIRE(a == b);
        REQUIRE(a > 0);
    }
    SECTION("off-diagonal sign irrelevant") {
        CHECK(siegel_eis_coeff(10, {3, 2, 2}) == siegel_eis_coeff(10, {3, -2, 2}));
    }
}

TEST_CASE("coefficient ratios") {
    SECTION("t = 1") {
        CHECK(ratio(10, {2, 1, 1}, 1) == 1);
    }
    SECTION("t not dividing r gives 0") {
        CHECK(ratio(10, {5, 1, 4}, 2) == 0);
        CHECK(ratio(10, {9, 1, 9}, 3) == 0);
    }
    SECTION("strictly between 0 and 1, and the product law") {
        for (int k : {10, 14}) {
            for (const auto& T : reduced_matrices_with_det_bound(600)) {
                for (long t : square_divisors(T.m)) {
                    if (t == 1) continue;
                    const Rat q = ratio(k, T, t);  // internal product-law assert
                    if (T.r % t == 0) {
                        REQUIRE(q > 0);
                        REQUIRE(q < 1);
                    } else {
                        REQUIRE(q == 0);
                    }
                }
            }
        }
    }
}
