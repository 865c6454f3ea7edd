#include <catch2/catch_amalgamated.hpp>

#include <siegelcone/analysis.hpp>
#include <siegelcone/propbmc.hpp>

using namespace siegelcone;

namespace {
// One weight-18 basis at a small box shared across the suite.
const ModBasis& basis18() {
    static ModBasis B(18, 12, 260);
    return B;
}
}  // namespace

TEST_CASE("mod basis shape at k = 18") {
    const auto& B = basis18();
    CHECK(B.dim() == 4);
    CHECK(B.ell() == 1);
    CHECK(B.ell_prime() == 2);
    CHECK(B.const_factor() == zeta_neg(18) / 2);
    CHECK(B.fingerprint().size() == 16);
}

TEST_CASE("functional vectors") {
    const auto& B = basis18();
    SECTION("c_T is GL2-invariant with positive leading coordinate") {
        const HalfIntMatrix T{5, 3, 1};
        const auto v1 = B.c_T_vec(T);
        const auto v2 = B.c_T_vec(reduce(T).reduced);
        CHECK(v1 == v2);
        CHECK(v1[0] > 0);
    }
    SECTION("c at the zero matrix is the Eisenstein indicator") {
        const auto v = B.c_T_vec({0, 0, 0});
        CHECK(v[0] == 1);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == 0);
    }
    SECTION("rank-one functionals have zero cusp coordinates") {
        for (long s = 1; s <= 12; ++s) {
            const auto v = B.rank_one_vec(s);
            CHECK(v[0] < 0);  // 2 sigma / zeta(1-k) with zeta(1-k) < 0
            CHECK(v[2] == 0);
            CHECK(v[3] == 0);
            // agreement with the coefficient extraction at M(s)
            CHECK(v == B.c_T_vec({s, 0, 0}));
        }
    }
    SECTION("rank_one = (2 sigma/zeta) P_s") {
        for (long s = 1; s <= 12; ++s) {
            RatVec ps = B.p_point(s);
            const Rat f = Rat(2) * Rat(sigma_pow(17, s)) / zeta_neg(18);
            for (auto& x : ps) x *= f;
            REQUIRE(ps == B.rank_one_vec(s));
        }
    }
}

TEST_CASE("distinguished points") {
    const auto& B = basis18();
    SECTION("V, P, Q relations") {
        CHECK(B.p_point(1) == B.v_point(1));
        CHECK(B.p_point(6) == B.v_point(6));   // squarefree
        CHECK(B.p_point(4) != B.v_point(4));   // non-squarefree
        LimitTuple zero4{4, {{2, Rat(0)}}};
        CHECK(B.q_point(zero4) == B.v_point(4));
    }
    SECTION("Q_4(lambda) = (1-lambda) V_4 + lambda V_1") {
        for (const Rat& lam : {Rat(1, 3), Rat(1, 7), Rat(0)}) {
            LimitTuple lt{4, {{2, lam}}};
            const auto q = B.q_point(lt);
            const auto v4 = B.v_point(4), v1 = B.v_point(1);
            for (std::size_t i = 0; i < q.size(); ++i)
                REQUIRE(q[i] == (1 - lam) * v4[i] + lam * v1[i]);
            REQUIRE(decompose_Q_matches(B, lt));
        }
    }
    SECTION("m = 36 decomposition coefficients") {
        LimitTuple lt{36, {{2, Rat(1, 5)}, {3, Rat(1, 7)}, {6, Rat(1, 35)}}};
        const auto dec = decompose_Q(lt);
        REQUIRE(dec.coefficients.size() == 4);
        // order of square divisors: t = 1, 2, 3, 6 -> indices 36, 9, 4, 1
        CHECK(dec.coefficients[0] == std::make_pair(36L, Rat(1) - Rat(1, 5) - Rat(1, 7) + Rat(1, 35)));
        CHECK(dec.coefficients[1] == std::make_pair(9L, Rat(1, 5) - Rat(1, 35)));
        CHECK(dec.coefficients[2] == std::make_pair(4L, Rat(1, 7) - Rat(1, 35)));
        CHECK(dec.coefficients[3] == std::make_pair(1L, Rat(1, 35)));
        CHECK(dec.sum_is_one);
        CHECK(dec.all_nonnegative);
        CHECK(decompose_Q_matches(B, lt));
    }
    SECTION("P_s identity for s <= 36") {
        for (long s = 1; s <= 36; ++s) {
            const auto res = relPm_check(B, s);
            INFO("s = " << s);
            REQUIRE(res.holds);
            Rat total = 0;
            for (const auto& [idx, c] : res.coefficients) {
                REQUIRE(c > 0);
                total += c;
                (void)idx;
            }
            REQUIRE(total == 1);
        }
        // the worked instantiations
        const auto r4 = relPm_check(B, 4);
        REQUIRE(r4.coefficients.back() == std::make_pair(1L, Rat(1) / Rat(sigma_pow(17, 4))));
        const auto r36 = relPm_check(B, 36);
        REQUIRE(r36.coefficients.size() == 4);
        for (const auto& [idx, c] : r36.coefficients)
            REQUIRE(c == g_k(18, idx) / Rat(sigma_pow(17, 36)));
    }
}

TEST_CASE("truncated cone at a small desk truncation") {
    const auto& B = basis18();
    const auto C = build_cone(B, 144, 12);
    SECTION("full rank and section normalization") {
        CHECK(C.rank == 4);
        for (std::size_t i = 0; i < C.cone.size(); ++i) REQUIRE(C.cone.generator(i)[0] == 1);
        CHECK(C.cone.size() == C.matrices.size());
    }
    SECTION("pointedness: zero is never interior") {
        const auto cls = C.cone.classify(RatVec(4, Rat(0)));
        CHECK(cls.kind != Classification::Kind::interior);
    }
    SECTION("boundary table rows") {
        const auto table = boundary_table(B, C, 6);
        REQUIRE(table.rows.size() == 6);
        CHECK(table.rows[0].verdict == PointVerdict::boundary);  // V_1
        for (int i = 1; i < 6; ++i) {
            INFO("m = " << i + 1);
            CHECK(table.rows[static_cast<std::size_t>(i)].verdict == PointVerdict::interior);
        }
        CHECK_FALSE(table.any_outside);
    }
    SECTION("F_4 analysis") {
        const auto fm = f_m_analysis(B, C, 4, 12);
        CHECK(fm.contains);
        CHECK(fm.internal);
        CHECK(fm.dim_Fm == 4);
        CHECK(fm.dim_cone == 4);
    }
    SECTION("squarefree subcone certificate at m = 1") {
        const auto fm = f_m_analysis(B, C, 1, 12);
        CHECK(fm.internal);
        REQUIRE(fm.cls.interior.has_value());
        for (const auto& mu : fm.cls.interior->mu) REQUIRE(mu > 0);
    }
    SECTION("P_inf is interior") {
        CHECK(C.cone.classify(B.p_inf()).kind == Classification::Kind::interior);
    }
    SECTION("cone prime checks") {
        const auto res = cone_prime_checks(B, C, 10);
        CHECK(res.intersection_trivial);
        CHECK(res.rank_one_proportional);
        CHECK(res.relPm_all);
        CHECK(res.lines_ok);
    }
}

TEST_CASE("accumulation cone analysis") {
    const auto& B = basis18();
    const auto acc = accone_analysis(B, 20);
    CHECK(acc.dim == 2);
    CHECK(acc.stable);
    CHECK(acc.ball_ok);
    CHECK(acc.pinf_class.kind == Classification::Kind::interior);
    // tail bound dominates the true distances, m <= 200
    for (long m = 20; m <= 200; m += 13) {
        const auto tr = tail_radius_sq(B, m);
        REQUIRE(tr.eigen_regime);
        REQUIRE(dist_sq(B.v_point(m), B.p_inf()) <= tr.rho_sq);
    }
    // monotone decreasing in m
    CHECK(tail_radius_sq(B, 10).rho_sq > tail_radius_sq(B, 11).rho_sq);
}

TEST_CASE("pinf identity from the propbmc certificate") {
    const auto& B = basis18();
    const auto eta = propbmc_certificate(18, 6, 40);
    REQUIRE(eta.has_value());
    CHECK(pinf_identity(B, *eta));
    // scale invariance
    RatVec scaled = *eta;
    for (auto& x : scaled) x *= 7;
    CHECK(pinf_identity(B, scaled));
}

TEST_CASE("polyhedrality certificate at desk-small truncation") {
    const auto& B = basis18();
    const auto C = build_cone(B, 144, 12);
    const auto rep = polyhedrality_certificate(B, C, 8, 20);
    CHECK(rep.full_dimensional);
    CHECK(rep.ball_ok);
    REQUIRE(rep.verdict);
    REQUIRE_FALSE(rep.subcone_certificates.empty());
    CHECK(rep.subcone_certificates[0].first == 1);
}

TEST_CASE("infinitude dichotomy") {
    const auto& B = basis18();
    CHECK(infinitude_check(B, 30) == 30);
}

TEST_CASE("shimura generators") {
    CHECK(shimura_generator(34, 1) ==
          std::vector<std::pair<long, Int>>{{1, Int(1)}});
    const auto g4 = shimura_generator(34, 4);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0] == std::make_pair(4L, Int(sigma_pow(17, 4))));
    CHECK(g4[1] == std::make_pair(1L, Int(-1)));
    // squarefree: single term
    CHECK(shimura_generator(34, 6).size() == 1);
    CHECK_THROWS_AS(shimura_generator(32, 4), std::domain_error);
}
