#include <catch2/catch_amalgamated.hpp>

#include <siegelcone/limits.hpp>

using namespace siegelcone;

TEST_CASE("special limits") {
    SECTION("equal alpha1 collapses to the pure power") {
        CHECK(special_limit(10, 2, 1, 0, 0) == rat_pow(Rat(2), 3 - 2 * 10));
        CHECK(special_limit(18, 3, 2, 1, 1) == rat_pow(Rat(3), 2 * (3 - 2 * 18)));
    }
    SECTION("values lie in (0,1) across a sweep") {
        for (int k : {10, 14, 18, 22, 26})
            for (long p : {2L, 3L, 5L, 7L})
                for (int s = 1; s <= 2; ++s)
                    for (int a = 0; a <= 6; ++a)
                        for (int b = a; b <= 6; ++b) {
                            const Rat lam = special_limit(k, p, s, a, b);
                            REQUIRE(lam > 0);
                            REQUIRE(lam < 1);
                        }
    }
    SECTION("denominator divisible by p") {
        for (int a = 0; a <= 2; ++a)
            for (int b = a; b <= 2; ++b)
                REQUIRE(den(special_limit(10, 2, 1, a, b)) % 2 == 0);
    }
}

TEST_CASE("limit enumeration for k = 10, m = 4, p = 2") {
    const auto en = enumerate_limits(10, 4, 2, 1, 20000);
    SECTION("matrix ratios stay in {0} union (C, 1)") {
        CHECK(en.zero_realized);
        CHECK(en.ratios_in_open_interval);
        CHECK_FALSE(en.matrix_ratios.empty());
    }
    SECTION("special limits are disjoint from the window") {
        CHECK_FALSE(en.special_limits.empty());
        CHECK(en.disjoint);
        CHECK(en.special_denominators_divisible_by_p);
    }
    SECTION("squarefree m rejects") {
        CHECK_THROWS_AS(enumerate_limits(10, 6, 2, 1, 1000), std::domain_error);
    }
}

TEST_CASE("witness families") {
    SECTION("kind A: constant in j, monotone toward the special limit") {
        const auto rep = witness_family_A(10, 36, 2, 3, 1, 8, 3);
        CHECK(rep.designated_constant);
        CHECK(rep.monotone_after_onset);
        REQUIRE_FALSE(rep.ratios.empty());
        for (const auto& q : rep.ratios) {
            REQUIRE(q > 0);
            REQUIRE(q < 1);
            REQUIRE(q != rep.limit);
        }
    }
    SECTION("kind A requires squares of both primes") {
        CHECK_THROWS_AS(witness_family_A(10, 4, 2, 2, 1, 4, 2), std::domain_error);
        CHECK_THROWS_AS(witness_family_A(10, 12, 2, 3, 1, 4, 2), std::domain_error);
    }
    SECTION("kind B: exactly constant ratio subsequence") {
        for (const auto& seed : {HalfIntMatrix{4, 2, 4}, HalfIntMatrix{5, 4, 4},
                                 HalfIntMatrix{7, 1, 4}}) {
            const auto rep = witness_family_B(10, seed, 2, 1, 6);
            INFO("seed " << seed.str());
            CHECK(rep.designated_constant);
        }
    }
    SECTION("kind B covers the ratio of the seed itself") {
        const HalfIntMatrix seed{4, 2, 4};
        const auto rep = witness_family_B(10, seed, 2, 1, 4);
        CHECK(rep.limit == ratio(10, seed, 2));
        CHECK(rep.ratios.front() == rep.limit);
    }
}

TEST_CASE("auxiliary sets S_m(n, T)") {
    SECTION("m squarefree: all r with positive determinant") {
        const HalfIntMatrix T{6, 1, 6};
        const auto S = s_m_set(10, T, 5);
        long count = 0;
        for (long r = -isqrt_long(120); r <= isqrt_long(120); ++r)
            if (4 * 5 * 6 - r * r > 0) ++count;
        CHECK(static_cast<long>(S.size()) == count);
    }
    SECTION("m = 4 with odd r: exactly the odd-r slice") {
        const HalfIntMatrix T{4, 1, 4};
        const auto S = s_m_set(10, T, 3);
        REQUIRE_FALSE(S.empty());
        for (long r : S) {
            REQUIRE(r % 2 != 0);
            REQUIRE(4 * 3 * 4 - r * r > 0);
        }
        // symmetric
        for (long r : S)
            REQUIRE(std::find(S.begin(), S.end(), -r) != S.end());
    }
}
