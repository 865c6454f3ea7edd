#include <catch2/catch_amalgamated.hpp>

#include <siegelcone/propbmc.hpp>
#include <siegelcone/qexp.hpp>

using namespace siegelcone;

TEST_CASE("eisenstein series coefficients") {
    const auto e10 = eisenstein1(10, 20);
    CHECK(e10.c(0) == 1);
    CHECK(e10.c(1) == -264);
    const auto e4 = eisenstein1(4, 20);
    CHECK(e4.c(1) == 240);
    const auto e6 = eisenstein1(6, 20);
    CHECK(e6.c(1) == -504);
    // k = 2 mod 4: all higher coefficients negative
    for (int k : {6, 10, 14, 18}) {
        const auto e = eisenstein1(k, 30);
        for (int n = 1; n <= 30; ++n) REQUIRE(e.c(n) < 0);
    }
}

TEST_CASE("delta form") {
    const auto d = delta_form(12);
    CHECK(d.c(0) == 0);
    CHECK(d.c(1) == 1);
    CHECK(d.c(2) == -24);
    CHECK(d.c(3) == 252);
}

TEST_CASE("dimension formulas") {
    CHECK(dim_M1(4) == 1);
    CHECK(dim_M1(10) == 1);
    CHECK(dim_M1(12) == 2);
    CHECK(dim_M1(14) == 1);
    CHECK(dim_M1(18) == 2);
    CHECK(dim_M1(22) == 2);
    CHECK(dim_M1(26) == 2);
    CHECK(dim_S1(10) == 0);
    CHECK(dim_S1(18) == 1);
}

TEST_CASE("echelon basis") {
    for (int k = 4; k <= 42; k += 2) {
        const int dim = dim_M1(k);
        const auto B = elliptic_basis(k, dim + 10);
        REQUIRE(static_cast<int>(B.cusp.size()) == dim_S1(k));
        CHECK(B.eis.c(0) == 1);
        for (int j = 1; j <= static_cast<int>(B.cusp.size()); ++j) CHECK(B.eis.c(j) == 0);
        for (std::size_t i = 0; i < B.cusp.size(); ++i) {
            CHECK(B.cusp[i].c(0) == 0);
            for (std::size_t j = 0; j < B.cusp.size(); ++j)
                REQUIRE(B.cusp[i].c(static_cast<int>(j) + 1) == (i == j ? 1 : 0));
        }
    }
    SECTION("weight 18 cusp form is Delta*E6") {
        const auto B = elliptic_basis(18, 16);
        REQUIRE(B.cusp.size() == 1);
        CHECK(B.cusp[0].c(2) == -528);
        const auto direct = delta_form(16) * eisenstein1(6, 16);
        for (int n = 0; n <= 16; ++n) REQUIRE(B.cusp[0].c(n) == direct.c(n));
    }
    SECTION("weight 22 echelon normalization") {
        const auto B = elliptic_basis(22, 14);
        REQUIRE(B.cusp.size() == 1);
        CHECK(B.cusp[0].c(1) == 1);
    }
    CHECK_THROWS_AS(elliptic_basis(24, 2), std::invalid_argument);
}

TEST_CASE("g_k both formulas and the divisor identity") {
    for (int k : {10, 14, 18, 22, 26, 30, 34, 38, 42})
        for (long s = 1; s <= 2000; ++s) REQUIRE_NOTHROW(g_k(k, s));  // internal cross-assert
    CHECK(g_k(12, 1) == 1);
    for (long p : {2L, 3L, 5L, 7L})
        CHECK(g_k(12, p) == Rat(1) + rat_pow(Rat(p), 11));
    // sum_{t^2 | 36} g_k(36/t^2) = sigma_{k-1}(36)
    for (int k : {10, 18, 26}) {
        Rat s = 0;
        for (long t : square_divisors(36)) s += g_k(k, 36 / (t * t));
        REQUIRE(s == Rat(sigma_pow(static_cast<unsigned>(k - 1), 36)));
    }
}

TEST_CASE("alpha auxiliary function") {
    const auto B = elliptic_basis(18, 600);
    const auto& f = B.cusp[0];

    SECTION("squarefree alpha is c_m / sigma") {
        for (long m : {1L, 2L, 3L, 5L, 6L, 7L, 10L, 30L})
            REQUIRE(alpha(m, 1, f) == f.c(static_cast<int>(m)) / Rat(sigma_pow(17, m)));
    }
    SECTION("zero form maps to zero") {
        QExpansion zero(18, 50);
        CHECK(alpha_one(10, zero) == 0);
    }
    SECTION("m = 4 relations from the worked example") {
        const Rat a41 = (f.c(4) - f.c(1)) / (Rat(sigma_pow(17, 4)) - 1);
        REQUIRE(alpha(4, 1, f) == a41);
        REQUIRE(alpha(4, 2, f) == f.c(1) - a41);
    }
    SECTION("m = 36 relations from the worked example") {
        const Rat a361 = (f.c(36) - f.c(9) - f.c(4) + f.c(1)) /
                         (Rat(sigma_pow(17, 36)) - Rat(sigma_pow(17, 9)) - Rat(sigma_pow(17, 4)) + 1);
        REQUIRE(alpha(36, 1, f) == a361);
        REQUIRE(alpha(36, 2, f) == alpha(9, 1, f) - a361);
        REQUIRE(alpha(36, 3, f) == alpha(4, 1, f) - a361);
        REQUIRE(alpha(36, 6, f) == f.c(1) - alpha(4, 1, f) - alpha(9, 1, f) + a361);
    }
    SECTION("decay envelope in exact squared form") {
        for (int k : {18, 22, 26}) {
            const auto Bk = elliptic_basis(k, 600);
            for (const auto& g : Bk.cusp) {
                // kappa^2 = max_n c_n(g)^2 / (sigma_0(n)^2 n^{k-1})
                Rat kappa_sq = 0;
                for (long n = 1; n <= 500; ++n) {
                    const Rat v = g.c(static_cast<int>(n)) * g.c(static_cast<int>(n)) /
                                  (Rat(sigma_pow(0, n) * sigma_pow(0, n)) * rat_pow(Rat(n), k - 1));
                    if (v > kappa_sq) kappa_sq = v;
                }
                for (long s = 1; s <= 500; ++s) {
                    const Rat a = alpha(s, 1, g);
                    const Rat bound = kappa_sq * rat_pow(Rat(sigma_pow(0, s)), 4) *
                                      rat_pow(Rat(s), 1 - k);
                    REQUIRE(a * a <= bound);
                }
            }
        }
    }
}

TEST_CASE("propbmc certificate") {
    SECTION("trivial cusp space accepts all-ones") {
        const auto cert = propbmc_certificate(10, 3, 40);
        REQUIRE(cert.has_value());
        for (const auto& e : *cert) CHECK(e == 1);
    }
    SECTION("weight 18") {
        const auto B = elliptic_basis(18, 40);
        const auto cert = propbmc_certificate(18, 6, 40);
        REQUIRE(cert.has_value());
        Rat s = 0;
        for (std::size_t j = 0; j < cert->size(); ++j) {
            REQUIRE((*cert)[j] > 0);
            s += (*cert)[j] * B.cusp[0].c(static_cast<int>(j) + 1);
        }
        REQUIRE(s == 0);
    }
    SECTION("A too small is NotFound") {
        CHECK_FALSE(propbmc_certificate(18, 1, 40).has_value());
    }
    SECTION("wrong weight class rejected") {
        CHECK_THROWS_AS(propbmc_certificate(16, 5, 40), std::domain_error);
    }
}
