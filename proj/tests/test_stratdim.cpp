#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvetk/stratdim.hpp"

using namespace curvetk;

TEST_CASE("dim_M and dim_H") {
    CHECK(dim_M(3, 0) == 3);
    CHECK(dim_M(3, 3) == 6);  // = 3g-3
    CHECK(dim_M(4, 2) == 7);
    CHECK(dim_H(3, 0) == 2);
    CHECK(dim_H(5, 5) == 9);  // = 2g-1
    CHECK(dim_H(4, 1) == 4);
    CHECK_THROWS_AS(dim_M(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(dim_H(3, -1), std::invalid_argument);
}

TEST_CASE("cover_dim_bound") {
    CHECK(cover_dim_bound(CoverDatum{2, 7, 4, 1, 1, 6, {}}) == 6);
    CHECK(cover_dim_bound(CoverDatum{3, 3, 4, 1, 1, 2, {1, 1}}) == 3);
    CHECK(cover_dim_bound(CoverDatum{3, 7, 4, 0, 0, 6, {}}) == 3);
    // divisibility violation: ell = 5, 2(g - g_Y) = 6 not divisible by 4
    CHECK_THROWS_AS(cover_dim_bound(CoverDatum{5, 7, 4, 1, 0, 0, {}}), std::invalid_argument);
}

TEST_CASE("local_def_dim") {
    CHECK(local_def_dim(3, 1) == 1);
    CHECK(local_def_dim(3, 4) == 3);
    CHECK(local_def_dim(2, 5) == 3);
    CHECK_THROWS_AS(local_def_dim(3, 6), std::invalid_argument);
}

TEST_CASE("dim_hyperell_order_p") {
    StratumDimResult a = dim_hyperell_order_p(7, 3);
    REQUIRE_FALSE(a.empty());
    CHECK(*a.dimension == 3);  // floor(16/3) - 2
    StratumDimResult b = dim_hyperell_order_p(3, 5);
    CHECK(b.empty());
    CHECK(b.empty_reason == "divisibility");
    StratumDimResult c = dim_hyperell_order_p(3, 7);
    CHECK(c.empty());
    CHECK(c.empty_reason == "negativity");  // floor(8/7) - 2 = -1
}

TEST_CASE("dim_hyperell_order_ell") {
    StratumDimResult a = dim_hyperell_order_ell(3, 2);
    REQUIRE_FALSE(a.empty());
    CHECK(*a.dimension == 3);  // = g, matches the order-2 locus dimension
    CHECK(a.chosen_i == 0);
    StratumDimResult b = dim_hyperell_order_ell(3, 5);
    CHECK(b.empty());
    StratumDimResult c = dim_hyperell_order_ell(4, 3);
    REQUIRE_FALSE(c.empty());
    CHECK(c.chosen_i == 1);  // 3 | 9
    CHECK(*c.dimension == 2);
}

TEST_CASE("dim_H4iota") {
    CHECK(dim_H4iota(3) == 2);
    CHECK(dim_H4iota(2) == 1);
    CHECK(dim_H4iota(10) == 9);
}

TEST_CASE("dim_AS") {
    StratumDimResult a = dim_AS(2, 3, 1);
    REQUIRE_FALSE(a.empty());
    CHECK(*a.dimension == 3);
    CHECK_FALSE(a.is_upper_bound);  // exact at p = 2
    StratumDimResult b = dim_AS(3, 3, 0);
    REQUIRE_FALSE(b.empty());
    CHECK(*b.dimension == 2);  // d - 1 with d = 3
    CHECK(b.is_upper_bound);
    StratumDimResult c = dim_AS(5, 3, 0);
    CHECK(c.empty());  // 4 does not divide 6
}

TEST_CASE("rh_check") {
    CHECK(rh_check(CoverDatum{2, 7, 3, 1, 0, 4, {}}));
    CHECK(rh_check(CoverDatum{2, 2, 1, 0, 0, 1, {3}}));
    CHECK_FALSE(rh_check(CoverDatum{3, 7, 3, 1, 0, 1, {}}));
}

TEST_CASE("ds_check") {
    CHECK(ds_check(2, 3, 1, 2));
    CHECK(ds_check(2, 0, 0, 1));
    CHECK(ds_check(3, 2, 0, 2));
    CHECK_FALSE(ds_check(3, 2, 0, 1));
}

TEST_CASE("consistency: order-2 locus has dimension g whenever nonempty") {
    for (int g = 3; g <= 50; ++g) {
        StratumDimResult r = dim_hyperell_order_ell(g, 2);
        REQUIRE_FALSE(r.empty());
        CHECK(*r.dimension == g);
    }
}

TEST_CASE("order-ell loci for ell >= 3 sit strictly below the p-rank 0 stratum") {
    for (int g = 3; g <= 50; ++g) {
        for (u64 ell = 3; ell <= 2 * static_cast<u64>(g) + 1; ++ell) {
            if (!is_prime_u64(ell)) continue;
            StratumDimResult r = dim_hyperell_order_ell(g, ell);
            if (r.empty()) continue;
            CHECK(*r.dimension < dim_H(g, 0));
        }
    }
}

TEST_CASE("order-p locus sits strictly below every hyperelliptic stratum") {
    for (int g = 3; g <= 50; ++g) {
        for (u64 p = 3; p <= 97; ++p) {
            if (!is_prime_u64(p)) continue;
            StratumDimResult r = dim_hyperell_order_p(g, p);
            if (r.empty()) continue;
            CHECK(*r.dimension < dim_H(g, 0));
        }
    }
}

TEST_CASE("audit witnesses satisfy Riemann-Hurwitz by construction") {
    for (int g = 3; g <= 5; ++g)
        for (int f = 0; f <= g; ++f)
            for (u64 p : {2, 3, 5}) {
                AuditReport rep = theorem_audit(g, f, p);
                for (const AuditCase& c : rep.cases) {
                    if (!c.witness || c.space != "M") continue;
                    if (c.note == "hyperelliptic reduction" || c.note == "Artin-Schreier locus") continue;
                    CHECK(rh_check(*c.witness));
                }
            }
}

TEST_CASE("audit spec instances") {
    // g=3, f=0, p=5: the tame order-2 case is tight at g_Y = 1, f_Y = 0
    AuditReport a = theorem_audit(3, 0, 5);
    bool found = false;
    for (const AuditCase& c : a.cases) {
        if (c.space == "M" && c.ell_label == "2") {
            REQUIRE(c.max_bound.has_value());
            CHECK(*c.max_bound == dim_M(3, 0));
            CHECK(c.verdict == Verdict::tight_needs_extra_argument);
            REQUIRE(c.witness.has_value());
            CHECK(c.witness->g_Y == 1);
            CHECK(c.witness->f_Y == 0);
            found = true;
        }
    }
    CHECK(found);

    // g=3, f=2, p=5: every ell >= 3 case is strict
    AuditReport b = theorem_audit(3, 2, 5);
    for (const AuditCase& c : b.cases) {
        if (c.ell_value >= 3) CHECK(c.verdict == Verdict::strict);
    }

    // g=3, f=1, p=3: the hyperelliptic order-2 case is tight (both dims = 3)
    AuditReport c3 = theorem_audit(3, 1, 3);
    found = false;
    for (const AuditCase& c : c3.cases) {
        if (c.space == "H" && c.ell_label == "2") {
            REQUIRE(c.max_bound.has_value());
            CHECK(*c.max_bound == 3);
            CHECK(c.stratum_dim == 3);
            CHECK(c.verdict == Verdict::tight);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("audit exceptional sets match the expected lists") {
    for (int g = 3; g <= 6; ++g) {
        for (int f = 0; f <= g; ++f) {
            for (u64 p : {2, 3, 5, 7}) {
                AuditReport rep = theorem_audit(g, f, p);
                for (const AuditCase& c : rep.cases) {
                    bool nonstrict = c.max_bound.has_value() && c.verdict != Verdict::strict;
                    if (c.space == "M") {
                        if (nonstrict) {
                            CHECK(c.ell_label == "2");
                            CHECK(p != 2);
                            CHECK(f <= 1);
                            REQUIRE(c.witness.has_value());
                            CHECK(c.witness->g_Y == 1);
                            CHECK(c.witness->f_Y == f);
                        } else if (c.ell_label == "2" && p != 2 && f <= 1) {
                            CHECK(nonstrict);  // the exceptional case must be flagged
                        }
                    } else {
                        bool expected = (c.ell_label == "2" && f <= 1) || (c.ell_label == "4iota" && f == 0);
                        CHECK(nonstrict == expected);
                    }
                }
            }
        }
    }
}
