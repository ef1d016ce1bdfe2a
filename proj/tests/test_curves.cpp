#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvetk/curve.hpp"
#include "curvetk/io.hpp"

using namespace curvetk;

TEST_CASE("make_hyperelliptic examples") {
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    HyperellipticCurve c = make_hyperelliptic(f3, Poly::parse(f3, "x^5+1"));
    CHECK(c.genus == 2);
    BranchLocus b = branch_locus(c);
    CHECK(b.points.size() == 6);
    CHECK(b.points.back().infinite);  // odd degree: infinity is a branch point

    // even degree: no infinity in the locus
    Poly f6 = Poly::parse(f3, "x^6+x+2");
    REQUIRE(f6.squarefree());
    HyperellipticCurve c6 = make_hyperelliptic(f3, f6);
    CHECK(c6.genus == 2);
    BranchLocus b6 = branch_locus(c6);
    CHECK(b6.points.size() == 6);
    for (const ProjPoint& pt : b6.points) CHECK_FALSE(pt.infinite);

    CHECK_THROWS_AS(make_hyperelliptic(f3, Poly::parse(f3, "x^3+x^2")), std::invalid_argument);
    CHECK_THROWS_AS(make_hyperelliptic(f3, Poly::parse(f3, "x^2+1")), std::invalid_argument);
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    CHECK_THROWS_AS(make_hyperelliptic(f2, Poly::parse(f2, "x^5+x+1")), std::invalid_argument);
}

TEST_CASE("branch locus always has 2g+2 points") {
    for (u64 p : {3, 5, 7}) {
        const FieldSpec& K = FieldSpec::get(p, 1);
        Rng rng(31 * p);
        for (int it = 0; it < 8; ++it) {
            for (unsigned deg : {5u, 6u, 7u}) {
                Poly f = Poly::random_monic(K, deg, rng);
                if (!f.squarefree()) continue;
                HyperellipticCurve c = make_hyperelliptic(K, f);
                CHECK(branch_locus(c).points.size() == static_cast<size_t>(2 * c.genus + 2));
            }
        }
    }
}

TEST_CASE("odd-degree model preserves the curve up to isomorphism") {
    const FieldSpec& f5 = FieldSpec::get(5, 1);
    Rng rng(5150);
    for (int it = 0; it < 10; ++it) {
        Poly f = Poly::random_monic(f5, 6, rng);
        if (!f.squarefree()) continue;
        HyperellipticCurve c = make_hyperelliptic(f5, f);
        OddModel om = odd_degree_model(c);
        CHECK(om.h.degree() == 5);
        CHECK(om.h.squarefree());
    }
}

TEST_CASE("as_reduce examples") {
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    // x^2 reduces to x
    RationalFunction r = as_reduce(RationalFunction::from_poly(Poly::parse(f2, "x^2")));
    CHECK(r.num == Poly::parse(f2, "x"));
    CHECK(r.is_polynomial());
    // p=3: x^3 -> x
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    RationalFunction r3 = as_reduce(RationalFunction::from_poly(Poly::parse(f3, "x^3")));
    CHECK(r3.num == Poly::parse(f3, "x"));
    // p=2: x^3 already reduced
    RationalFunction r2 = as_reduce(RationalFunction::from_poly(Poly::parse(f2, "x^3")));
    CHECK(r2.num == Poly::parse(f2, "x^3"));
    // split cover: x^2 + x = h^2 - h with h = x
    CHECK_THROWS_AS(as_reduce(RationalFunction::from_poly(Poly::parse(f2, "x^2+x"))),
                    std::domain_error);
    // rational pole: 1/x^2 over F_2 reduces to 1/x
    RationalFunction rp =
        as_reduce(RationalFunction(Poly::one(f2), Poly::parse(f2, "x^2")));
    CHECK(rp.den == Poly::parse(f2, "x"));
    CHECK(rp.num == Poly::one(f2));
}

TEST_CASE("as_genus examples") {
    CHECK(as_genus_from_jumps(2, {3}) == 1);   // y^2+y = x^3
    CHECK(as_genus_from_jumps(3, {1}) == 0);   // y^3-y = x
    CHECK(as_genus_from_jumps(2, {1, 1}) == 1);
    CHECK_THROWS_AS(as_genus_from_jumps(2, {2}), std::invalid_argument);  // jump divisible by p
    CHECK_THROWS_AS(as_genus_from_jumps(3, {}), std::invalid_argument);
}

TEST_CASE("as_prank via Deuring-Shafarevich") {
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    ArtinSchreierCover one_pt = make_artin_schreier(f2, RationalFunction::from_poly(Poly::parse(f2, "x^3")));
    CHECK(one_pt.branch_data.size() == 1);
    CHECK(as_prank(one_pt) == 0);

    // |B| = 3 at p=2: f = x + 1/x + 1/(x+1)
    Poly den = Poly::parse(f2, "x^2+x");
    Poly num = Poly::parse(f2, "x^3+x^2+1");  // x*den + (x+1) + x
    ArtinSchreierCover three = make_artin_schreier(f2, RationalFunction(num, den));
    CHECK(three.branch_data.size() == 3);
    CHECK(as_prank(three) == 2);

    // p=3, |B| = 2
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    ArtinSchreierCover two = make_artin_schreier(
        f3, RationalFunction(Poly::parse(f3, "x^2+1"), Poly::parse(f3, "x")));
    CHECK(two.branch_data.size() == 2);
    CHECK(as_prank(two) == 2);
}

TEST_CASE("as_reduce at poles living in an extension") {
    // 1/(x^2+1)^3 over F_3: pole order 3 at +-i reduces to order 1
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    Poly den = Poly::parse(f3, "x^2+1").pow(3);
    RationalFunction r = as_reduce(RationalFunction(Poly::one(f3), den));
    CHECK(r.den == Poly::parse(f3, "x^2+1"));
    CHECK(as_reduce(r) == r);  // idempotent
    ArtinSchreierCover c = make_artin_schreier(f3, RationalFunction(Poly::one(f3), den));
    CHECK(c.branch_data.size() == 2);  // the two conjugate poles
    CHECK(c.genus == 2);
    CHECK(as_prank(c) == 2);
    CHECK(prank(c, /*verify=*/true).verified);

    // p=2 with an irreducible quadratic pole: branch places need base change
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    ArtinSchreierCover c2 =
        make_artin_schreier(f2, RationalFunction(Poly::one(f2), Poly::parse(f2, "x^2+x+1")));
    CHECK(c2.branch_data.size() == 2);
    CHECK(c2.branch_field->n() == 2);
    CHECK(c2.genus == 1);
    CHECK(as_prank(c2) == 1);
    CHECK(prank(c2, /*verify=*/true).verified);
}

TEST_CASE("artin-schreier covers validate 0 <= f <= g") {
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    Rng rng(404);
    for (int it = 0; it < 20; ++it) {
        Poly num = Poly::random_monic(f2, 1 + static_cast<unsigned>(rng.below(6)), rng);
        Poly den = Poly::random_monic(f2, static_cast<unsigned>(rng.below(3)), rng);
        try {
            ArtinSchreierCover c = make_artin_schreier(f2, RationalFunction(num, den));
            CHECK(as_prank(c) >= 0);
            CHECK(as_prank(c) <= c.genus);
        } catch (const std::domain_error&) {
            // split cover; fine
        }
    }
}

TEST_CASE("count_points examples") {
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    CHECK(count_points(make_hyperelliptic(f3, Poly::parse(f3, "x^3+x^2+2")), 1) == 3);
    CHECK(count_points(make_hyperelliptic(f3, Poly::parse(f3, "x^3+x+1")), 1) == 4);
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    ArtinSchreierCover c = make_artin_schreier(f2, RationalFunction::from_poly(Poly::parse(f2, "x^3")));
    CHECK(count_points(c, 1) == 3);  // y^2+y = x^3 over F_2
}

TEST_CASE("point counts respect the Weil bound") {
    for (auto [p, n] : {std::pair<u64, unsigned>{3, 1}, {5, 1}, {3, 2}}) {
        const FieldSpec& K = FieldSpec::get(p, n);
        Rng rng(808 + p + n);
        for (int it = 0; it < 6; ++it) {
            Poly f = Poly::random_monic(K, 5, rng);
            if (!f.squarefree()) continue;
            HyperellipticCurve c = make_hyperelliptic(K, f);
            for (unsigned m = 1; m <= 2; ++m) {
                double q = static_cast<double>(K.size());
                for (unsigned i = 1; i < m; ++i) q *= static_cast<double>(K.size());
                double N = static_cast<double>(count_points(c, m));
                CHECK(std::abs(N - q - 1.0) <= 2.0 * c.genus * std::sqrt(q) + 1e-9);
            }
        }
    }
}

TEST_CASE("curve JSON round-trips bit-exactly") {
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    HyperellipticCurve c = make_hyperelliptic(f3, Poly::parse(f3, "x^5+2*x+1"));
    json j = curve_to_json(c);
    HyperellipticCurve back = curve_from_json(j);
    CHECK(back.f == c.f);
    CHECK(back.genus == c.genus);
    CHECK(json(curve_to_json(back)).dump() == j.dump());

    // extension-field curve
    const FieldSpec& f9 = FieldSpec::get(3, 2);
    Poly f = Poly::parse(f9, "x^5+[1,2]*x^2+[0,1]");
    REQUIRE(f.squarefree());
    HyperellipticCurve ce = make_hyperelliptic(f9, f);
    json je = curve_to_json(ce);
    HyperellipticCurve backe = curve_from_json(je);
    CHECK(backe.f == ce.f);
    CHECK(json(curve_to_json(backe)).dump() == je.dump());

    // artin-schreier record with denominator
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    ArtinSchreierCover as =
        make_artin_schreier(f2, RationalFunction(Poly::parse(f2, "x^3+x^2+1"), Poly::parse(f2, "x^2+x")));
    json ja = as_cover_to_json(as);
    ArtinSchreierCover backa = as_cover_from_json(ja);
    CHECK(backa.f == as.f);
    CHECK(backa.genus == as.genus);
    CHECK(json(as_cover_to_json(backa)).dump() == ja.dump());
}

TEST_CASE("artin-schreier genus realizability: (p-1) | 2g") {
    for (u64 p : {2, 3, 5}) {
        const FieldSpec& K = FieldSpec::get(p, 1);
        Rng rng(999 * p);
        for (int it = 0; it < 15; ++it) {
            Poly num = Poly::random_monic(K, 1 + static_cast<unsigned>(rng.below(5)), rng);
            try {
                ArtinSchreierCover c = make_artin_schreier(K, RationalFunction::from_poly(num));
                CHECK((2 * static_cast<u64>(c.genus)) % (p - 1) == 0);
            } catch (const std::domain_error&) {
            }
        }
    }
}
