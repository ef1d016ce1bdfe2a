#include "curvetk/constructs.hpp"

#include <algorithm>
#include <stdexcept>

#include "curvetk/rng.hpp"

namespace curvetk {

namespace {

// branch-locus sizes including the place at infinity
size_t locus_size(const Poly& f) {
    return static_cast<size_t>(f.degree()) + (f.degree() % 2 == 1 ? 1 : 0);
}

void check_mode(const Poly& f1, const Poly& f2, const Poly& u, const Poly& v, FiberMode mode) {
    if (mode == FiberMode::free_mode) return;
    // u = f1/gcd, v = f2/gcd: the affine parts of B1 \ B2 and B2 \ B1.
    bool inf1 = f1.degree() % 2 == 1, inf2 = f2.degree() % 2 == 1;
    size_t only1 = static_cast<size_t>(u.degree()) + (inf1 && !inf2 ? 1 : 0);
    size_t only2 = static_cast<size_t>(v.degree()) + (inf2 && !inf1 ? 1 : 0);
    if (mode == FiberMode::even_mode) {
        if (locus_size(f1) != locus_size(f2))
            throw std::invalid_argument("even mode requires equal genera");
        if (only1 != 1 || only2 != 1)
            throw std::invalid_argument("even mode requires branch loci differing in a single point");
    } else {
        if (only2 != 0)
            throw std::invalid_argument("odd mode requires the second branch locus inside the first");
        if (only1 != 2)
            throw std::invalid_argument("odd mode requires genera differing by one");
    }
}

}  // namespace

KleinFourCover fiber_product(const Poly& f1, const Poly& f2, const FieldSpec& s, FiberMode mode) {
    if (&f1.field() != &s || &f2.field() != &s) throw std::invalid_argument("polynomials over wrong field");
    HyperellipticCurve c1 = make_hyperelliptic(s, f1);
    HyperellipticCurve c2 = make_hyperelliptic(s, f2);
    Poly g = Poly::gcd(f1, f2);
    Poly u = f1 / g;
    Poly v = f2 / g;
    Poly f3 = u * v;
    if (f3.degree() < 1)
        throw std::invalid_argument("degenerate fiber product: f1*f2 has no squarefree part of positive degree");
    check_mode(f1, f2, u, v, mode);
    size_t b3 = locus_size(f3);
    int g3 = b3 <= 2 ? 0 : (static_cast<int>(b3) - 2) / 2;
    std::optional<HyperellipticCurve> c3;
    int f3rank = 0;
    if (g3 >= 1) {
        c3 = make_hyperelliptic(s, f3);
        f3rank = prank(*c3).f;
    }
    int total = c1.genus + c2.genus + g3;
    int predicted = prank(c1).f + prank(c2).f + f3rank;
    return KleinFourCover{std::move(c1), std::move(c2), std::move(c3), std::move(f3), g3, total, predicted};
}

u64 count_points_fiber(const KleinFourCover& kc, unsigned m) {
    const FieldSpec& base = *kc.c1.spec;
    const Embedding* emb = nullptr;
    const FieldSpec* Kp = &base;
    if (m > 1) {
        u64 nn = u64(base.n()) * m;
        if (nn > kMaxExtensionDegree) throw std::domain_error("extension degree exceeds envelope");
        Kp = &FieldSpec::get(base.p(), static_cast<unsigned>(nn));
    }
    const FieldSpec& K = *Kp;
    emb = &base.embed_into(K);
    if (!K.size_fits_u64() || K.size() > kMaxEnumerableField)
        throw std::domain_error("field too large to enumerate points");
    u64 Q = K.size();
    Poly f1 = kc.c1.f.lift(*emb), f2 = kc.c2.f.lift(*emb);
    Poly d1 = f1.derivative(), d2 = f2.derivative();
    auto chi = [&](const FieldElement& v) -> int {
        if (v.is_zero()) return 0;
        return K.is_square(v.data()) ? 1 : -1;
    };
    u64 count = 0;
    std::vector<u32> xr(K.n(), 0);
    for (u64 idx = 0;; ++idx) {
        FieldElement x(K, xr);
        FieldElement v1 = f1.eval(x), v2 = f2.eval(x);
        bool z1 = v1.is_zero(), z2 = v2.is_zero();
        if (!z1 && !z2) {
            count += static_cast<u64>((1 + chi(v1)) * (1 + chi(v2)));
        } else if (z1 && !z2) {
            count += static_cast<u64>(1 + chi(v2));
        } else if (!z1 && z2) {
            count += static_cast<u64>(1 + chi(v1));
        } else {
            // node over a shared branch point; branches rational iff
            // f1'(b) f2'(b) is a square
            count += static_cast<u64>(1 + chi(d1.eval(x) * d2.eval(x)));
        }
        if (idx + 1 == Q) break;
        for (unsigned i = 0; i < K.n(); ++i) {
            if (++xr[i] < K.p()) break;
            xr[i] = 0;
        }
    }
    bool odd1 = f1.degree() % 2 == 1, odd2 = f2.degree() % 2 == 1;
    FieldElement lc1 = f1.lc(), lc2 = f2.lc();
    if (odd1 && odd2) {
        count += static_cast<u64>(1 + chi(lc1 * lc2));
    } else if (odd1 && !odd2) {
        count += static_cast<u64>(1 + chi(lc2));
    } else if (!odd1 && odd2) {
        count += static_cast<u64>(1 + chi(lc1));
    } else {
        count += static_cast<u64>((1 + chi(lc1)) * (1 + chi(lc2)));
    }
    return count;
}

PRankResult fiber_prank_by_counting(const KleinFourCover& kc) {
    int g = kc.total_genus;
    PRankResult r;
    r.genus = g;
    r.method = "zeta-oracle";
    if (g == 0) {
        r.f = 0;
        r.lpoly = {1};
        return r;
    }
    u64 q = kc.c1.spec->size();
    u64 total = 0, qm = 1;
    for (int m2 = 1; m2 <= g; ++m2) {
        qm *= q;
        total += qm;
        if (total > kMaxZetaEnumeration) throw std::domain_error("zeta oracle envelope exceeded");
    }
    std::vector<u64> counts;
    counts.reserve(static_cast<size_t>(g));
    for (int m2 = 1; m2 <= g; ++m2) counts.push_back(count_points_fiber(kc, static_cast<unsigned>(m2)));
    // Newton identities, then degree of L mod p
    std::vector<i64> s(static_cast<size_t>(g) + 1, 0);
    qm = 1;
    for (int m2 = 1; m2 <= g; ++m2) {
        qm *= q;
        s[static_cast<size_t>(m2)] = static_cast<i64>(qm) + 1 - static_cast<i64>(counts[static_cast<size_t>(m2 - 1)]);
    }
    std::vector<i64> a(static_cast<size_t>(g) + 1, 0);
    a[0] = 1;
    for (int k = 1; k <= g; ++k) {
        i64 acc = 0;
        for (int i = 1; i <= k; ++i) acc += s[static_cast<size_t>(i)] * a[static_cast<size_t>(k - i)];
        if (acc % k != 0) throw std::runtime_error("Newton identity division failed on fiber counts");
        a[static_cast<size_t>(k)] = -acc / k;
    }
    int f = 0;
    for (int k = 1; k <= g; ++k)
        if (a[static_cast<size_t>(k)] % static_cast<i64>(kc.c1.spec->p()) != 0) f = k;
    r.f = f;
    r.lpoly = std::move(a);
    return r;
}

// ----- z4 family --------------------------------------------------------------

HyperellipticCurve z4_family(const Z4FamilyParams& params) {
    const FieldSpec& K = *params.spec;
    if (K.p() < 3) throw std::invalid_argument("the order-4 family requires p >= 3");
    if (params.lambdas.empty()) throw std::invalid_argument("need at least one lambda (genus >= 2)");
    const FieldElement one = FieldElement::from_int(K, 1);
    for (size_t i = 0; i < params.lambdas.size(); ++i) {
        const FieldElement& li = params.lambdas[i];
        if (&li.field() != &K) throw std::invalid_argument("lambda over wrong field");
        if (li.is_zero() || li == one || li == -one)
            throw std::invalid_argument("lambda collides with {0, 1, -1}");
        for (size_t j = i + 1; j < params.lambdas.size(); ++j) {
            const FieldElement& lj = params.lambdas[j];
            if (li == lj || li == -lj)
                throw std::invalid_argument("lambda_i = +-lambda_j collision");
        }
    }
    // f = x (x^2 - 1) prod (x^2 - lambda_i^2)
    Poly f = Poly::x(K) * (Poly::from_ints(K, {-1, 0, 1}));
    for (const FieldElement& l : params.lambdas) {
        Poly quad(K, {-(l * l), FieldElement(K), one});
        f = f * quad;
    }
    return make_hyperelliptic(K, f);
}

namespace {

bool admissible_tuple(const std::vector<FieldElement>& ls, const FieldSpec& K) {
    const FieldElement one = FieldElement::from_int(K, 1);
    for (size_t i = 0; i < ls.size(); ++i) {
        if (ls[i].is_zero() || ls[i] == one || ls[i] == -one) return false;
        for (size_t j = i + 1; j < ls.size(); ++j)
            if (ls[i] == ls[j] || ls[i] == -ls[j]) return false;
    }
    return true;
}

}  // namespace

PrankHistogram z4_prank_survey(const FieldSpec& s, int g, u64 sample_count, u64 seed) {
    if (g < 2) throw std::invalid_argument("survey requires genus >= 2");
    unsigned nl = static_cast<unsigned>(g - 1);
    PrankHistogram h;
    if (sample_count == 0) return h;
    u64 q = s.size();
    for (u64 idx = 0; idx < sample_count; ++idx) {
        Rng rng(derive_seed(seed, idx));
        std::vector<FieldElement> ls;
        bool found = false;
        for (unsigned attempt = 0; attempt < 10000; ++attempt) {
            ls.clear();
            for (unsigned i = 0; i < nl; ++i) {
                std::vector<u32> v(s.n());
                u64 e = rng.below(q);
                s.element_from_index(e, v.data());
                ls.emplace_back(s, std::move(v));
            }
            if (admissible_tuple(ls, s)) {
                found = true;
                break;
            }
        }
        if (!found) throw std::domain_error("field too small to admit an admissible lambda-tuple");
        HyperellipticCurve c = z4_family(Z4FamilyParams{&s, std::move(ls)});
        int f = prank(c).f;
        ++h.counts[f];
        ++h.samples;
    }
    return h;
}

PrankHistogram z4_prank_survey_exhaustive(const FieldSpec& s, int g) {
    if (g < 2) throw std::invalid_argument("survey requires genus >= 2");
    unsigned nl = static_cast<unsigned>(g - 1);
    u64 q = s.size();
    if (q > 4096) throw std::domain_error("exhaustive survey limited to small fields");
    PrankHistogram h;
    std::vector<u64> idx(nl, 0);
    // ascending index tuples; admissibility filters the rest
    std::vector<FieldElement> ls;
    auto advance = [&]() -> bool {
        unsigned i = nl;
        while (i-- > 0) {
            if (idx[i] + (nl - i) < q) {
                ++idx[i];
                for (unsigned j = i + 1; j < nl; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (unsigned j = 0; j < nl; ++j) idx[j] = j;
    if (idx[nl - 1] >= q) return h;
    do {
        ls.clear();
        for (unsigned j = 0; j < nl; ++j) {
            std::vector<u32> v(s.n());
            s.element_from_index(idx[j], v.data());
            ls.emplace_back(s, std::move(v));
        }
        if (!admissible_tuple(ls, s)) continue;
        HyperellipticCurve c = z4_family(Z4FamilyParams{&s, ls});
        ++h.counts[prank(c).f];
        ++h.samples;
    } while (advance());
    return h;
}

// ----- prescribed-jump Artin-Schreier covers -----------------------------------

ArtinSchreierCover as_construct(const FieldSpec& s, const std::vector<JumpSpec>& jumps) {
    if (jumps.empty()) throw std::invalid_argument("need at least one branch point");
    u64 p = s.p();
    unsigned inf_jump = 0;
    std::vector<std::pair<FieldElement, unsigned>> finite;
    for (const JumpSpec& j : jumps) {
        if (j.jump < 1 || j.jump % p == 0) throw std::invalid_argument("jumps must be positive and prime to p");
        if (j.at_infinity) {
            if (inf_jump) throw std::invalid_argument("duplicate place at infinity");
            inf_jump = j.jump;
        } else {
            if (&j.place.field() != &s) throw std::invalid_argument("place over wrong field");
            for (const auto& [b, jj] : finite)
                if (b == j.place) throw std::invalid_argument("duplicate branch place");
            finite.emplace_back(j.place, j.jump);
        }
    }
    Poly den = Poly::one(s);
    for (const auto& [b, j] : finite) {
        Poly lin(s, {-b, FieldElement::from_int(s, 1)});
        den = den * lin.pow(j);
    }
    Poly num = inf_jump ? Poly::monomial(FieldElement::from_int(s, 1), inf_jump) * den : Poly(s);
    for (const auto& [b, j] : finite) {
        Poly lin(s, {-b, FieldElement::from_int(s, 1)});
        num = num + den / lin.pow(j);
    }
    if (num.is_zero()) throw std::invalid_argument("empty construction");
    ArtinSchreierCover cover = make_artin_schreier(s, RationalFunction(num, den));
    // cross-validate derived branch data against the prescription
    size_t expected = finite.size() + (inf_jump ? 1 : 0);
    if (cover.branch_data.size() != expected)
        throw std::runtime_error("constructed cover has unexpected branch points");
    const Embedding& emb = s.embed_into(*cover.branch_field);
    for (const auto& [b, j] : finite) {
        FieldElement bl = emb.lift(b);
        bool ok = false;
        for (const RamificationDatum& d : cover.branch_data)
            if (!d.at_infinity && d.place == bl && d.jump == j) ok = true;
        if (!ok) throw std::runtime_error("constructed cover lost a prescribed branch place");
    }
    if (inf_jump) {
        bool ok = false;
        for (const RamificationDatum& d : cover.branch_data)
            if (d.at_infinity && d.jump == inf_jump) ok = true;
        if (!ok) throw std::runtime_error("constructed cover lost the branch place at infinity");
    }
    return cover;
}

NodalRecord make_nodal(const HyperellipticCurve& c1, const HyperellipticCurve& c2) {
    return NodalRecord{{c1.genus, prank(c1).f}, {c2.genus, prank(c2).f}};
}

int nodal_prank(const NodalRecord& r) { return r.first.p_rank + r.second.p_rank; }

}  // namespace curvetk
