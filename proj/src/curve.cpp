#include "curvetk/curve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace curvetk {

HyperellipticCurve make_hyperelliptic(const FieldSpec& s, const Poly& f) {
    if (s.p() < 3)
        throw std::invalid_argument("hyperelliptic model y^2=f(x) requires p >= 3 (use an Artin-Schreier cover for p=2)");
    if (&f.field() != &s) throw std::invalid_argument("polynomial over wrong field");
    if (f.degree() < 3) throw std::invalid_argument("degree must be at least 3");
    if (!f.squarefree()) throw std::invalid_argument("f must be squarefree");
    int genus = (f.degree() - 1) / 2;
    return HyperellipticCurve{&s, f, genus};
}

BranchLocus branch_locus(const HyperellipticCurve& c) {
    SplittingData sd = splitting_field(c.f);
    BranchLocus b{sd.field, sd.emb, {}};
    b.points.reserve(static_cast<size_t>(2 * c.genus + 2));
    for (const FieldElement& r : sd.roots) b.points.push_back(ProjPoint::affine(r));
    if (c.f.degree() % 2 == 1) b.points.push_back(ProjPoint::at_infinity(*sd.field));
    std::sort(b.points.begin(), b.points.end());
    if (b.points.size() != static_cast<size_t>(2 * c.genus + 2))
        throw std::runtime_error("branch locus has unexpected size");
    return b;
}

OddModel odd_degree_model(const HyperellipticCurve& c) {
    if (c.f.degree() % 2 == 1) return OddModel{c.spec, c.f};
    SplittingData sd = splitting_field(c.f);
    const FieldElement& r = sd.roots.front();  // smallest root, deterministic
    Poly fl = c.f.lift(*sd.emb);
    Poly fs = fl.taylor_shift(r);  // fs(0) = 0
    int d = fs.degree();
    std::vector<FieldElement> h;
    h.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) h.push_back(fs.coeff(d - k));
    Poly hp(*sd.field, std::move(h));
    if (hp.degree() != d - 1) throw std::runtime_error("odd model transform lost degree");
    return OddModel{sd.field, hp};
}

// ----- Artin-Schreier -------------------------------------------------------

namespace {

// c^(1/p) on a perfect field: inverse Frobenius.
FieldElement pth_root(const FieldElement& c) {
    return c.frobenius(static_cast<int>(c.field().n()) - 1);
}

// Reduce the polynomial tail: while deg P is a positive multiple of p, remove
// the top term by subtracting (r x^(d/p))^p - r x^(d/p) with r = lc^(1/p).
Poly reduce_polynomial_part(Poly P) {
    const FieldSpec& K = P.field();
    u64 p = K.p();
    while (P.degree() >= 1 && static_cast<u64>(P.degree()) % p == 0) {
        int d = P.degree();
        FieldElement r = pth_root(P.lc());
        P = P - Poly::monomial(P.lc(), static_cast<unsigned>(d)) +
            Poly::monomial(r, static_cast<unsigned>(d) / static_cast<unsigned>(p));
    }
    return P;
}

// Truncated series inverse of w (w(0) != 0) to order m.
std::vector<FieldElement> series_inverse(const std::vector<FieldElement>& w, unsigned m, const FieldSpec& K) {
    std::vector<FieldElement> s(m, FieldElement(K));
    FieldElement w0inv = w[0].inverse();
    s[0] = w0inv;
    for (unsigned k = 1; k < m; ++k) {
        FieldElement acc(K);
        for (unsigned i = 1; i <= k; ++i) {
            const FieldElement wi = i < w.size() ? w[i] : FieldElement(K);
            acc += wi * s[k - i];
        }
        s[k] = -(acc * w0inv);
    }
    return s;
}

std::vector<FieldElement> taylor_coeffs(const Poly& f, const FieldElement& b, unsigned m) {
    Poly shifted = f.taylor_shift(b);
    std::vector<FieldElement> out;
    out.reserve(m);
    for (unsigned k = 0; k < m; ++k) out.push_back(shifted.coeff(static_cast<int>(k)));
    return out;
}

struct PolePart {
    FieldElement place;
    std::vector<FieldElement> coeffs;  // coeffs[k-1] = coefficient of (x-b)^(-k)
    unsigned order() const {
        for (size_t k = coeffs.size(); k-- > 0;)
            if (!coeffs[k].is_zero()) return static_cast<unsigned>(k + 1);
        return 0;
    }
};

void reduce_pole_part(PolePart& part, u64 p, unsigned n) {
    for (size_t k = part.coeffs.size(); k-- > 0;) {
        unsigned order = static_cast<unsigned>(k + 1);
        if (part.coeffs[k].is_zero() || order % p != 0) continue;
        FieldElement c = part.coeffs[k];
        FieldElement r = c.frobenius(static_cast<int>(n) - 1);  // c^(1/p)
        part.coeffs[k] = FieldElement(c.field());
        part.coeffs[order / p - 1] += r;
    }
}

}  // namespace

RationalFunction as_reduce(const RationalFunction& fr) {
    const FieldSpec& K = fr.field();
    u64 p = K.p();
    auto [P, R] = fr.num.divrem(fr.den);
    P = reduce_polynomial_part(std::move(P));
    if (fr.den.degree() == 0) {
        if (P.degree() < 1)
            throw std::domain_error("function lies in the image of the Artin-Schreier operator (split cover)");
        return RationalFunction::from_poly(P);
    }
    // pole-by-pole reduction over the splitting field of the pole locus
    Poly sf = fr.den.squarefree_part();
    SplittingData sd = splitting_field(sf);
    const FieldSpec& L = *sd.field;
    Poly denL = fr.den.lift(*sd.emb);
    Poly remL = R.lift(*sd.emb);
    std::vector<std::pair<FieldElement, unsigned>> poles;  // (root, multiplicity)
    {
        Poly rest = denL;
        for (const FieldElement& b : sd.roots) {
            unsigned mult = 0;
            Poly lin(L, {-b, FieldElement::from_int(L, 1)});
            for (;;) {
                auto [q, r] = rest.divrem(lin);
                if (!r.is_zero()) break;
                rest = q;
                ++mult;
            }
            poles.emplace_back(b, mult);
        }
    }
    std::vector<PolePart> parts;
    for (const auto& [b, mult] : poles) {
        // local expansion of R/den at b: c_k = s[mult-k] where
        // s = (R(b+t) / (den/(x-b)^mult)(b+t)) mod t^mult
        Poly lin(L, {-b, FieldElement::from_int(L, 1)});
        Poly w = denL;
        for (unsigned i = 0; i < mult; ++i) w = w / lin;
        std::vector<FieldElement> ws = taylor_coeffs(w, b, mult);
        std::vector<FieldElement> rs = taylor_coeffs(remL, b, mult);
        std::vector<FieldElement> winv = series_inverse(ws, mult, L);
        PolePart part{b, std::vector<FieldElement>(mult, FieldElement(L))};
        for (unsigned k = 1; k <= mult; ++k) {
            FieldElement acc(L);
            unsigned idx = mult - k;
            for (unsigned i = 0; i <= idx; ++i) acc += rs[i] * winv[idx - i];
            part.coeffs[k - 1] = acc;
        }
        reduce_pole_part(part, p, L.n());
        parts.push_back(std::move(part));
    }
    // reassemble over L: P + sum of reduced pole parts
    Poly new_den = Poly::one(L);
    for (const PolePart& part : parts) {
        unsigned ord = part.order();
        if (!ord) continue;
        Poly lin(L, {-part.place, FieldElement::from_int(L, 1)});
        new_den = new_den * lin.pow(ord);
    }
    Poly new_num = P.lift(*sd.emb) * new_den;
    for (const PolePart& part : parts) {
        unsigned ord = part.order();
        if (!ord) continue;
        Poly lin(L, {-part.place, FieldElement::from_int(L, 1)});
        Poly cofactor = new_den / lin.pow(ord);
        Poly local(L);
        for (unsigned k = 1; k <= ord; ++k) {
            if (part.coeffs[k - 1].is_zero()) continue;
            local = local + Poly::constant(part.coeffs[k - 1]) * lin.pow(ord - k);
        }
        new_num = new_num + local * cofactor;
    }
    Poly num_K = new_num.descend(*sd.emb);
    Poly den_K = new_den.descend(*sd.emb);
    RationalFunction out(std::move(num_K), std::move(den_K));
    if (out.den.degree() == 0 && out.num.degree() < 1)
        throw std::domain_error("function lies in the image of the Artin-Schreier operator (split cover)");
    return out;
}

int as_genus_from_jumps(u64 p, const std::vector<unsigned>& jumps) {
    if (jumps.empty()) throw std::invalid_argument("branch data must be nonempty");
    i64 sum = 0;
    for (unsigned j : jumps) {
        if (j < 1 || j % p == 0) throw std::invalid_argument("jumps must be positive and prime to p");
        sum += static_cast<i64>(j) + 1;
    }
    i64 twog = static_cast<i64>(p - 1) * (sum - 2);
    if (twog < 0 || twog % 2 != 0) throw std::domain_error("ramification data yields invalid genus");
    return static_cast<int>(twog / 2);
}

ArtinSchreierCover make_artin_schreier(const FieldSpec& s, const RationalFunction& f) {
    if (&f.field() != &s) throw std::invalid_argument("function over wrong field");
    RationalFunction red = as_reduce(f);
    const FieldSpec* branch_field = &s;
    std::vector<RamificationDatum> data;
    if (red.den.degree() > 0) {
        Poly sf = red.den.squarefree_part();
        SplittingData sd = splitting_field(sf);
        branch_field = sd.field;
        Poly denL = red.den.lift(*sd.emb);
        for (const FieldElement& b : sd.roots) {
            Poly lin(*sd.field, {-b, FieldElement::from_int(*sd.field, 1)});
            unsigned mult = 0;
            Poly rest = denL;
            for (;;) {
                auto [q, r] = rest.divrem(lin);
                if (!r.is_zero()) break;
                rest = q;
                ++mult;
            }
            data.push_back(RamificationDatum{false, b, mult});
        }
    }
    if (red.num.degree() > red.den.degree()) {
        unsigned j = static_cast<unsigned>(red.num.degree() - red.den.degree());
        data.push_back(RamificationDatum{true, FieldElement(*branch_field), j});
    }
    if (data.empty())
        throw std::domain_error("no branch points: cover splits");
    std::sort(data.begin(), data.end(), [](const RamificationDatum& a, const RamificationDatum& b) {
        if (a.at_infinity != b.at_infinity) return b.at_infinity;  // finite first
        if (a.at_infinity) return false;
        return a.place < b.place;
    });
    std::vector<unsigned> jumps;
    jumps.reserve(data.size());
    for (const auto& d : data) jumps.push_back(d.jump);
    int genus = as_genus_from_jumps(s.p(), jumps);
    return ArtinSchreierCover{&s, std::move(red), branch_field, std::move(data), genus};
}

int as_genus(const ArtinSchreierCover& c) {
    std::vector<unsigned> jumps;
    jumps.reserve(c.branch_data.size());
    for (const auto& d : c.branch_data) jumps.push_back(d.jump);
    return as_genus_from_jumps(c.spec->p(), jumps);
}

int as_prank(const ArtinSchreierCover& c) {
    if (c.branch_data.empty()) throw std::invalid_argument("branch data must be nonempty");
    return static_cast<int>((c.branch_data.size() - 1) * (c.spec->p() - 1));
}

// ----- point counting -------------------------------------------------------

namespace {

const FieldSpec& extension_field(const FieldSpec& base, unsigned m, const Embedding*& emb_out) {
    if (m == 1) {
        emb_out = &base.embed_into(base);
        return base;
    }
    u64 nn = u64(base.n()) * m;
    if (nn > kMaxExtensionDegree) throw std::domain_error("extension degree exceeds envelope");
    const FieldSpec& big = FieldSpec::get(base.p(), static_cast<unsigned>(nn));
    emb_out = &base.embed_into(big);
    return big;
}

void check_enumerable(const FieldSpec& K) {
    if (!K.size_fits_u64() || K.size() > kMaxEnumerableField)
        throw std::domain_error("field too large to enumerate points");
}

#ifndef NDEBUG
// tripwire for arithmetic bugs: |N - (q+1)| <= 2g sqrt(q)
void weil_check(u64 count, u64 q, int genus) {
    double bound = 2.0 * genus * std::sqrt(static_cast<double>(q)) + 1.0;
    double diff = std::fabs(static_cast<double>(count) - static_cast<double>(q) - 1.0);
    assert(diff <= bound && "point count violates the Weil bound");
    (void)bound;
    (void)diff;
}
#endif

}  // namespace

u64 count_points(const HyperellipticCurve& c, unsigned m) {
    const Embedding* emb = nullptr;
    const FieldSpec& K = extension_field(*c.spec, m, emb);
    check_enumerable(K);
    u64 Q = K.size();
    const std::vector<u64>& squares = K.square_table();
    Poly fb = c.f.lift(*emb);
    unsigned n = K.n();
    int d = fb.degree();
    // flattened coefficients, degree-major for Horner
    std::vector<u32> flat(static_cast<size_t>(d + 1) * n);
    for (int k = 0; k <= d; ++k) {
        FieldElement ck = fb.coeff(k);
        std::copy(ck.coeffs().begin(), ck.coeffs().end(), flat.begin() + static_cast<size_t>(k) * n);
    }
    std::vector<u32> x(n, 0), v(n), tmp(n);
    u64 count = 0;
    for (u64 idx = 0;; ++idx) {
        // v = f(x), Horner
        std::copy(flat.begin() + static_cast<size_t>(d) * n, flat.begin() + static_cast<size_t>(d + 1) * n, v.begin());
        for (int k = d - 1; k >= 0; --k) {
            K.mul(v.data(), x.data(), tmp.data());
            K.add(tmp.data(), flat.data() + static_cast<size_t>(k) * n, v.data());
        }
        if (K.is_zero(v.data())) {
            count += 1;
        } else {
            u64 vi = 0;
            for (unsigned i = n; i-- > 0;) vi = vi * K.p() + v[i];
            if ((squares[vi >> 6] >> (vi & 63)) & 1) count += 2;
        }
        if (idx + 1 == Q) break;
        for (unsigned i = 0; i < n; ++i) {
            if (++x[i] < K.p()) break;
            x[i] = 0;
        }
    }
    if (d % 2 == 1) {
        count += 1;
    } else {
        FieldElement lc = fb.lc();
        if (K.is_square(lc.data())) count += 2;
    }
#ifndef NDEBUG
    weil_check(count, Q, c.genus);
#endif
    return count;
}

u64 count_points(const ArtinSchreierCover& c, unsigned m) {
    const Embedding* emb = nullptr;
    const FieldSpec& K = extension_field(*c.spec, m, emb);
    check_enumerable(K);
    u64 Q = K.size();
    u64 p = K.p();
    Poly num = c.f.num.lift(*emb);
    Poly den = c.f.den.lift(*emb);
    unsigned n = K.n();
    const std::vector<u32>& tb = K.trace_basis();
    std::vector<u32> x(n, 0);
    u64 count = 0;
    for (u64 idx = 0;; ++idx) {
        FieldElement xe(K, x);
        FieldElement nv = num.eval(xe);
        FieldElement dv = den.eval(xe);
        if (dv.is_zero()) {
            count += 1;  // totally ramified above a rational pole
        } else {
            FieldElement val = nv / dv;
            u64 tr = 0;
            for (unsigned i = 0; i < n; ++i) tr += u64(val.coeffs()[i]) * tb[i];
            if (tr % p == 0) count += p;
        }
        if (idx + 1 == Q) break;
        for (unsigned i = 0; i < n; ++i) {
            if (++x[i] < K.p()) break;
            x[i] = 0;
        }
    }
    int dn = num.degree(), dd = den.degree();
    if (dn > dd) {
        count += 1;  // pole at infinity
    } else {
        FieldElement val = dn == dd ? num.lc() * den.lc().inverse() : FieldElement(K);
        u64 tr = 0;
        for (unsigned i = 0; i < n; ++i) tr += u64(val.coeffs()[i]) * tb[i];
        if (tr % p == 0) count += p;
    }
#ifndef NDEBUG
    weil_check(count, Q, c.genus);
#endif
    return count;
}

}  // namespace curvetk
