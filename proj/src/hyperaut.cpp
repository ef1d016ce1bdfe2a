#include "curvetk/hyperaut.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace curvetk {

MoebiusMap::MoebiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : spec_(&a.field()), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (&b_.field() != spec_ || &c_.field() != spec_ || &d_.field() != spec_)
        throw std::invalid_argument("map coefficients over mixed fields");
    if ((a_ * d_ - b_ * c_).is_zero()) throw std::invalid_argument("degenerate map: ad - bc = 0");
    normalize();
}

void MoebiusMap::normalize() {
    FieldElement* coords[4] = {&a_, &b_, &c_, &d_};
    for (FieldElement* e : coords) {
        if (!e->is_zero()) {
            if (!e->is_one()) {
                FieldElement inv = e->inverse();
                a_ *= inv;
                b_ *= inv;
                c_ *= inv;
                d_ *= inv;
            }
            return;
        }
    }
}

MoebiusMap MoebiusMap::identity(const FieldSpec& s) {
    FieldElement one = FieldElement::from_int(s, 1), zero(s);
    return MoebiusMap(one, zero, zero, one);
}

ProjPoint MoebiusMap::apply(const ProjPoint& p) const {
    FieldElement X = p.infinite ? FieldElement::from_int(*spec_, 1) : p.x;
    FieldElement Z = p.infinite ? FieldElement(*spec_) : FieldElement::from_int(*spec_, 1);
    FieldElement Xi = a_ * X + b_ * Z;
    FieldElement Zi = c_ * X + d_ * Z;
    if (Zi.is_zero()) return ProjPoint::at_infinity(*spec_);
    return ProjPoint::affine(Xi / Zi);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("composing maps over different fields");
    return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MoebiusMap MoebiusMap::inverse() const {
    return MoebiusMap(d_, -b_, -c_, a_);
}

bool MoebiusMap::is_identity() const {
    return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_one();
}

bool MoebiusMap::operator==(const MoebiusMap& o) const {
    return spec_ == o.spec_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool MoebiusMap::operator<(const MoebiusMap& o) const {
    int c = FieldElement::cmp(a_, o.a_);
    if (c) return c < 0;
    c = FieldElement::cmp(b_, o.b_);
    if (c) return c < 0;
    c = FieldElement::cmp(c_, o.c_);
    if (c) return c < 0;
    return FieldElement::cmp(d_, o.d_) < 0;
}

std::string MoebiusMap::str() const {
    std::ostringstream os;
    os << "(" << a_.str() << "*x+" << b_.str() << ")/(" << c_.str() << "*x+" << d_.str() << ")";
    return os.str();
}

unsigned element_order(const MoebiusMap& m) {
    MoebiusMap t = m;
    unsigned k = 1;
    while (!t.is_identity()) {
        t = t.compose(m);
        ++k;
        if (k > 100000) throw std::runtime_error("element order did not terminate");
    }
    return k;
}

std::string StructureTag::str() const {
    switch (kind) {
        case Kind::trivial: return "trivial";
        case Kind::cyclic: return "cyclic(" + std::to_string(param) + ")";
        case Kind::dihedral: return "dihedral(" + std::to_string(param) + ")";
        case Kind::klein: return "klein";
        case Kind::other: return "other(" + std::to_string(param) + ")";
    }
    return "?";
}

StructureTag structure_of(const std::vector<MoebiusMap>& elements) {
    unsigned n = static_cast<unsigned>(elements.size());
    if (n == 1) return {StructureTag::Kind::trivial, 1};
    unsigned max_ord = 1, involutions = 0;
    for (const MoebiusMap& m : elements) {
        if (m.is_identity()) continue;
        unsigned o = element_order(m);
        max_ord = std::max(max_ord, o);
        if (o == 2) ++involutions;
    }
    if (max_ord == n) return {StructureTag::Kind::cyclic, n};
    if (n == 4) return {StructureTag::Kind::klein, 2};
    if (n % 2 == 0 && max_ord == n / 2 && (involutions == n / 2 || involutions == n / 2 + 1))
        return {StructureTag::Kind::dihedral, n / 2};
    return {StructureTag::Kind::other, n};
}

namespace {

// Raw 2x2 projective matrix work on flattened coefficient vectors. All
// scratch is preallocated; inner loops only touch FieldSpec kernels.
struct StabScratch {
    const FieldSpec& K;
    unsigned n;
    size_t nb;
    bool have_inf = false;
    std::vector<u32> X, Z;  // nb points, n words each
    std::vector<u32> t_src, t_tgt, m;  // 2x2 matrices: 4*n words (a,b,c,d)
    std::vector<u32> w1, w2, w3, w4, ix, iz;

    explicit StabScratch(const BranchLocus& locus)
        : K(*locus.field), n(locus.field->n()), nb(locus.points.size()) {
        X.assign(nb * n, 0);
        Z.assign(nb * n, 0);
        for (size_t i = 0; i < nb; ++i) {
            const ProjPoint& p = locus.points[i];
            if (p.infinite) {
                have_inf = true;
                K.set_one(&X[i * n]);
            } else {
                std::copy(p.x.coeffs().begin(), p.x.coeffs().end(), X.begin() + static_cast<long>(i * n));
                K.set_one(&Z[i * n]);
            }
        }
        t_src.assign(4 * n, 0);
        t_tgt.assign(4 * n, 0);
        m.assign(4 * n, 0);
        w1.assign(n, 0);
        w2.assign(n, 0);
        w3.assign(n, 0);
        w4.assign(n, 0);
        ix.assign(n, 0);
        iz.assign(n, 0);
    }

    const u32* px(size_t i) const { return &X[i * n]; }
    const u32* pz(size_t i) const { return &Z[i * n]; }

    // out = X_i * Z_j - X_j * Z_i
    void cross(size_t i, size_t j, u32* out) {
        K.mul(px(i), pz(j), w1.data());
        K.mul(px(j), pz(i), w2.data());
        K.sub(w1.data(), w2.data(), out);
    }

    // T maps (P_i, P_j, P_k) to ((0:1), (1:1), (1:0)):
    // rows (alpha*Z_i, -alpha*X_i; beta*Z_k, -beta*X_k) with
    // alpha = cross(j, k), beta = cross(j, i).
    void make_triple_map(size_t i, size_t j, size_t k, u32* T) {
        cross(j, k, w3.data());  // alpha
        cross(j, i, w4.data());  // beta
        K.mul(w3.data(), pz(i), &T[0]);          // a
        K.mul(w3.data(), px(i), &T[1 * n]);      // -b pending
        K.neg(&T[1 * n], &T[1 * n]);
        K.mul(w4.data(), pz(k), &T[2 * n]);      // c
        K.mul(w4.data(), px(k), &T[3 * n]);      // -d pending
        K.neg(&T[3 * n], &T[3 * n]);
    }

    // m = adj(t_tgt) * t_src
    void make_candidate() {
        const u32 *sa = &t_src[0], *sb = &t_src[n], *sc = &t_src[2 * n], *sd = &t_src[3 * n];
        const u32 *ta = &t_tgt[0], *tb = &t_tgt[n], *tc = &t_tgt[2 * n], *td = &t_tgt[3 * n];
        // adj = (d, -b; -c, a)
        K.mul(td, sa, w1.data());
        K.mul(tb, sc, w2.data());
        K.sub(w1.data(), w2.data(), &m[0]);  // d*sa - b*sc
        K.mul(td, sb, w1.data());
        K.mul(tb, sd, w2.data());
        K.sub(w1.data(), w2.data(), &m[n]);  // d*sb - b*sd
        K.mul(tc, sa, w1.data());
        K.mul(ta, sc, w2.data());
        K.sub(w2.data(), w1.data(), &m[2 * n]);  // -c*sa + a*sc
        K.mul(tc, sb, w1.data());
        K.mul(ta, sd, w2.data());
        K.sub(w2.data(), w1.data(), &m[3 * n]);  // -c*sb + a*sd
    }

    // does m map point index t into the branch locus?
    bool image_in_locus(size_t t) {
        K.mul(&m[0], px(t), w1.data());
        K.mul(&m[n], pz(t), w2.data());
        K.add(w1.data(), w2.data(), ix.data());
        K.mul(&m[2 * n], px(t), w1.data());
        K.mul(&m[3 * n], pz(t), w2.data());
        K.add(w1.data(), w2.data(), iz.data());
        if (K.is_zero(iz.data())) return have_inf;
        // affine image: look for X_s with X_s * iz == ix (Z_s = 1 entries only)
        for (size_t s = 0; s < nb; ++s) {
            if (K.is_zero(pz(s))) continue;
            K.mul(px(s), iz.data(), w1.data());
            if (K.eq(w1.data(), ix.data())) return true;
        }
        return false;
    }
};

}  // namespace

ReducedAutGroup stabilizer_of(const BranchLocus& locus) {
    const FieldSpec& K = *locus.field;
    size_t nb = locus.points.size();
    if (nb < 3) throw std::invalid_argument("stabilizer needs at least 3 points");
    StabScratch s(locus);
    s.make_triple_map(0, 1, 2, s.t_src.data());
    std::vector<MoebiusMap> elements;
    unsigned n = K.n();
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j) {
            if (j == i) continue;
            for (size_t k = 0; k < nb; ++k) {
                if (k == i || k == j) continue;
                s.make_triple_map(i, j, k, s.t_tgt.data());
                s.make_candidate();
                bool ok = true;
                for (size_t t = 3; t < nb; ++t) {
                    if (!s.image_in_locus(t)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                auto el = [&](size_t idx) {
                    return FieldElement(K, std::vector<u32>(s.m.begin() + static_cast<long>(idx * n),
                                                            s.m.begin() + static_cast<long>((idx + 1) * n)));
                };
                elements.push_back(MoebiusMap(el(0), el(1), el(2), el(3)));
            }
        }
    std::sort(elements.begin(), elements.end());
    ReducedAutGroup g{&K, std::move(elements), {StructureTag::Kind::trivial, 1}};
    g.structure = structure_of(g.elements);
    return g;
}

ReducedAutGroup reduced_aut(const HyperellipticCurve& c) {
    if (c.spec->p() < 3) throw std::invalid_argument("reduced automorphism groups are computed for p >= 3");
    if (c.genus < 2) throw std::invalid_argument("reduced automorphism groups are computed for genus >= 2");
    return stabilizer_of(branch_locus(c));
}

u64 full_aut_order(const ReducedAutGroup& g) { return 2 * u64(g.order()); }

std::vector<LiftClass> classify_involutions(const HyperellipticCurve& c, const ReducedAutGroup& g) {
    if (c.spec->p() < 3) throw std::invalid_argument("lift classification requires p >= 3");
    BranchLocus locus = branch_locus(c);
    if (locus.field != g.field)
        throw std::invalid_argument("group was computed over a different splitting field");
    std::vector<LiftClass> out;
    u64 p = c.spec->p();
    for (const MoebiusMap& m : g.elements) {
        if (m.is_identity()) continue;
        unsigned o = element_order(m);
        if (o == 2) {
            unsigned fixed = 0;
            for (const ProjPoint& pt : locus.points) {
                if (m.apply(pt) == pt) ++fixed;
            }
            if (fixed != 0 && fixed != 2)
                throw std::runtime_error("involution fixes an odd number of branch points");
            out.push_back(LiftClass{m, o, fixed == 2 ? LiftTag::z4 : LiftTag::klein4});
        } else if (o == p) {
            out.push_back(LiftClass{m, o, LiftTag::wild});
        }
    }
    return out;
}

bool has_order_ell(const HyperellipticCurve& c, unsigned ell) {
    if (ell == 0) throw std::invalid_argument("order must be positive");
    if (ell == 1) return true;
    ReducedAutGroup g = reduced_aut(c);
    for (const MoebiusMap& m : g.elements) {
        if (m.is_identity()) continue;
        if (element_order(m) == ell) return true;
    }
    return false;
}

}  // namespace curvetk
