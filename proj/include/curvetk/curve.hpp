#pragma once

#include <vector>

#include "curvetk/factor.hpp"
#include "curvetk/poly.hpp"

namespace curvetk {

// y^2 = f(x) with p >= 3, f squarefree of degree 2g+1 or 2g+2.
struct HyperellipticCurve {
    const FieldSpec* spec;
    Poly f;
    int genus;
};

HyperellipticCurve make_hyperelliptic(const FieldSpec& s, const Poly& f);

// A point of the projective line, normalized: either an affine coordinate or
// the point at infinity.
struct ProjPoint {
    bool infinite;
    FieldElement x;

    static ProjPoint at_infinity(const FieldSpec& s) { return {true, FieldElement(s)}; }
    static ProjPoint affine(FieldElement v) { return {false, std::move(v)}; }
    bool operator==(const ProjPoint& o) const {
        return infinite == o.infinite && (infinite || x == o.x);
    }
    bool operator<(const ProjPoint& o) const {
        if (infinite != o.infinite) return !infinite;  // finite points first
        if (infinite) return false;
        return x < o.x;
    }
};

// Branch locus of the hyperelliptic cover: the roots of f over its splitting
// field, plus infinity iff deg f is odd. Always 2g+2 points.
struct BranchLocus {
    const FieldSpec* field;
    const Embedding* emb;  // curve field -> splitting field
    std::vector<ProjPoint> points;
};

BranchLocus branch_locus(const HyperellipticCurve& c);

// Odd-degree model y^2 = h(t), deg h = 2g+1, over the splitting field when a
// branch point has to be moved to infinity first.
struct OddModel {
    const FieldSpec* field;
    Poly h;
};

OddModel odd_degree_model(const HyperellipticCurve& c);

// ----- Artin-Schreier covers y^p - y = f(x) ---------------------------------

struct RamificationDatum {
    bool at_infinity;
    FieldElement place;  // over the branch field; meaningful iff !at_infinity
    unsigned jump;       // pole order, prime to p after reduction
};

struct ArtinSchreierCover {
    const FieldSpec* spec;
    RationalFunction f;  // reduced representative
    const FieldSpec* branch_field;  // splitting field of the pole locus
    std::vector<RamificationDatum> branch_data;  // geometric places, sorted
    int genus;
};

// Minimizes pole orders within the class f + (h^p - h). Throws when f lies in
// the image of the Artin-Schreier operator (the cover would split).
RationalFunction as_reduce(const RationalFunction& f);

ArtinSchreierCover make_artin_schreier(const FieldSpec& s, const RationalFunction& f);

// Genus from the ramification jumps: 2g - 2 = p(-2) + sum (j_b + 1)(p - 1).
int as_genus_from_jumps(u64 p, const std::vector<unsigned>& jumps);
int as_genus(const ArtinSchreierCover& c);

// Deuring-Shafarevich over the projective line: f = (|B| - 1)(p - 1).
int as_prank(const ArtinSchreierCover& c);

// Number of points on the smooth projective model over F_{q^m}.
u64 count_points(const HyperellipticCurve& c, unsigned m);
u64 count_points(const ArtinSchreierCover& c, unsigned m);

}  // namespace curvetk
