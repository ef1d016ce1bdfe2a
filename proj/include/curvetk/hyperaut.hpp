#pragma once

#include <string>
#include <vector>

#include "curvetk/curve.hpp"

namespace curvetk {

// Fractional linear transformation x -> (ax+b)/(cx+d), ad - bc != 0, stored
// projectively normalized: the first nonzero of (a,b,c,d) is 1.
class MoebiusMap {
  public:
    MoebiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

    static MoebiusMap identity(const FieldSpec& s);

    const FieldSpec& field() const { return *spec_; }
    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldElement& c() const { return c_; }
    const FieldElement& d() const { return d_; }

    ProjPoint apply(const ProjPoint& p) const;
    MoebiusMap compose(const MoebiusMap& o) const;  // this after o
    MoebiusMap inverse() const;
    bool is_identity() const;
    bool operator==(const MoebiusMap& o) const;
    bool operator<(const MoebiusMap& o) const;  // encoding order

    std::string str() const;

  private:
    const FieldSpec* spec_;
    FieldElement a_, b_, c_, d_;
    void normalize();
};

unsigned element_order(const MoebiusMap& m);

struct StructureTag {
    enum class Kind { trivial, cyclic, dihedral, klein, other };
    Kind kind;
    unsigned param;  // cyclic(m) / dihedral(m) / other(order)
    std::string str() const;
};

// Coarse isomorphism type from the element-order census: trivial, cyclic,
// dihedral and Klein-four are recognized; anything larger reports other(n).
struct StructureTag structure_of(const std::vector<MoebiusMap>& elements);

// Stabilizer of the branch locus in PGL_2 over the splitting field of B;
// this is Aut(D)/<iota> computed geometrically.
struct ReducedAutGroup {
    const FieldSpec* field;
    std::vector<MoebiusMap> elements;  // sorted by encoding, closed group
    StructureTag structure;

    unsigned order() const { return static_cast<unsigned>(elements.size()); }
};

// Core routine: full setwise stabilizer of >= 3 points of the projective
// line, by enumerating images of a fixed ordered triple.
ReducedAutGroup stabilizer_of(const BranchLocus& locus);

ReducedAutGroup reduced_aut(const HyperellipticCurve& c);

// |Aut(D)| = 2 |Aut(D)/<iota>|: every reduced element has exactly two lifts.
u64 full_aut_order(const ReducedAutGroup& g);

enum class LiftTag { z4, klein4, wild };

struct LiftClass {
    MoebiusMap map;
    unsigned order;
    LiftTag tag;
};

// Involutions are tagged z4 when both fixed points lie in the branch locus
// (the lift squares to the hyperelliptic involution) and klein4 when neither
// does (two commuting involutions upstairs). Elements of order p are tagged
// wild.
std::vector<LiftClass> classify_involutions(const HyperellipticCurve& c, const ReducedAutGroup& g);

// Membership test for an extra automorphism of order ell in the reduced group.
bool has_order_ell(const HyperellipticCurve& c, unsigned ell);

}  // namespace curvetk
