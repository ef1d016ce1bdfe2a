#pragma once

#include <map>
#include <optional>

#include "curvetk/prank.hpp"

namespace curvetk {

// Branch-locus relation enforced by the fiber-product constructor:
//   even_mode: equal genera, branch loci differ in exactly one point each way;
//   odd_mode:  branch locus of the second cover contained in the first's;
//   free_mode: any pair of squarefree polynomials.
enum class FiberMode { free_mode, even_mode, odd_mode };

// Klein-four cover of the line given by its three Z/2-quotients
// y^2 = f1, y^2 = f2 and y^2 = f1*f2 / gcd(f1,f2)^2.
struct KleinFourCover {
    HyperellipticCurve c1, c2;
    std::optional<HyperellipticCurve> c3;  // absent when the third quotient has genus 0
    Poly f3;                               // squarefree defining polynomial of the third quotient
    int g3;
    int total_genus;      // g1 + g2 + g3
    int predicted_prank;  // f1 + f2 + f3
};

KleinFourCover fiber_product(const Poly& f1, const Poly& f2, const FieldSpec& s,
                             FiberMode mode = FiberMode::free_mode);

// Points of the smooth model of the total curve over F_{q^m}, counted on the
// simultaneous equations y1^2 = f1(x), y2^2 = f2(x) (nodes over shared branch
// points resolved by the local square class of f1'(b) f2'(b)).
u64 count_points_fiber(const KleinFourCover& kc, unsigned m);

// Independent p-rank of the total curve via the zeta oracle on the
// two-equation model; this is the cross-check for p-rank additivity.
PRankResult fiber_prank_by_counting(const KleinFourCover& kc);

// ----- the order-4 family y^2 = x(x^2-1) prod (x^2 - lambda_i^2) -------------

struct Z4FamilyParams {
    const FieldSpec* spec;
    std::vector<FieldElement> lambdas;  // lambda_1..lambda_{g-1}
};

// Validates the exclusions (lambda_i not in {0, 1, -1}, lambda_i != +-lambda_j)
// and returns the genus-g member. The map x -> -x always classifies as z4.
HyperellipticCurve z4_family(const Z4FamilyParams& params);

struct PrankHistogram {
    std::map<int, u64> counts;
    u64 samples = 0;

    bool any_positive() const {
        for (const auto& [f, c] : counts)
            if (f > 0 && c > 0) return true;
        return false;
    }
};

// Uniform sampling over admissible lambda-tuples (rejection); deterministic
// in (seed, sample index).
PrankHistogram z4_prank_survey(const FieldSpec& s, int g, u64 sample_count, u64 seed);
// Full enumeration over ascending admissible tuples (small fields).
PrankHistogram z4_prank_survey_exhaustive(const FieldSpec& s, int g);

// ----- Artin-Schreier covers with prescribed jumps ---------------------------

struct JumpSpec {
    bool at_infinity;
    FieldElement place;  // base-field place; meaningful iff !at_infinity
    unsigned jump;       // >= 1, prime to p
};

// y^p - y = sum of pole parts: x^j for a jump at infinity, (x-b)^(-j)
// otherwise. The result is already reduced; construction cross-validates the
// derived branch data against the prescription.
ArtinSchreierCover as_construct(const FieldSpec& s, const std::vector<JumpSpec>& jumps);

// ----- p-rank additivity for nodal degenerations -----------------------------

struct NodalComponent {
    int genus;
    int p_rank;
};

struct NodalRecord {
    NodalComponent first, second;

    int total_genus() const { return first.genus + second.genus; }
};

NodalRecord make_nodal(const HyperellipticCurve& c1, const HyperellipticCurve& c2);

// p-rank of a curve with two components meeting in one ordinary double point.
int nodal_prank(const NodalRecord& r);

}  // namespace curvetk
