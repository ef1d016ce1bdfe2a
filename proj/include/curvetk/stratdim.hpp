#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetk/field.hpp"

namespace curvetk {

// Numerical data of a cyclic cover C -> Y of order ell (= p in the wild
// case): total genus g, quotient genus g_Y and p-rank f_Y, branch count, and
// the ramification jumps when ell = p.
struct CoverDatum {
    u64 ell;
    u64 p;
    int g;
    int g_Y;
    int f_Y;
    int branch_count;
    std::vector<unsigned> jumps;  // wild case only

    bool wild() const { return ell == p; }
};

struct StratumDimResult {
    std::optional<int> dimension;
    std::string formula_id;
    std::string empty_reason;  // "", "divisibility", "negativity"
    bool is_upper_bound = false;
    std::vector<int> valid_i;  // order-ell formula side data
    int chosen_i = -1;

    bool empty() const { return !dimension.has_value(); }
};

// dim of the locus of genus-g curves of p-rank <= f: 2g - 3 + f.
int dim_M(int g, int f);
// hyperelliptic analogue: g - 1 + f.
int dim_H(int g, int f);

// Upper bound for a component of the order-ell locus built from quotient
// data: tame 2(g-g_Y)/(ell-1) + f_Y - 1, wild additionally - sum floor(j/p).
// Throws when 2(g-g_Y) is not divisible by ell-1.
i64 cover_dim_bound(const CoverDatum& d);

// Local deformation dimension of a wild cover germ with jump j: j - floor(j/p).
int local_def_dim(u64 p, unsigned j);

// dim of the locus of hyperelliptic curves with an extra automorphism of
// order p (p >= 3): floor((2g+2)/p) - 2 when p | 2g+2 or p | 2g+1, else empty.
StratumDimResult dim_hyperell_order_p(int g, u64 p);

// dim of the locus with an extra automorphism of prime order ell != p:
// empty unless ell | (2g+2-i) for some i in {0,1,2}; dimension
// -1 + (2g+2-i)/ell at the smallest valid i (all valid i reported).
StratumDimResult dim_hyperell_order_ell(int g, u64 ell);

// dim of the locus with an order-4 automorphism squaring to the
// hyperelliptic involution: g - 1.
int dim_H4iota(int g);

// Artin-Schreier locus of genus g: exact g-1+f when p = 2; upper bound d-1
// with g = d(p-1)/2 when p >= 3 (empty when (p-1) does not divide 2g).
StratumDimResult dim_AS(u64 p, int g, int f);

// Riemann-Hurwitz consistency of a cover datum (tame or wild form).
bool rh_check(const CoverDatum& d);

// Deuring-Shafarevich consistency: f - 1 = p(f_Y - 1) + |B|(p - 1).
bool ds_check(u64 p, int f, int f_Y, int branch_count);

// ----- theorem audit ---------------------------------------------------------

enum class Verdict { strict, tight, tight_needs_extra_argument };

std::string verdict_str(Verdict v);

struct AuditCase {
    std::string space;      // "M" or "H"
    std::string ell_label;  // "2", "3", ..., "p", "4iota"
    u64 ell_value;
    std::optional<i64> max_bound;  // empty when the locus is empty
    int stratum_dim;
    Verdict verdict;
    std::optional<CoverDatum> witness;  // datum achieving the max bound
    std::string note;
};

struct AuditReport {
    int g, f;
    u64 p;
    int dim_M_value, dim_H_value;
    std::vector<AuditCase> cases;
    std::vector<std::string> notes;
};

// Replays the dimension-comparison case analysis for curves of genus g and
// p-rank f in characteristic p: every prime order ell <= 2g+1 (tame), the
// wild order-p case (Artin-Schreier locus plus quotient-genus enumeration
// with Deuring-Shafarevich-pinned branch counts), and on the hyperelliptic
// side the order-ell, order-p and order-4-squaring-to-iota loci. Verdicts:
// strict (bound < stratum dim) or tight/tight-needs-extra-argument when the
// comparison alone cannot settle the case. The hyperelliptic cases are
// omitted for p = 2, where the analysis proceeds by irreducibility instead
// of dimension counts.
AuditReport theorem_audit(int g, int f, u64 p);

}  // namespace curvetk
