#pragma once

#include <optional>
#include <string>

#include "curvetk/constructs.hpp"
#include "curvetk/hyperaut.hpp"
#include "curvetk/parallel.hpp"

namespace curvetk {

enum class AutConstraint { trivial_reduced, contains_order_ell, z4, any };

struct SearchConfig {
    u64 p = 3;
    unsigned n_max = 1;    // field escalation F_{p^n}, n = 1..n_max
    int g = 3;
    int target_f = -1;     // -1 = any p-rank
    AutConstraint aut = AutConstraint::trivial_reduced;
    unsigned aut_ell = 0;  // for contains_order_ell
    u64 sample_budget = 0;
    u64 master_seed = 0;
    unsigned workers = 0;  // 0 = default_worker_count()
};

struct WitnessRecord {
    HyperellipticCurve curve;
    int p_rank;
    PRankResult prank_result;  // cartier, with zeta verification when in envelope
    ReducedAutGroup reduced;
    bool verified;
    unsigned found_level;  // extension degree n of the field searched
    u64 found_index;       // candidate index within that level
    SearchConfig config;
};

struct SearchOutcome {
    std::optional<WitnessRecord> witness;  // empty = budget exhausted (not a disproof)
};

// Uniform over monic squarefree polynomials of degree 2g+1 (rejection
// sampling); the curve y^2 = f. Throws when p = 2 or when rejection exhausts
// its attempt budget (pathologically small fields).
HyperellipticCurve random_curve(int g, const FieldSpec& s, Rng& rng);

// First sampled curve with the requested p-rank and automorphism constraint.
// Candidates are keyed by (level, index): candidate i at level n is generated
// from seed derive(derive(master_seed, n), i), so the result is independent
// of the worker count; the hit with the smallest (level, index) wins.
SearchOutcome find_witness(const SearchConfig& cfg);

// Re-runs both stored computations (p-rank with oracle verification, reduced
// group over a freshly derived splitting field) and compares bit-exactly.
bool verify_witness(const WitnessRecord& w);

struct CensusRow {
    u64 q;
    int g;
    int p_rank;
    unsigned aut_order;
    u64 count;
};

struct CensusResult {
    u64 q;
    int g;
    u64 total;  // number of models enumerated or sampled (frequency denominator)
    bool exhaustive;
    u64 sample_budget;
    u64 seed;
    std::vector<CensusRow> rows;  // sorted by (p_rank, aut_order)

    u64 count_prank_le(int f) const {
        u64 c = 0;
        for (const CensusRow& r : rows)
            if (r.p_rank <= f) c += r.count;
        return c;
    }
};

// Joint (p-rank, reduced automorphism order) counts over monic squarefree
// models of degree 2g+1: either the full space (requires q^(2g+2) <= 10^8) or
// `sample_budget` samples keyed by index.
CensusResult census(int g, const FieldSpec& s, bool exhaustive, u64 sample_budget, u64 seed,
                    unsigned workers = 0);

struct SlopeFit {
    bool ok = false;
    double slope = 0;                  // of log(frequency) against log(q)
    double estimated_codimension = 0;  // -slope
    double residual = 0;
    std::string error;                 // set when !ok (zero counts, single q)
    double codim_lower_bound = 0;      // meaningful when a zero count occurred
};

// Least-squares decay rate of the frequency of p-rank <= f across censuses at
// increasing field sizes.
SlopeFit slope_fit(const std::vector<CensusResult>& censuses, int f);

}  // namespace curvetk
