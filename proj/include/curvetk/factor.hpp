#pragma once

#include <vector>

#include "curvetk/poly.hpp"

namespace curvetk {

// Irreducible factors of a squarefree polynomial over its own field, monic,
// sorted by (degree, coefficient order). Distinct-degree splitting followed
// by equal-degree splitting; the equal-degree stage is randomized with a
// generator seeded from the input, so results are deterministic.
std::vector<Poly> factor_squarefree(const Poly& f);

// Full factorization (factor, multiplicity) of any nonzero polynomial.
std::vector<std::pair<Poly, unsigned>> factor(const Poly& f);

// Roots of f lying in its own coefficient field. `assume_split` skips the
// filter that first extracts the part splitting over the field (valid when
// the caller knows f splits completely, e.g. in its splitting field).
std::vector<FieldElement> roots_in_field(const Poly& f, bool assume_split = false);

struct SplittingData {
    const FieldSpec* base;             // coefficient field of the input
    const FieldSpec* field;            // canonical splitting field
    const Embedding* emb;              // base -> field
    std::vector<FieldElement> roots;   // all deg(f) roots, sorted
};

// Smallest extension F_{p^(n*D)} over which the squarefree f splits, with all
// of its roots. D is the lcm of the irreducible factor degrees.
SplittingData splitting_field(const Poly& f);

unsigned splitting_degree(const Poly& f);  // the D above

// All roots of an irreducible polynomial over F_{p^base_n} whose coefficients
// have been lifted into a field where it splits: one root is isolated by
// equal-degree splitting, the rest are its conjugates under the q-power
// Frobenius (q = p^base_n).
std::vector<FieldElement> roots_of_lifted_irreducible(const Poly& lifted, unsigned base_n,
                                                      unsigned degree);

}  // namespace curvetk
