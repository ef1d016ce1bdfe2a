#pragma once

#include <string>
#include <vector>

#include "curvetk/curve.hpp"
#include "curvetk/matrix.hpp"

namespace curvetk {

// g x g Cartier-Manin matrix of an odd-degree model y^2 = h(x):
// A[i][j] = c_{ip-j} where h^((p-1)/2) = sum c_k x^k, indices 1-based.
struct CartierMatrix {
    const FieldSpec* field;  // field of the odd model (splitting field if the
                             // input had even degree)
    unsigned genus;
    Matrix A;
};

CartierMatrix cartier_matrix(const HyperellipticCurve& c);

// Rank of the g-fold semilinear iterate A^(p^(g-1)) * ... * A^(p) * A
// (twists accumulate on the left because the Cartier operator is
// inverse-Frobenius semilinear). Equals the p-rank; over a prime field this
// is rank(A^g).
unsigned stable_rank(const CartierMatrix& cm);

struct PRankResult {
    int f = 0;
    int genus = 0;
    std::string method;  // "cartier" | "zeta-oracle" | "deuring-shafarevich"
    bool verified = false;
    std::vector<unsigned> rank_chain;  // cartier diagnostics
    std::vector<i64> lpoly;            // zeta diagnostics: a_0..a_g over Z
};

// Independent oracle: point counts over F_{q^m}, m = 1..g, Newton identities,
// then f = deg(L mod p). Valid for every curve model.
PRankResult zeta_prank(const HyperellipticCurve& c);
PRankResult zeta_prank(const ArtinSchreierCover& c);

// Dispatcher: Cartier-Manin for hyperelliptic p >= 3, Deuring-Shafarevich for
// Artin-Schreier covers. With verify=true the zeta oracle must agree or a
// runtime_error is thrown.
PRankResult prank(const HyperellipticCurve& c, bool verify = false);
PRankResult prank(const ArtinSchreierCover& c, bool verify = false);

// Soft envelope for the zeta oracle (sum of q^m enumerations, m <= g).
inline constexpr u64 kMaxZetaEnumeration = 2'000'000'000ULL;

}  // namespace curvetk
