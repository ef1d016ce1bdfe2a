#include "curvetk/prank.hpp"

#include <stdexcept>

namespace curvetk {

namespace {

// expansion degree cap: keeps f^((p-1)/2) at desk scale
constexpr u64 kMaxExpansionDegree = 4'000'000;

std::vector<i64> lpoly_from_counts(const std::vector<u64>& counts, u64 q, int g) {
    // power sums s_m = q^m + 1 - N_m, then a_k = -(1/k) sum s_i a_{k-i}
    std::vector<i64> s(static_cast<size_t>(g) + 1, 0);
    u64 qm = 1;
    for (int m = 1; m <= g; ++m) {
        qm *= q;
        s[static_cast<size_t>(m)] = static_cast<i64>(qm) + 1 - static_cast<i64>(counts[static_cast<size_t>(m - 1)]);
    }
    std::vector<i64> a(static_cast<size_t>(g) + 1, 0);
    a[0] = 1;
    for (int k = 1; k <= g; ++k) {
        i64 acc = 0;
        for (int i = 1; i <= k; ++i) acc += s[static_cast<size_t>(i)] * a[static_cast<size_t>(k - i)];
        if (acc % k != 0) throw std::runtime_error("Newton identity division failed (bad point counts)");
        a[static_cast<size_t>(k)] = -acc / k;
    }
    return a;
}

int lpoly_prank(const std::vector<i64>& a, u64 p) {
    int f = 0;
    for (size_t k = 1; k < a.size(); ++k) {
        i64 r = a[k] % static_cast<i64>(p);
        if (r != 0) f = static_cast<int>(k);
    }
    return f;
}

void check_zeta_envelope(const FieldSpec& s, int g) {
    if (g > 6) throw std::domain_error("zeta oracle limited to genus <= 6");
    u64 total = 0, qm = 1;
    u64 q = s.size();
    for (int m = 1; m <= g; ++m) {
        if (qm > kMaxZetaEnumeration / q) throw std::domain_error("zeta oracle envelope exceeded");
        qm *= q;
        total += qm;
        if (total > kMaxZetaEnumeration) throw std::domain_error("zeta oracle envelope exceeded");
    }
}

}  // namespace

CartierMatrix cartier_matrix(const HyperellipticCurve& c) {
    u64 p = c.spec->p();
    if (p < 3) throw std::invalid_argument("Cartier-Manin matrix requires p >= 3");
    OddModel om = odd_degree_model(c);
    const FieldSpec& K = *om.field;
    u64 e = (p - 1) / 2;
    u64 result_deg = e * static_cast<u64>(om.h.degree());
    if (result_deg > kMaxExpansionDegree)
        throw std::domain_error("f^((p-1)/2) expansion exceeds the supported envelope (g*p too large)");
    Poly s = om.h.pow(e);
    unsigned g = static_cast<unsigned>(c.genus);
    Matrix A(K, g, g);
    for (unsigned i = 1; i <= g; ++i)
        for (unsigned j = 1; j <= g; ++j) {
            i64 idx = static_cast<i64>(i) * static_cast<i64>(p) - static_cast<i64>(j);
            A.at(i - 1, j - 1) = s.coeff(static_cast<int>(idx));
        }
    return CartierMatrix{&K, g, std::move(A)};
}

// The Cartier operator is inverse-Frobenius-semilinear, so with the untwisted
// coefficient matrix A the g-fold iterate accumulates twists on the left:
// rank(A^(p^(g-1)) ... A^(p) A). The opposite order is wrong on rare curves
// over proper extension fields (e.g. y^2 = x^6+2x^5+x^4+x^3+2x^2+x+1 over
// F_3); the zeta oracle pins this convention down.
unsigned stable_rank(const CartierMatrix& cm) {
    Matrix M = cm.A;
    for (unsigned k = 1; k < cm.genus; ++k) M = cm.A.frobenius_twist(k) * M;
    return static_cast<unsigned>(M.rank());
}

namespace {

std::vector<unsigned> rank_chain_of(const CartierMatrix& cm) {
    std::vector<unsigned> chain;
    Matrix M = cm.A;
    chain.push_back(static_cast<unsigned>(M.rank()));
    for (unsigned k = 1; k < cm.genus; ++k) {
        M = cm.A.frobenius_twist(k) * M;
        chain.push_back(static_cast<unsigned>(M.rank()));
    }
    return chain;
}

}  // namespace

PRankResult zeta_prank(const HyperellipticCurve& c) {
    check_zeta_envelope(*c.spec, c.genus);
    std::vector<u64> counts;
    counts.reserve(static_cast<size_t>(c.genus));
    for (int m = 1; m <= c.genus; ++m) counts.push_back(count_points(c, static_cast<unsigned>(m)));
    std::vector<i64> a = lpoly_from_counts(counts, c.spec->size(), c.genus);
    PRankResult r;
    r.f = lpoly_prank(a, c.spec->p());
    r.genus = c.genus;
    r.method = "zeta-oracle";
    r.lpoly = std::move(a);
    return r;
}

PRankResult zeta_prank(const ArtinSchreierCover& c) {
    PRankResult r;
    r.genus = c.genus;
    r.method = "zeta-oracle";
    if (c.genus == 0) {
        r.f = 0;
        r.lpoly = {1};
        return r;
    }
    check_zeta_envelope(*c.spec, c.genus);
    std::vector<u64> counts;
    counts.reserve(static_cast<size_t>(c.genus));
    for (int m = 1; m <= c.genus; ++m) counts.push_back(count_points(c, static_cast<unsigned>(m)));
    std::vector<i64> a = lpoly_from_counts(counts, c.spec->size(), c.genus);
    r.f = lpoly_prank(a, c.spec->p());
    r.lpoly = std::move(a);
    return r;
}

PRankResult prank(const HyperellipticCurve& c, bool verify) {
    CartierMatrix cm = cartier_matrix(c);
    PRankResult r;
    r.f = static_cast<int>(stable_rank(cm));
    r.genus = c.genus;
    r.method = "cartier";
    r.rank_chain = rank_chain_of(cm);
    if (r.f < 0 || r.f > c.genus) throw std::runtime_error("p-rank out of range");
    if (verify) {
        PRankResult z = zeta_prank(c);
        if (z.f != r.f) throw std::runtime_error("Cartier-Manin p-rank disagrees with zeta oracle");
        r.verified = true;
        r.lpoly = std::move(z.lpoly);
    }
    return r;
}

PRankResult prank(const ArtinSchreierCover& c, bool verify) {
    PRankResult r;
    r.f = as_prank(c);
    r.genus = c.genus;
    r.method = "deuring-shafarevich";
    if (r.f < 0 || r.f > c.genus) throw std::runtime_error("p-rank out of range");
    if (verify) {
        PRankResult z = zeta_prank(c);
        if (z.f != r.f) throw std::runtime_error("Deuring-Shafarevich p-rank disagrees with zeta oracle");
        r.verified = true;
        r.lpoly = std::move(z.lpoly);
    }
    return r;
}

}  // namespace curvetk
