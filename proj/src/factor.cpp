#include "curvetk/factor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "curvetk/rng.hpp"

namespace curvetk {

namespace {

int poly_cmp(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        FieldElement ca = a.coeff(i), cb = b.coeff(i);
        int c = FieldElement::cmp(ca, cb);
        if (c) return c;
    }
    return 0;
}

// t -> t^p mod m over F_{p^n}: coefficientwise Frobenius then substitute
// x -> x^p. xp is x^p mod m, precomputed by the caller.
Poly pow_p_mod(const Poly& t, const Poly& xp, const Poly& m) {
    return t.coeff_frobenius(1).compose_mod(xp, m);
}

// a^((|K|-1)/2) mod m for odd p, without ever materializing |K| = p^N:
// a^((p-1)/2) raised to 1 + p + ... + p^(N-1) by a Frobenius chain.
Poly pow_half_order_mod(const Poly& a, const Poly& xp, const Poly& m) {
    const FieldSpec& K = a.field();
    u64 p = K.p();
    unsigned N = K.n();
    Poly b = a.powmod((p - 1) / 2, m);
    Poly t = b;
    for (unsigned i = 1; i < N; ++i) {
        t = pow_p_mod(t, xp, m);
        t = (t * b) % m;
    }
    return t;
}

// Absolute F_2-trace of a in K[x]/(m): sum of a^(2^i), i < n(K).
Poly trace_map_mod(const Poly& a, const Poly& m) {
    unsigned N = a.field().n();
    Poly t = a % m;
    Poly acc = t;
    for (unsigned i = 1; i < N; ++i) {
        t = (t * t) % m;
        acc = acc + t;
    }
    return acc;
}

// Splits a monic squarefree product of degree-d irreducibles into its
// irreducible factors (Cantor-Zassenhaus equal-degree splitting).
void equal_degree_split(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    const FieldSpec& K = f.field();
    if (f.degree() == 0) return;
    if (static_cast<unsigned>(f.degree()) == d) {
        out.push_back(f.monic());
        return;
    }
    u64 p = K.p();
    unsigned N = K.n() * d;  // splitting elements live in F_{p^(n*d)}
    Poly xp = Poly::x(K).powmod(p, f);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 400) throw std::runtime_error("equal-degree splitting failed to converge");
        // random element of K[x]/(f)
        unsigned deg = static_cast<unsigned>(f.degree());
        std::vector<FieldElement> cs;
        cs.reserve(deg);
        for (unsigned i = 0; i < deg; ++i) {
            std::vector<u32> v(K.n());
            for (unsigned j = 0; j < K.n(); ++j) v[j] = static_cast<u32>(rng.below(p));
            cs.emplace_back(K, std::move(v));
        }
        Poly a(K, std::move(cs));
        if (a.degree() < 1 && attempt < 8) continue;
        Poly h(K);
        if (p == 2) {
            // relative trace to F_2 over the factor field F_{2^(n*d)}
            Poly t = a % f;
            Poly acc = t;
            for (unsigned i = 1; i < N; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            h = acc;
        } else {
            // a^((p^(n*d)-1)/2) - 1, with the exponent chained over n*d
            Poly b = a.powmod((p - 1) / 2, f);
            Poly t = b;
            for (unsigned i = 1; i < N; ++i) {
                t = pow_p_mod(t, xp, f);
                t = (t * b) % f;
            }
            h = t - Poly::one(K);
        }
        if (h.is_zero()) continue;
        Poly g = Poly::gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
    }
}

// Isolates a single root of a monic polynomial that splits completely over
// its field: split with Cantor-Zassenhaus, always descending into one piece.
FieldElement one_root_of_split(Poly g, Rng& rng) {
    const FieldSpec& K = g.field();
    u64 p = K.p();
    unsigned N = K.n();
    g = g.monic();
    while (g.degree() > 1) {
        Poly xp = Poly::x(K).powmod(p, g);
        bool advanced = false;
        for (int attempt = 0; attempt < 400 && !advanced; ++attempt) {
            unsigned deg = static_cast<unsigned>(g.degree());
            std::vector<FieldElement> cs;
            cs.reserve(deg);
            for (unsigned i = 0; i < deg; ++i) {
                std::vector<u32> v(K.n());
                for (unsigned j = 0; j < K.n(); ++j) v[j] = static_cast<u32>(rng.below(p));
                cs.emplace_back(K, std::move(v));
            }
            Poly a(K, std::move(cs));
            Poly h(K);
            if (p == 2) {
                Poly t = a % g;
                Poly acc = t;
                for (unsigned i = 1; i < N; ++i) {
                    t = (t * t) % g;
                    acc = acc + t;
                }
                h = acc;
            } else {
                Poly b = a.powmod((p - 1) / 2, g);
                Poly t = b;
                for (unsigned i = 1; i < N; ++i) {
                    t = pow_p_mod(t, xp, g);
                    t = (t * b) % g;
                }
                h = t - Poly::one(K);
            }
            if (h.is_zero()) continue;
            Poly d = Poly::gcd(h, g);
            if (d.degree() > 0 && d.degree() < g.degree()) {
                Poly other = g / d;
                g = d.degree() <= other.degree() ? d : other;
                advanced = true;
            }
        }
        if (!advanced) throw std::runtime_error("root isolation failed to converge");
    }
    return -g.monic().coeff(0);
}

}  // namespace

std::vector<FieldElement> roots_of_lifted_irreducible(const Poly& lifted, unsigned base_n,
                                                      unsigned expect) {
    Rng rng(lifted.stable_hash() ^ 0xd6e8feb86659fd93ULL);
    FieldElement rho = one_root_of_split(lifted, rng);
    std::vector<FieldElement> roots{rho};
    roots.reserve(expect);
    FieldElement t = rho;
    for (unsigned i = 1; i < expect; ++i) {
        t = t.frobenius(static_cast<int>(base_n));
        roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());
    for (size_t i = 1; i < roots.size(); ++i)
        if (roots[i] == roots[i - 1]) throw std::runtime_error("Frobenius orbit collapsed: factor not irreducible");
    return roots;
}

std::vector<Poly> factor_squarefree(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorization of zero polynomial");
    const FieldSpec& K = f.field();
    std::vector<Poly> out;
    Poly rem = f.monic();
    if (rem.degree() == 0) return out;
    Rng rng(rem.stable_hash() ^ 0x5f3759df9e3779b9ULL);
    // distinct-degree stage
    Poly xp = Poly::x(K).powmod(K.p(), rem);
    Poly h = Poly::x(K) % rem;
    unsigned k = 0;
    std::vector<std::pair<Poly, unsigned>> classes;
    while (rem.degree() > 0 && 2 * (k + 1) <= static_cast<unsigned>(rem.degree())) {
        ++k;
        // h = h^q mod rem, one Frobenius per base-field power
        for (unsigned i = 0; i < K.n(); ++i) h = pow_p_mod(h, xp, rem);
        Poly g = Poly::gcd(h - Poly::x(K), rem);
        if (g.degree() > 0) {
            classes.emplace_back(g, k);
            rem = rem / g;
            if (rem.degree() > 0) {
                xp = Poly::x(K).powmod(K.p(), rem);
                h = h % rem;
            }
        }
    }
    if (rem.degree() > 0) classes.emplace_back(rem, static_cast<unsigned>(rem.degree()));
    for (auto& [g, d] : classes) {
        Rng r2(rng.next() ^ g.stable_hash());
        equal_degree_split(g, d, r2, out);
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return poly_cmp(a, b) < 0; });
    return out;
}

std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) {
    std::vector<std::pair<Poly, unsigned>> out;
    for (const auto& [piece, mult] : f.squarefree_decomposition()) {
        for (const Poly& irr : factor_squarefree(piece)) out.emplace_back(irr, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_cmp(a.first, b.first) < 0; });
    return out;
}

std::vector<FieldElement> roots_in_field(const Poly& f, bool assume_split) {
    if (f.is_zero()) throw std::domain_error("roots of zero polynomial");
    const FieldSpec& K = f.field();
    Poly g = f.monic();
    if (g.degree() > 1) {
        Poly sf = g.squarefree_part();
        g = sf;
    }
    if (!assume_split && g.degree() > 1) {
        // keep only the part splitting over K: gcd(x^|K| - x, g)
        Poly xp = Poly::x(K).powmod(K.p(), g);
        Poly h = Poly::x(K) % g;
        for (unsigned i = 0; i < K.n(); ++i) h = pow_p_mod(h, xp, g);
        g = Poly::gcd(h - Poly::x(K), g);
    }
    std::vector<FieldElement> roots;
    if (g.degree() >= 1) {
        std::vector<Poly> linear;
        Rng rng(g.stable_hash() ^ 0xa24baed4963ee407ULL);
        equal_degree_split(g, 1, rng, linear);
        roots.reserve(linear.size());
        for (const Poly& l : linear) roots.push_back(-l.coeff(0));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

unsigned splitting_degree(const Poly& f) {
    unsigned lcm = 1;
    for (const Poly& irr : factor_squarefree(f.squarefree_part())) {
        unsigned d = static_cast<unsigned>(irr.degree());
        lcm = static_cast<unsigned>(std::lcm(lcm, d));
    }
    return lcm;
}

SplittingData splitting_field(const Poly& f) {
    if (f.is_zero() || !f.squarefree()) throw std::invalid_argument("splitting field requires a squarefree polynomial");
    const FieldSpec& K = f.field();
    std::vector<Poly> factors = factor_squarefree(f);
    unsigned lcm = 1;
    for (const Poly& irr : factors) lcm = static_cast<unsigned>(std::lcm<unsigned>(lcm, static_cast<unsigned>(irr.degree())));
    u64 big_n = u64(K.n()) * lcm;
    if (big_n > kMaxExtensionDegree)
        throw std::domain_error("splitting field degree exceeds the supported envelope");
    const FieldSpec& L = FieldSpec::get(K.p(), static_cast<unsigned>(big_n));
    const Embedding& emb = K.embed_into(L);
    SplittingData out{&K, &L, &emb, {}};
    out.roots.reserve(static_cast<size_t>(f.degree()));
    for (const Poly& irr : factors) {
        Poly lifted = irr.lift(emb);
        unsigned k = static_cast<unsigned>(irr.degree());
        std::vector<FieldElement> rs = roots_of_lifted_irreducible(lifted, K.n(), k);
        Poly check = lifted;
        for (const FieldElement& r : rs)
            if (!check.eval(r).is_zero())
                throw std::runtime_error("orbit element is not a root");
        out.roots.insert(out.roots.end(), rs.begin(), rs.end());
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace curvetk
