#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "curvetk/field.hpp"
#include "curvetk/rng.hpp"

namespace curvetk {

// Dense univariate polynomial over a FieldSpec, coefficients low-to-high,
// kept in canonical form (no stored leading zeros). The zero polynomial has
// degree -1.
class Poly {
  public:
    explicit Poly(const FieldSpec& s) : spec_(&s) {}
    Poly(const FieldSpec& s, std::vector<FieldElement> coeffs);

    static Poly zero(const FieldSpec& s) { return Poly(s); }
    static Poly one(const FieldSpec& s);
    static Poly x(const FieldSpec& s);
    static Poly constant(const FieldElement& c);
    static Poly monomial(const FieldElement& c, unsigned k);
    // coefficients given as integers, c[i] = coefficient of x^i
    static Poly from_ints(const FieldSpec& s, std::initializer_list<i64> c);
    static Poly from_ints(const FieldSpec& s, const std::vector<i64>& c);
    // raw F_p values used as constants of an arbitrary field of the same p
    static Poly from_u32_prime_coeffs(const FieldSpec& s, const std::vector<u32>& c);

    const FieldSpec& field() const { return *spec_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    FieldElement coeff(int k) const;  // zero beyond degree
    const FieldElement& lc() const;   // leading coefficient; poly must be nonzero
    const std::vector<FieldElement>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const FieldElement& c) const;

    // Euclidean division by a nonzero divisor; returns {quotient, remainder}.
    std::pair<Poly, Poly> divrem(const Poly& divisor) const;
    Poly operator%(const Poly& m) const { return divrem(m).second; }
    Poly operator/(const Poly& d) const { return divrem(d).first; }

    Poly monic() const;
    Poly derivative() const;
    FieldElement eval(const FieldElement& x) const;
    Poly pow(u64 e) const;                     // full product, no reduction
    Poly powmod(u64 e, const Poly& m) const;   // this^e mod m
    Poly compose_mod(const Poly& g, const Poly& m) const;  // this(g) mod m

    static Poly gcd(Poly a, Poly b);  // monic gcd

    bool squarefree() const;       // gcd(f, f') constant, with f' = 0 handling
    Poly squarefree_part() const;  // product of distinct irreducible factors
    // (factor, multiplicity) pairs with factors squarefree and pairwise
    // coprime; product of factor^multiplicity recovers monic(f).
    std::vector<std::pair<Poly, unsigned>> squarefree_decomposition() const;

    // coefficient-wise Frobenius a_i -> a_i^(p^k)
    Poly coeff_frobenius(int k = 1) const;
    // f(x + a)
    Poly taylor_shift(const FieldElement& a) const;
    // p-th root of a polynomial that is a p-th power (all exponents divisible
    // by p, coefficients mapped through the inverse Frobenius)
    Poly pth_root() const;

    // map coefficients through an embedding into a bigger field
    Poly lift(const Embedding& e) const;
    // descend coefficients through an embedding; throws if any coefficient
    // fails to lie in the subfield
    Poly descend(const Embedding& e) const;

    static Poly random_monic(const FieldSpec& s, unsigned degree, Rng& rng);

    // Text form "c_k*x^k + ... + c_0"; prime-field coefficients are plain
    // integers, extension coefficients are "[a0,a1,...]" vectors.
    static Poly parse(const FieldSpec& s, std::string_view text);
    std::string str() const;

    u64 stable_hash() const;  // content hash for deterministic seeding

  private:
    const FieldSpec* spec_;
    std::vector<FieldElement> c_;

    void normalize();
    void check_same(const Poly& o) const;
};

// Rational function num/den over one field; den monic, gcd(num, den) = 1.
struct RationalFunction {
    Poly num;
    Poly den;

    RationalFunction(Poly n, Poly d);
    static RationalFunction from_poly(Poly n);
    const FieldSpec& field() const { return num.field(); }
    bool is_polynomial() const { return den.degree() == 0; }
    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
};

}  // namespace curvetk
