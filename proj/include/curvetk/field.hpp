#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace curvetk {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

class FieldSpec;
class FieldElement;

// Tested envelope. Characteristic stays below 2^20 so coefficient products
// fit comfortably in 64 bits. Extension degree is capped at 64; fields that
// must be *enumerated* (square tables, point counts) are capped separately,
// since splitting fields used only for arithmetic routinely exceed 2^40.
inline constexpr u64 kMaxCharacteristic = u64(1) << 20;
inline constexpr unsigned kMaxExtensionDegree = 64;
inline constexpr u64 kMaxEnumerableField = u64(1) << 30;

bool is_prime_u64(u64 p);

// An embedding F_{p^n} -> F_{p^N} with n | N, realized by the image rho of
// the small field's generator. Chosen deterministically (lexicographically
// smallest root of the small modulus), so encodings reproduce across runs.
class Embedding {
  public:
    const FieldSpec* from;
    const FieldSpec* to;
    // rho_powers[i] = rho^i as a coefficient vector in the big field, i < n.
    std::vector<std::vector<u32>> rho_powers;

    void lift(const u32* small, u32* big) const;
    // Writes subfield coordinates of `big` if it lies in the image; returns
    // false otherwise.
    bool descend(const u32* big, u32* small) const;
    bool is_identity() const { return from == to; }

    FieldElement lift(const FieldElement& a) const;
    bool descend(const FieldElement& a, FieldElement& out) const;

  private:
    friend class FieldSpec;
    // Row-reduced solve data for descend: transform (N x N over F_p) and the
    // pivot column of each of the first n rows.
    std::vector<u32> solve_transform;
    std::vector<unsigned> pivot_rows;
};

// Immutable description of F_{p^n} = F_p[x]/(modulus). Instances are interned
// and live for the whole process, so elements may hold plain pointers.
// Arithmetic kernels operate on raw coefficient vectors of length n (values
// in [0,p)); FieldElement wraps them with value semantics. Lazy internal
// caches (Frobenius matrix, square table, trace vector, embeddings) are
// mutex-guarded; all public operations are safe to call concurrently.
class FieldSpec {
  public:
    u64 p() const { return p_; }
    unsigned n() const { return n_; }
    const std::vector<u32>& modulus() const { return modulus_; }

    // p^n as u64; throws std::domain_error when it does not fit.
    u64 size() const;
    bool size_fits_u64() const { return size_ != 0; }

    // Canonical field with the lexicographically smallest monic irreducible
    // modulus of degree n (tail coefficients enumerated as base-p digits).
    static const FieldSpec& get(u64 p, unsigned n);
    // Field with an explicit monic modulus (length n+1, low-to-high). The
    // modulus is verified irreducible. Instances are interned by value.
    static const FieldSpec& with_modulus(u64 p, const std::vector<i64>& modulus);

    bool same(const FieldSpec& o) const { return this == &o; }

    // ----- raw kernels; all spans have length n ---------------------------
    void add(const u32* a, const u32* b, u32* out) const;
    void sub(const u32* a, const u32* b, u32* out) const;
    void neg(const u32* a, u32* out) const;
    void mul(const u32* a, const u32* b, u32* out) const;
    void sqr(const u32* a, u32* out) const { mul(a, a, out); }
    void inv(const u32* a, u32* out) const;  // throws on zero
    void pow_u64(const u32* a, u64 e, u32* out) const;
    void pow_p(const u32* a, u32* out) const;            // a^p (Frobenius)
    void pow_pk(const u32* a, unsigned k, u32* out) const;  // a^(p^k)
    bool is_zero(const u32* a) const;
    bool eq(const u32* a, const u32* b) const;
    void set_zero(u32* out) const;
    void set_one(u32* out) const;
    void set_int(i64 v, u32* out) const;

    // Mixed-radix index of an element (sum c_i p^i); requires size_fits_u64.
    u64 index_of(const u32* a) const;
    void element_from_index(u64 idx, u32* out) const;

    // Quadratic-character table: bit q set iff the element with index q is a
    // nonzero square. Requires p^n <= kMaxEnumerableField. Built once, cached.
    const std::vector<u64>& square_table() const;
    bool is_square(const u32* a) const;  // nonzero squares only; a=0 -> false

    // trace_basis()[j] = Tr_{F_{p^n}/F_p}(x^j), as an integer mod p.
    const std::vector<u32>& trace_basis() const;
    u32 absolute_trace(const u32* a) const;

    // Embedding of this field into `big` (degree divisibility required).
    // Computed once per ordered pair and cached for the process lifetime.
    const Embedding& embed_into(const FieldSpec& big) const;

    // Matrix of the p-power Frobenius as an F_p-linear map, column-major:
    // column i holds the coordinates of (x^i)^p.
    const std::vector<u32>& frobenius_matrix() const;

    std::string describe() const;  // "F_9 = F_3[t]/(t^2+1)" style

  protected:
    FieldSpec(u64 p, unsigned n, std::vector<u32> modulus);

  private:
    FieldSpec(const FieldSpec&) = delete;

    u64 p_;
    unsigned n_;
    std::vector<u32> modulus_;  // length n+1, monic
    u64 size_;                  // 0 if p^n overflows u64
    std::vector<std::pair<unsigned, u32>> mod_sparse_;  // nonzero tail terms

    mutable std::mutex cache_mu_;
    mutable std::vector<u32> frob_matrix_;
    mutable std::vector<u64> square_table_;
    mutable std::vector<u32> trace_basis_;
    mutable std::map<const FieldSpec*, std::unique_ptr<Embedding>> embeddings_;

    void build_embedding(const FieldSpec& big, Embedding& e) const;
};

// A field element: coefficient vector bound to its field. Cross-field
// arithmetic throws std::invalid_argument; there are no implicit coercions.
class FieldElement {
  public:
    explicit FieldElement(const FieldSpec& s) : spec_(&s), c_(s.n(), 0) {}
    FieldElement(const FieldSpec& s, std::vector<u32> coeffs);

    static FieldElement from_int(const FieldSpec& s, i64 v);
    static FieldElement from_vector(const FieldSpec& s, const std::vector<i64>& v);
    static FieldElement generator(const FieldSpec& s);  // the class of x

    const FieldSpec& field() const { return *spec_; }
    const std::vector<u32>& coeffs() const { return c_; }
    u32* data() { return c_.data(); }
    const u32* data() const { return c_.data(); }

    bool is_zero() const { return spec_->is_zero(c_.data()); }
    bool is_one() const;
    u64 index() const { return spec_->index_of(c_.data()); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inverse() const;
    FieldElement pow(u64 e) const;
    FieldElement frobenius(int k = 1) const;  // a^(p^k), k mod n

    // Lexicographic order on coefficient vectors (c_0 first). Total order
    // used wherever a deterministic choice among elements is needed.
    static int cmp(const FieldElement& a, const FieldElement& b);
    bool operator<(const FieldElement& o) const { return cmp(*this, o) < 0; }

    std::string str() const;  // "5" for prime fields, "[a0,a1,...]" otherwise

  private:
    const FieldSpec* spec_;
    std::vector<u32> c_;

    void check_same(const FieldElement& o) const;
};

}  // namespace curvetk
