#include "curvetk/field.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "curvetk/factor.hpp"
#include "curvetk/poly.hpp"

namespace curvetk {

bool is_prime_u64(u64 p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (u64 d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace {

// Dense univariate polynomials over F_p on raw u32 vectors, low-to-high.
// Only used for modulus bookkeeping (irreducibility tests, the canonical
// modulus search and the Frobenius matrix); everything else goes through
// Poly over a FieldSpec.

using FpPoly = std::vector<u32>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> buf(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) buf[i + j] += u64(a[i]) * b[j];
    }
    FpPoly out(buf.size());
    for (size_t i = 0; i < buf.size(); ++i) out[i] = static_cast<u32>(buf[i] % p);
    fp_trim(out);
    return out;
}

u64 fp_inv_int(u64 a, u64 p);

FpPoly fp_rem(FpPoly a, const FpPoly& m, u64 p) {
    fp_trim(a);
    int dm = fp_deg(m);
    u64 lci = m.back() == 1 ? 1 : fp_inv_int(m.back(), p);
    while (fp_deg(a) >= dm) {
        u64 c = (u64(a.back()) * lci) % p;
        int shift = fp_deg(a) - dm;
        if (c) {
            for (int j = 0; j <= dm; ++j) {
                u64 t = (u64(m[j]) * c) % p;
                u64 v = a[shift + j] + p - t;
                a[shift + j] = static_cast<u32>(v % p);
            }
        }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
    return fp_rem(fp_mul(a, b, p), m, p);
}

FpPoly fp_powmod_x(u64 e, const FpPoly& m, u64 p) {
    // x^e mod m by binary exponentiation.
    FpPoly result{1};
    FpPoly base{0, 1};
    base = fp_rem(base, m, p);
    while (e) {
        if (e & 1) result = fp_mulmod(result, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

FpPoly fp_compose_mod(const FpPoly& f, const FpPoly& g, const FpPoly& m, u64 p) {
    // f(g) mod m, Horner.
    FpPoly acc;
    for (size_t i = f.size(); i-- > 0;) {
        acc = fp_mulmod(acc, g, m, p);
        if (f[i]) {
            if (acc.empty()) acc.push_back(f[i]);
            else acc[0] = static_cast<u32>((acc[0] + f[i]) % p);
        }
        fp_trim(acc);
    }
    return acc;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

u64 fp_inv_int(u64 a, u64 p) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(p), newr = static_cast<i64>(a % p);
    while (newr != 0) {
        i64 q = r / newr;
        i64 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::domain_error("division by zero in F_p");
    if (t < 0) t += static_cast<i64>(p);
    return static_cast<u64>(t);
}

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Rabin's test: m (monic, degree n >= 1) irreducible over F_p iff
// x^(p^n) = x mod m and gcd(x^(p^(n/r)) - x, m) = 1 for all primes r | n.
bool fp_irreducible(const FpPoly& m, u64 p) {
    int n = fp_deg(m);
    if (n < 1) return false;
    if (n == 1) return true;
    if (m[0] == 0) return false;  // divisible by x
    // x^(p^k) mod m by iterated composition with x^p mod m (F_p coefficients
    // are Frobenius-fixed, so (x^(p^k))^p = x^(p^k) composed with x^p).
    FpPoly xp = fp_powmod_x(p, m, p);
    std::vector<FpPoly> frob_pows(static_cast<size_t>(n) + 1);
    frob_pows[1] = xp;
    for (int k = 2; k <= n; ++k) frob_pows[k] = fp_compose_mod(frob_pows[k - 1], xp, m, p);
    FpPoly x{0, 1};
    FpPoly top = frob_pows[n];
    fp_trim(top);
    if (top != x) return false;
    for (unsigned r : prime_divisors(static_cast<unsigned>(n))) {
        FpPoly d = frob_pows[n / r];
        // d - x
        if (d.size() < 2) d.resize(2, 0);
        d[1] = static_cast<u32>((d[1] + p - 1) % p);
        fp_trim(d);
        FpPoly g = fp_gcd(m, d, p);
        if (fp_deg(g) != 0) return false;
    }
    return true;
}

struct RegistryKey {
    u64 p;
    std::vector<u32> modulus;
    bool operator<(const RegistryKey& o) const {
        if (p != o.p) return p < o.p;
        return modulus < o.modulus;
    }
};

std::mutex g_registry_mu;
std::map<RegistryKey, std::unique_ptr<FieldSpec>>& registry() {
    static std::map<RegistryKey, std::unique_ptr<FieldSpec>> r;
    return r;
}
std::map<std::pair<u64, unsigned>, const FieldSpec*>& canonical_cache() {
    static std::map<std::pair<u64, unsigned>, const FieldSpec*> c;
    return c;
}

struct FieldSpecFactory : FieldSpec {
    FieldSpecFactory(u64 p, unsigned n, std::vector<u32> m) : FieldSpec(p, n, std::move(m)) {}
};

const FieldSpec& intern(u64 p, std::vector<u32> modulus) {
    unsigned n = static_cast<unsigned>(modulus.size()) - 1;
    std::lock_guard<std::mutex> lock(g_registry_mu);
    RegistryKey key{p, modulus};
    auto it = registry().find(key);
    if (it != registry().end()) return *it->second;
    auto spec = std::make_unique<FieldSpecFactory>(p, n, std::move(modulus));
    const FieldSpec& ref = *spec;
    registry().emplace(std::move(key), std::move(spec));
    return ref;
}

}  // namespace

FieldSpec::FieldSpec(u64 p, unsigned n, std::vector<u32> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    size_ = 1;
    for (unsigned i = 0; i < n_; ++i) {
        if (size_ > (~u64(0)) / p_) {
            size_ = 0;
            break;
        }
        size_ *= p_;
    }
    for (unsigned i = 0; i < n_; ++i)
        if (modulus_[i]) mod_sparse_.emplace_back(i, modulus_[i]);
}

u64 FieldSpec::size() const {
    if (!size_) throw std::domain_error("field size exceeds 64-bit range");
    return size_;
}

const FieldSpec& FieldSpec::get(u64 p, unsigned n) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
    if (p >= kMaxCharacteristic) throw std::invalid_argument("characteristic out of tested envelope (p < 2^20)");
    if (n == 0 || n > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range");
    {
        std::lock_guard<std::mutex> lock(g_registry_mu);
        auto it = canonical_cache().find({p, n});
        if (it != canonical_cache().end()) return *it->second;
    }
    std::vector<u32> modulus;
    if (n == 1) {
        modulus = {0, 1};
    } else {
        // Lexicographically smallest monic irreducible: enumerate tails as
        // base-p digit strings of v = 0, 1, 2, ...
        for (u64 v = 0;; ++v) {
            FpPoly cand(n + 1, 0);
            cand[n] = 1;
            u64 t = v;
            for (unsigned i = 0; i < n && t; ++i) {
                cand[i] = static_cast<u32>(t % p);
                t /= p;
            }
            if (t) throw std::runtime_error("no irreducible modulus found");  // unreachable
            if (fp_irreducible(cand, p)) {
                modulus = std::move(cand);
                break;
            }
        }
    }
    const FieldSpec& spec = intern(p, std::move(modulus));
    std::lock_guard<std::mutex> lock(g_registry_mu);
    canonical_cache().emplace(std::make_pair(p, n), &spec);
    return spec;
}

const FieldSpec& FieldSpec::with_modulus(u64 p, const std::vector<i64>& modulus) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
    if (p >= kMaxCharacteristic) throw std::invalid_argument("characteristic out of tested envelope (p < 2^20)");
    if (modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    unsigned n = static_cast<unsigned>(modulus.size()) - 1;
    if (n > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range");
    std::vector<u32> m(modulus.size());
    for (size_t i = 0; i < modulus.size(); ++i) {
        i64 v = modulus[i] % static_cast<i64>(p);
        if (v < 0) v += static_cast<i64>(p);
        m[i] = static_cast<u32>(v);
    }
    if (m.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (n > 1 && !fp_irreducible(m, p)) throw std::invalid_argument("modulus is not irreducible");
    return intern(p, std::move(m));
}

// ----- kernels --------------------------------------------------------------

void FieldSpec::add(const u32* a, const u32* b, u32* out) const {
    for (unsigned i = 0; i < n_; ++i) {
        u64 v = u64(a[i]) + b[i];
        out[i] = static_cast<u32>(v >= p_ ? v - p_ : v);
    }
}

void FieldSpec::sub(const u32* a, const u32* b, u32* out) const {
    for (unsigned i = 0; i < n_; ++i) {
        u64 v = u64(a[i]) + p_ - b[i];
        out[i] = static_cast<u32>(v >= p_ ? v - p_ : v);
    }
}

void FieldSpec::neg(const u32* a, u32* out) const {
    for (unsigned i = 0; i < n_; ++i) out[i] = a[i] ? static_cast<u32>(p_ - a[i]) : 0;
}

void FieldSpec::mul(const u32* a, const u32* b, u32* out) const {
    if (n_ == 1) {
        out[0] = static_cast<u32>((u64(a[0]) * b[0]) % p_);
        return;
    }
    thread_local std::vector<u64> buf;
    buf.assign(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (!a[i]) continue;
        u64 ai = a[i];
        for (unsigned j = 0; j < n_; ++j) buf[i + j] += ai * b[j];
    }
    // reduce by the (monic, usually sparse) modulus, top down
    for (unsigned k = 2 * n_ - 2; k >= n_; --k) {
        u64 c = buf[k] % p_;
        if (c) {
            u64 t = p_ - c;
            for (const auto& [j, mj] : mod_sparse_) buf[k - n_ + j] += t * mj;
        }
        if (k == n_) break;
    }
    for (unsigned i = 0; i < n_; ++i) out[i] = static_cast<u32>(buf[i] % p_);
}

bool FieldSpec::is_zero(const u32* a) const {
    for (unsigned i = 0; i < n_; ++i)
        if (a[i]) return false;
    return true;
}

bool FieldSpec::eq(const u32* a, const u32* b) const {
    return std::memcmp(a, b, n_ * sizeof(u32)) == 0;
}

void FieldSpec::set_zero(u32* out) const { std::memset(out, 0, n_ * sizeof(u32)); }

void FieldSpec::set_one(u32* out) const {
    set_zero(out);
    out[0] = 1;
}

void FieldSpec::set_int(i64 v, u32* out) const {
    set_zero(out);
    i64 r = v % static_cast<i64>(p_);
    if (r < 0) r += static_cast<i64>(p_);
    out[0] = static_cast<u32>(r);
}

void FieldSpec::inv(const u32* a, u32* out) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (n_ == 1) {
        out[0] = static_cast<u32>(fp_inv_int(a[0], p_));
        return;
    }
    // extended Euclid between the element (as an F_p-polynomial) and the modulus
    FpPoly r0(modulus_.begin(), modulus_.end());
    FpPoly r1(a, a + n_);
    fp_trim(r1);
    FpPoly s0{}, s1{1};
    while (fp_deg(r1) > 0) {
        // division step r0 = q*r1 + r2
        FpPoly q;
        FpPoly rem = r0;
        int d1 = fp_deg(r1);
        u64 lc_inv = fp_inv_int(r1.back(), p_);
        q.assign(std::max(0, fp_deg(rem) - d1) + 1, 0);
        while (fp_deg(rem) >= d1) {
            int shift = fp_deg(rem) - d1;
            u64 c = (u64(rem.back()) * lc_inv) % p_;
            q[shift] = static_cast<u32>((q[shift] + c) % p_);
            for (int j = 0; j <= d1; ++j) {
                u64 t = (u64(r1[j]) * c) % p_;
                rem[shift + j] = static_cast<u32>((rem[shift + j] + p_ - t) % p_);
            }
            fp_trim(rem);
        }
        fp_trim(q);
        FpPoly s2 = s0;
        FpPoly qs = fp_mul(q, s1, p_);
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = static_cast<u32>((s2[i] + p_ - qs[i]) % p_);
        fp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::domain_error("inverse of zero divisor");  // cannot happen: modulus irreducible
    u64 c = fp_inv_int(r1[0], p_);
    set_zero(out);
    for (size_t i = 0; i < s1.size(); ++i) out[i] = static_cast<u32>((u64(s1[i]) * c) % p_);
}

void FieldSpec::pow_u64(const u32* a, u64 e, u32* out) const {
    std::vector<u32> base(a, a + n_), acc(n_, 0);
    acc[0] = 1;
    while (e) {
        if (e & 1) mul(acc.data(), base.data(), acc.data());
        e >>= 1;
        if (e) mul(base.data(), base.data(), base.data());
    }
    std::memcpy(out, acc.data(), n_ * sizeof(u32));
}

const std::vector<u32>& FieldSpec::frobenius_matrix() const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (frob_matrix_.empty()) {
        // column i = coordinates of x^(p*i) mod modulus
        std::vector<u32> m(static_cast<size_t>(n_) * n_, 0);
        FpPoly xp = fp_powmod_x(p_, FpPoly(modulus_.begin(), modulus_.end()), p_);
        FpPoly col{1};
        for (unsigned i = 0; i < n_; ++i) {
            for (size_t j = 0; j < col.size(); ++j) m[static_cast<size_t>(i) * n_ + j] = col[j];
            if (i + 1 < n_) col = fp_mulmod(col, xp, FpPoly(modulus_.begin(), modulus_.end()), p_);
        }
        frob_matrix_ = std::move(m);
    }
    return frob_matrix_;
}

void FieldSpec::pow_p(const u32* a, u32* out) const {
    if (n_ == 1) {
        out[0] = a[0];
        return;
    }
    const std::vector<u32>& m = frobenius_matrix();
    thread_local std::vector<u64> acc;
    acc.assign(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (!a[i]) continue;
        u64 ai = a[i];
        const u32* col = m.data() + static_cast<size_t>(i) * n_;
        for (unsigned j = 0; j < n_; ++j) acc[j] += ai * col[j];
    }
    for (unsigned j = 0; j < n_; ++j) out[j] = static_cast<u32>(acc[j] % p_);
}

void FieldSpec::pow_pk(const u32* a, unsigned k, u32* out) const {
    k %= n_;
    std::vector<u32> t(a, a + n_);
    for (unsigned i = 0; i < k; ++i) pow_p(t.data(), t.data());
    std::memcpy(out, t.data(), n_ * sizeof(u32));
}

u64 FieldSpec::index_of(const u32* a) const {
    u64 q = size();  // throws when too large
    (void)q;
    u64 idx = 0;
    for (unsigned i = n_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

void FieldSpec::element_from_index(u64 idx, u32* out) const {
    for (unsigned i = 0; i < n_; ++i) {
        out[i] = static_cast<u32>(idx % p_);
        idx /= p_;
    }
}

const std::vector<u64>& FieldSpec::square_table() const {
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        if (!square_table_.empty()) return square_table_;
    }
    u64 q = size();
    if (q > kMaxEnumerableField) throw std::domain_error("field too large to enumerate (square table)");
    std::vector<u64> table((q + 63) / 64, 0);
    std::vector<u32> el(n_, 0), sq(n_);
    for (u64 idx = 1; idx < q; ++idx) {
        // odometer increment
        for (unsigned i = 0; i < n_; ++i) {
            if (++el[i] < p_) break;
            el[i] = 0;
        }
        mul(el.data(), el.data(), sq.data());
        u64 si = 0;
        for (unsigned i = n_; i-- > 0;) si = si * p_ + sq[i];
        table[si >> 6] |= u64(1) << (si & 63);
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (square_table_.empty()) square_table_ = std::move(table);
    return square_table_;
}

bool FieldSpec::is_square(const u32* a) const {
    if (is_zero(a)) return false;
    const std::vector<u64>& t = square_table();
    u64 idx = index_of(a);
    return (t[idx >> 6] >> (idx & 63)) & 1;
}

const std::vector<u32>& FieldSpec::trace_basis() const {
    const std::vector<u32>& fm = frobenius_matrix();  // built outside our lock
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (trace_basis_.empty()) {
        auto apply_frob = [&](const u32* a, u32* out) {
            std::vector<u64> s(n_, 0);
            for (unsigned i = 0; i < n_; ++i) {
                if (!a[i]) continue;
                const u32* col = fm.data() + static_cast<size_t>(i) * n_;
                for (unsigned j = 0; j < n_; ++j) s[j] += u64(a[i]) * col[j];
            }
            for (unsigned j = 0; j < n_; ++j) out[j] = static_cast<u32>(s[j] % p_);
        };
        std::vector<u32> tb(n_, 0);
        std::vector<u32> t(n_), t2(n_), acc(n_);
        for (unsigned j = 0; j < n_; ++j) {
            std::fill(t.begin(), t.end(), 0);
            t[j] = 1;
            acc = t;
            for (unsigned k = 1; k < n_; ++k) {
                apply_frob(t.data(), t2.data());
                t = t2;
                for (unsigned i = 0; i < n_; ++i) {
                    u64 v = u64(acc[i]) + t[i];
                    acc[i] = static_cast<u32>(v >= p_ ? v - p_ : v);
                }
            }
            // Tr(x^j) lies in the prime field, so acc is a constant.
            tb[j] = acc[0];
        }
        trace_basis_ = std::move(tb);
    }
    return trace_basis_;
}

u32 FieldSpec::absolute_trace(const u32* a) const {
    const std::vector<u32>& tb = trace_basis();
    u64 acc = 0;
    for (unsigned i = 0; i < n_; ++i) acc += u64(a[i]) * tb[i];
    return static_cast<u32>(acc % p_);
}

const Embedding& FieldSpec::embed_into(const FieldSpec& big) const {
    if (big.p_ != p_) throw std::invalid_argument("embedding requires equal characteristic");
    if (big.n_ % n_ != 0) throw std::invalid_argument("no embedding: degree does not divide");
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = embeddings_.find(&big);
        if (it != embeddings_.end()) return *it->second;
    }
    auto e = std::make_unique<Embedding>();
    build_embedding(big, *e);
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto [it, inserted] = embeddings_.emplace(&big, std::move(e));
    (void)inserted;
    return *it->second;
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    if (n_ == 1) {
        os << "F_" << p_;
    } else {
        os << "F_{" << p_ << "^" << n_ << "} = F_" << p_ << "[t]/(";
        bool first = true;
        for (unsigned i = n_ + 1; i-- > 0;) {
            if (i > n_ || !modulus_[i]) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || modulus_[i] != 1) os << modulus_[i];
            if (i > 0) {
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

// ----- FieldElement ---------------------------------------------------------

FieldElement::FieldElement(const FieldSpec& s, std::vector<u32> coeffs) : spec_(&s), c_(std::move(coeffs)) {
    if (c_.size() != s.n()) throw std::invalid_argument("coefficient vector has wrong length");
    for (u32 v : c_)
        if (v >= s.p()) throw std::invalid_argument("coefficient out of range");
}

FieldElement FieldElement::from_int(const FieldSpec& s, i64 v) {
    FieldElement e(s);
    s.set_int(v, e.c_.data());
    return e;
}

FieldElement FieldElement::from_vector(const FieldSpec& s, const std::vector<i64>& v) {
    if (v.size() > s.n()) throw std::invalid_argument("vector longer than extension degree");
    FieldElement e(s);
    for (size_t i = 0; i < v.size(); ++i) {
        i64 r = v[i] % static_cast<i64>(s.p());
        if (r < 0) r += static_cast<i64>(s.p());
        e.c_[i] = static_cast<u32>(r);
    }
    return e;
}

FieldElement FieldElement::generator(const FieldSpec& s) {
    if (s.n() == 1) throw std::invalid_argument("prime field has no extension generator");
    FieldElement e(s);
    e.c_[1] = 1;
    return e;
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

void FieldElement::check_same(const FieldElement& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("elements of different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    FieldElement r(*spec_);
    spec_->add(data(), o.data(), r.data());
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    FieldElement r(*spec_);
    spec_->sub(data(), o.data(), r.data());
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r(*spec_);
    spec_->neg(data(), r.data());
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    FieldElement r(*spec_);
    spec_->mul(data(), o.data(), r.data());
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same(o);
    FieldElement r(*spec_);
    spec_->inv(o.data(), r.data());
    spec_->mul(data(), r.data(), r.data());
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    spec_->add(data(), o.data(), data());
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    spec_->sub(data(), o.data(), data());
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    spec_->mul(data(), o.data(), data());
    return *this;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (spec_ != o.spec_) return false;
    return c_ == o.c_;
}

FieldElement FieldElement::inverse() const {
    FieldElement r(*spec_);
    spec_->inv(data(), r.data());
    return r;
}

FieldElement FieldElement::pow(u64 e) const {
    FieldElement r(*spec_);
    spec_->pow_u64(data(), e, r.data());
    return r;
}

FieldElement FieldElement::frobenius(int k) const {
    int n = static_cast<int>(spec_->n());
    int kk = ((k % n) + n) % n;
    FieldElement r(*spec_);
    spec_->pow_pk(data(), static_cast<unsigned>(kk), r.data());
    return r;
}

int FieldElement::cmp(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    if (spec_->n() == 1) {
        os << c_[0];
    } else {
        os << "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << c_[i];
        }
        os << "]";
    }
    return os.str();
}

// ----- Embedding ------------------------------------------------------------

void Embedding::lift(const u32* small, u32* big) const {
    unsigned n = from->n(), N = to->n();
    thread_local std::vector<u64> acc;
    acc.assign(N, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (!small[i]) continue;
        u64 si = small[i];
        const std::vector<u32>& rp = rho_powers[i];
        for (unsigned j = 0; j < N; ++j) acc[j] += si * rp[j];
    }
    u64 p = to->p();
    for (unsigned j = 0; j < N; ++j) big[j] = static_cast<u32>(acc[j] % p);
}

bool Embedding::descend(const u32* big, u32* small) const {
    unsigned n = from->n(), N = to->n();
    u64 p = to->p();
    thread_local std::vector<u64> y;
    y.assign(N, 0);
    for (unsigned r = 0; r < N; ++r) {
        u64 acc = 0;
        const u32* row = solve_transform.data() + static_cast<size_t>(r) * N;
        for (unsigned c = 0; c < N; ++c) acc += u64(row[c]) * big[c];
        y[r] = acc % p;
    }
    for (unsigned r = n; r < N; ++r)
        if (y[r]) return false;
    for (unsigned i = 0; i < n; ++i) small[i] = static_cast<u32>(y[i]);
    return true;
}

FieldElement Embedding::lift(const FieldElement& a) const {
    if (&a.field() != from) throw std::invalid_argument("embedding applied to wrong field");
    FieldElement r(*to);
    lift(a.data(), r.data());
    return r;
}

bool Embedding::descend(const FieldElement& a, FieldElement& out) const {
    if (&a.field() != to) throw std::invalid_argument("descend applied to wrong field");
    FieldElement r(*from);
    if (!descend(a.data(), r.data())) return false;
    out = r;
    return true;
}

void FieldSpec::build_embedding(const FieldSpec& big, Embedding& e) const {
    e.from = this;
    e.to = &big;
    unsigned n = n_, N = big.n_;
    if (this == &big) {
        e.rho_powers.assign(n, std::vector<u32>(N, 0));
        for (unsigned i = 0; i < n; ++i) e.rho_powers[i][i] = 1;
    } else {
        // rho = lexicographically smallest root of our modulus in `big`
        Poly mod_poly = Poly::from_u32_prime_coeffs(big, modulus_);
        std::vector<FieldElement> roots = roots_of_lifted_irreducible(mod_poly, 1, n_);
        if (roots.size() != n) throw std::runtime_error("embedding root count mismatch");
        std::sort(roots.begin(), roots.end());
        const FieldElement& rho = roots.front();
        e.rho_powers.clear();
        e.rho_powers.reserve(n);
        FieldElement pw = FieldElement::from_int(big, 1);
        for (unsigned i = 0; i < n; ++i) {
            e.rho_powers.push_back(pw.coeffs());
            if (i + 1 < n) pw = pw * rho;
        }
    }
    // Solve data: row-reduce [A | I] where A (N x n) has column j = rho^j.
    u64 p = p_;
    std::vector<std::vector<u64>> a(N, std::vector<u64>(n, 0));
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < N; ++i) a[i][j] = e.rho_powers[j][i];
    std::vector<std::vector<u64>> t(N, std::vector<u64>(N, 0));
    for (unsigned i = 0; i < N; ++i) t[i][i] = 1;
    unsigned row = 0;
    for (unsigned col = 0; col < n && row < N; ++col) {
        unsigned piv = row;
        while (piv < N && a[piv][col] == 0) ++piv;
        if (piv == N) throw std::runtime_error("embedding basis not independent");
        std::swap(a[piv], a[row]);
        std::swap(t[piv], t[row]);
        u64 inv = fp_inv_int(a[row][col], p);
        for (unsigned c = 0; c < n; ++c) a[row][c] = (a[row][c] * inv) % p;
        for (unsigned c = 0; c < N; ++c) t[row][c] = (t[row][c] * inv) % p;
        for (unsigned r = 0; r < N; ++r) {
            if (r == row || a[r][col] == 0) continue;
            u64 f = a[r][col];
            for (unsigned c = 0; c < n; ++c) a[r][c] = (a[r][c] + (p - f) * a[row][c]) % p;
            for (unsigned c = 0; c < N; ++c) t[r][c] = (t[r][c] + (p - f) * t[row][c]) % p;
        }
        ++row;
    }
    e.solve_transform.assign(static_cast<size_t>(N) * N, 0);
    for (unsigned r = 0; r < N; ++r)
        for (unsigned c = 0; c < N; ++c)
            e.solve_transform[static_cast<size_t>(r) * N + c] = static_cast<u32>(t[r][c]);
    e.pivot_rows.clear();
}

}  // namespace curvetk
