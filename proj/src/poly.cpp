#include "curvetk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace curvetk {

Poly::Poly(const FieldSpec& s, std::vector<FieldElement> coeffs) : spec_(&s), c_(std::move(coeffs)) {
    for (const FieldElement& e : c_)
        if (&e.field() != spec_) throw std::invalid_argument("coefficient from wrong field");
    normalize();
}

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("polynomials over different fields");
}

Poly Poly::one(const FieldSpec& s) { return constant(FieldElement::from_int(s, 1)); }

Poly Poly::x(const FieldSpec& s) {
    std::vector<FieldElement> c{FieldElement(s), FieldElement::from_int(s, 1)};
    return Poly(s, std::move(c));
}

Poly Poly::constant(const FieldElement& c) {
    Poly p(c.field());
    if (!c.is_zero()) p.c_.push_back(c);
    return p;
}

Poly Poly::monomial(const FieldElement& c, unsigned k) {
    Poly p(c.field());
    if (c.is_zero()) return p;
    p.c_.assign(k, FieldElement(c.field()));
    p.c_.push_back(c);
    return p;
}

Poly Poly::from_ints(const FieldSpec& s, std::initializer_list<i64> c) {
    return from_ints(s, std::vector<i64>(c));
}

Poly Poly::from_ints(const FieldSpec& s, const std::vector<i64>& c) {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (i64 x : c) v.push_back(FieldElement::from_int(s, x));
    return Poly(s, std::move(v));
}

Poly Poly::from_u32_prime_coeffs(const FieldSpec& s, const std::vector<u32>& c) {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (u32 x : c) v.push_back(FieldElement::from_int(s, static_cast<i64>(x)));
    return Poly(s, std::move(v));
}

FieldElement Poly::coeff(int k) const {
    if (k < 0 || k > degree()) return FieldElement(*spec_);
    return c_[static_cast<size_t>(k)];
}

const FieldElement& Poly::lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

bool Poly::operator==(const Poly& o) const {
    if (spec_ != o.spec_ || c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

Poly Poly::operator+(const Poly& o) const {
    check_same(o);
    Poly r(*spec_);
    size_t m = std::max(c_.size(), o.c_.size());
    r.c_.reserve(m);
    for (size_t i = 0; i < m; ++i) r.c_.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_same(o);
    Poly r(*spec_);
    size_t m = std::max(c_.size(), o.c_.size());
    r.c_.reserve(m);
    for (size_t i = 0; i < m; ++i) r.c_.push_back(coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i)));
    r.normalize();
    return r;
}

Poly Poly::operator-() const {
    Poly r(*spec_);
    r.c_.reserve(c_.size());
    for (const FieldElement& e : c_) r.c_.push_back(-e);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same(o);
    if (is_zero() || o.is_zero()) return Poly(*spec_);
    const FieldSpec& K = *spec_;
    unsigned n = K.n();
    size_t rd = c_.size() + o.c_.size() - 1;
    // accumulate raw products to avoid quadratic temporary churn
    std::vector<u32> tmp(n);
    std::vector<FieldElement> out(rd, FieldElement(K));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            K.mul(c_[i].data(), o.c_[j].data(), tmp.data());
            K.add(out[i + j].data(), tmp.data(), out[i + j].data());
        }
    }
    return Poly(K, std::move(out));
}

Poly Poly::scaled(const FieldElement& s) const {
    if (s.is_zero()) return Poly(*spec_);
    Poly r(*spec_);
    r.c_.reserve(c_.size());
    for (const FieldElement& e : c_) r.c_.push_back(e * s);
    r.normalize();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& divisor) const {
    check_same(divisor);
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q(*spec_), r = *this;
    int dd = divisor.degree();
    if (r.degree() < dd) return {q, r};
    FieldElement lci = divisor.lc().inverse();
    q.c_.assign(static_cast<size_t>(r.degree() - dd) + 1, FieldElement(*spec_));
    while (r.degree() >= dd) {
        int shift = r.degree() - dd;
        FieldElement c = r.lc() * lci;
        q.c_[static_cast<size_t>(shift)] = c;
        for (int j = 0; j <= dd; ++j) {
            size_t idx = static_cast<size_t>(shift + j);
            r.c_[idx] -= c * divisor.c_[static_cast<size_t>(j)];
        }
        r.normalize();
        if (r.is_zero()) break;
    }
    q.normalize();
    return {q, r};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    if (lc().is_one()) return *this;
    return scaled(lc().inverse());
}

Poly Poly::derivative() const {
    Poly r(*spec_);
    if (degree() < 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FieldElement::from_int(*spec_, static_cast<i64>(i)));
    r.normalize();
    return r;
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement acc(*spec_);
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

Poly Poly::pow(u64 e) const {
    Poly result = one(*spec_);
    Poly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::powmod(u64 e, const Poly& m) const {
    check_same(m);
    if (m.is_zero()) throw std::domain_error("zero modulus");
    Poly result = one(*spec_) % m;
    Poly base = *this % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

Poly Poly::compose_mod(const Poly& g, const Poly& m) const {
    check_same(g);
    check_same(m);
    Poly acc(*spec_);
    for (size_t i = c_.size(); i-- > 0;) {
        acc = (acc * g) % m;
        acc = acc + constant(c_[i]);
    }
    return acc;
}

Poly Poly::gcd(Poly a, Poly b) {
    a.check_same(b);
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool Poly::squarefree() const {
    if (is_zero()) throw std::domain_error("squarefree test on zero polynomial");
    if (degree() == 0) return true;
    Poly d = derivative();
    if (d.is_zero()) return false;  // p-th power
    return gcd(*this, d).degree() == 0;
}

Poly Poly::squarefree_part() const {
    Poly acc = one(*spec_);
    for (const auto& [f, mult] : squarefree_decomposition()) acc = acc * f;
    return acc;
}

std::vector<std::pair<Poly, unsigned>> Poly::squarefree_decomposition() const {
    if (is_zero()) throw std::domain_error("decomposition of zero polynomial");
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = monic();
    if (f.degree() == 0) return out;
    u64 p = spec_->p();
    // char-p squarefree decomposition: peel tame multiplicities, recurse on
    // the p-th power part.
    Poly d = f.derivative();
    if (d.is_zero()) {
        Poly r = f.pth_root();
        for (auto& [g, m] : r.squarefree_decomposition()) out.emplace_back(g, m * static_cast<unsigned>(p));
        return out;
    }
    Poly a = gcd(f, d);
    Poly w = f / a;  // product of factors with multiplicity not divisible by p
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, a);
        Poly piece = w / y;
        if (piece.degree() > 0) out.emplace_back(piece, i);
        w = y;
        a = a / y;
        ++i;
    }
    if (a.degree() > 0) {
        // remaining part is a p-th power
        Poly r = a.pth_root();
        for (auto& [g, m] : r.squarefree_decomposition()) out.emplace_back(g, m * static_cast<unsigned>(p));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    return out;
}

Poly Poly::coeff_frobenius(int k) const {
    Poly r(*spec_);
    r.c_.reserve(c_.size());
    for (const FieldElement& e : c_) r.c_.push_back(e.frobenius(k));
    return r;
}

Poly Poly::taylor_shift(const FieldElement& a) const {
    // f(x + a) by Horner on shifted variable
    Poly acc(*spec_);
    Poly lin(*spec_);
    lin.c_ = {a, FieldElement::from_int(*spec_, 1)};
    if (a.is_zero()) return *this;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * lin;
        acc = acc + constant(c_[i]);
    }
    return acc;
}

Poly Poly::pth_root() const {
    u64 p = spec_->p();
    Poly r(*spec_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i % p == 0) {
            // c^(1/p) = c^(p^(n-1))
            r.c_.push_back(c_[i].frobenius(static_cast<int>(spec_->n()) - 1));
        } else if (!c_[i].is_zero()) {
            throw std::domain_error("polynomial is not a p-th power");
        }
    }
    r.normalize();
    return r;
}

Poly Poly::lift(const Embedding& e) const {
    if (&field() != e.from) throw std::invalid_argument("lift from wrong field");
    if (e.is_identity()) return *this;
    Poly r(*e.to);
    r.c_.reserve(c_.size());
    for (const FieldElement& x : c_) r.c_.push_back(e.lift(x));
    r.normalize();
    return r;
}

Poly Poly::descend(const Embedding& e) const {
    if (&field() != e.to) throw std::invalid_argument("descend from wrong field");
    if (e.is_identity()) return *this;
    Poly r(*e.from);
    r.c_.reserve(c_.size());
    for (const FieldElement& x : c_) {
        FieldElement y(*e.from);
        if (!e.descend(x, y)) throw std::domain_error("coefficient not in subfield");
        r.c_.push_back(y);
    }
    r.normalize();
    return r;
}

Poly Poly::random_monic(const FieldSpec& s, unsigned degree, Rng& rng) {
    std::vector<FieldElement> c;
    c.reserve(degree + 1);
    unsigned n = s.n();
    u64 p = s.p();
    for (unsigned i = 0; i < degree; ++i) {
        std::vector<u32> v(n);
        for (unsigned j = 0; j < n; ++j) v[j] = static_cast<u32>(rng.below(p));
        c.emplace_back(s, std::move(v));
    }
    c.push_back(FieldElement::from_int(s, 1));
    return Poly(s, std::move(c));
}

// ----- text form -------------------------------------------------------------

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

bool parse_int(std::string_view& s, i64& out) {
    skip_ws(s);
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) return false;
    i64 v = 0;
    for (size_t k = start; k < i; ++k) v = v * 10 + (s[k] - '0');
    out = neg ? -v : v;
    s.remove_prefix(i);
    return true;
}

}  // namespace

Poly Poly::parse(const FieldSpec& s, std::string_view text) {
    // terms separated by +/-; each term: coefficient, x power, or both joined
    // by '*'. Coefficients: integer, or "[a0,a1,...]" vector over F_p.
    std::vector<FieldElement> coeffs;
    const FieldElement one_el = FieldElement::from_int(s, 1);
    auto add_term = [&](const FieldElement& c, unsigned k) {
        if (coeffs.size() <= k) coeffs.resize(k + 1, FieldElement(s));
        coeffs[k] += c;
    };
    skip_ws(text);
    if (text.empty()) throw std::invalid_argument("empty polynomial text");
    bool negate = false;
    bool expect_term = true;
    while (true) {
        skip_ws(text);
        if (text.empty()) {
            if (expect_term) throw std::invalid_argument("dangling sign in polynomial");
            break;
        }
        if (!expect_term) {
            if (text.front() == '+' || text.front() == '-') {
                negate = text.front() == '-';
                text.remove_prefix(1);
                expect_term = true;
                continue;
            }
            throw std::invalid_argument("unexpected character in polynomial: " + std::string(text));
        }
        // leading sign inside a term (e.g. first term "-x^2")
        while (text.front() == '+' || text.front() == '-') {
            if (text.front() == '-') negate = !negate;
            text.remove_prefix(1);
            skip_ws(text);
            if (text.empty()) throw std::invalid_argument("dangling sign in polynomial");
        }
        FieldElement c = one_el;
        bool have_coeff = false;
        if (text.front() == '[') {
            text.remove_prefix(1);
            std::vector<i64> v;
            for (;;) {
                i64 val;
                if (!parse_int(text, val)) throw std::invalid_argument("bad coefficient vector");
                v.push_back(val);
                skip_ws(text);
                if (!text.empty() && text.front() == ',') {
                    text.remove_prefix(1);
                    continue;
                }
                break;
            }
            if (text.empty() || text.front() != ']') throw std::invalid_argument("unterminated coefficient vector");
            text.remove_prefix(1);
            c = FieldElement::from_vector(s, v);
            have_coeff = true;
        } else if (std::isdigit(static_cast<unsigned char>(text.front()))) {
            i64 val;
            parse_int(text, val);
            c = FieldElement::from_int(s, val);
            have_coeff = true;
        }
        skip_ws(text);
        unsigned k = 0;
        bool have_x = false;
        if (have_coeff && !text.empty() && text.front() == '*') {
            text.remove_prefix(1);
            skip_ws(text);
            if (text.empty() || text.front() != 'x') throw std::invalid_argument("expected x after '*'");
        }
        if (!text.empty() && text.front() == 'x') {
            text.remove_prefix(1);
            have_x = true;
            k = 1;
            skip_ws(text);
            if (!text.empty() && text.front() == '^') {
                text.remove_prefix(1);
                i64 e;
                if (!parse_int(text, e) || e < 0) throw std::invalid_argument("bad exponent");
                k = static_cast<unsigned>(e);
            }
        }
        if (!have_coeff && !have_x) throw std::invalid_argument("malformed term in polynomial");
        if (negate) c = -c;
        add_term(c, k);
        negate = false;
        expect_term = false;
    }
    return Poly(s, std::move(coeffs));
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    bool prime = spec_->n() == 1;
    for (int k = degree(); k >= 0; --k) {
        const FieldElement c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << "+";
        first = false;
        bool unit = c.is_one();
        if (k == 0) {
            os << c.str();
        } else {
            if (!unit) {
                os << c.str() << "*";
            } else if (!prime) {
                // keep vectors explicit for round-tripping
            }
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

u64 Poly::stable_hash() const {
    u64 h = hash_bytes(&spec_, 0, 0x9e3779b97f4a7c15ULL);
    h ^= spec_->p() * 0x2545f4914f6cdd1dULL;
    h ^= u64(spec_->n()) << 32;
    for (const FieldElement& e : c_) h = hash_bytes(e.data(), spec_->n() * sizeof(u32), h);
    return h;
}

// ----- RationalFunction -------------------------------------------------------

RationalFunction::RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (&num.field() != &den.field()) throw std::invalid_argument("rational function over mixed fields");
    if (den.is_zero()) throw std::domain_error("zero denominator");
    Poly g = Poly::gcd(num, den);
    if (g.degree() > 0) {
        num = num / g;
        den = den / g;
    }
    FieldElement dl = den.lc();
    if (!dl.is_one()) {
        FieldElement inv = dl.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
}

RationalFunction RationalFunction::from_poly(Poly n) {
    Poly d = Poly::one(n.field());
    return RationalFunction(std::move(n), std::move(d));
}

}  // namespace curvetk
