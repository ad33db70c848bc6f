#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cdc {

/// Field element index: base-p digits of the coefficient vector in the power basis.
using Elem = std::uint8_t;

inline constexpr unsigned kMaxFieldOrder = 256;

namespace detail {

struct ConwayPolynomial {
    unsigned p;
    unsigned e;
    std::array<std::uint8_t, 9> coeffs;  // ascending, monic, e + 1 entries
};

// Conway polynomials C_{p,e}, constant term first.
inline constexpr ConwayPolynomial kConwayTable[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {11, 1, {9, 1}},
    {11, 2, {2, 7, 1}},
    {13, 1, {11, 1}},
    {13, 2, {2, 12, 1}},
};

inline const ConwayPolynomial* find_conway(unsigned p, unsigned e) {
    for (const auto& c : kConwayTable)
        if (c.p == p && c.e == e) return &c;
    return nullptr;
}

struct FieldTables {
    unsigned p = 0;
    unsigned e = 0;
    unsigned q = 0;
    std::vector<unsigned> modulus;
    std::vector<Elem> add;  // q * q
    std::vector<Elem> mul;  // q * q
    std::vector<Elem> neg;
    std::vector<Elem> inv;       // inv[0] unused
    std::vector<Elem> exp;       // exp[i] = x^i, i < q - 1
    std::vector<unsigned> log;   // log[0] unused
};

inline std::shared_ptr<const FieldTables> build_tables(const ConwayPolynomial& c) {
    auto t = std::make_shared<FieldTables>();
    t->p = c.p;
    t->e = c.e;
    t->q = 1;
    for (unsigned i = 0; i < c.e; ++i) t->q *= c.p;
    t->modulus.assign(c.coeffs.begin(), c.coeffs.begin() + c.e + 1);

    const unsigned p = t->p, e = t->e, q = t->q;
    auto digits = [&](unsigned idx) {
        std::vector<unsigned> d(e);
        for (unsigned i = 0; i < e; ++i, idx /= p) d[i] = idx % p;
        return d;
    };
    auto index = [&](const std::vector<unsigned>& d) {
        unsigned idx = 0;
        for (unsigned i = e; i-- > 0;) idx = idx * p + d[i];
        return idx;
    };

    t->add.resize(q * q);
    t->neg.resize(q);
    for (unsigned a = 0; a < q; ++a) {
        const auto da = digits(a);
        std::vector<unsigned> dn(e);
        for (unsigned i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
        t->neg[a] = static_cast<Elem>(index(dn));
        for (unsigned b = 0; b < q; ++b) {
            const auto db = digits(b);
            std::vector<unsigned> ds(e);
            for (unsigned i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
            t->add[a * q + b] = static_cast<Elem>(index(ds));
        }
    }

    // Powers of the Conway root x; the modulus is primitive, so they cover every nonzero element.
    t->exp.resize(q - 1);
    t->log.assign(q, 0);
    std::vector<bool> seen(q, false);
    std::vector<unsigned> cur(e, 0);
    cur[0] = 1;
    for (unsigned i = 0; i + 1 < q; ++i) {
        const unsigned idx = index(cur);
        if (idx == 0 || seen[idx]) throw InternalError("modulus polynomial is not primitive");
        seen[idx] = true;
        t->exp[i] = static_cast<Elem>(idx);
        t->log[idx] = i;
        std::vector<unsigned> shifted(e + 1, 0);
        for (unsigned j = 0; j < e; ++j) shifted[j + 1] = cur[j];
        const unsigned top = shifted[e];
        for (unsigned j = 0; j < e; ++j) cur[j] = (shifted[j] + p * p - (top * t->modulus[j]) % p) % p;
    }

    t->mul.assign(q * q, 0);
    t->inv.assign(q, 0);
    for (unsigned a = 1; a < q; ++a) {
        for (unsigned b = 1; b < q; ++b) t->mul[a * q + b] = t->exp[(t->log[a] + t->log[b]) % (q - 1)];
        t->inv[a] = t->exp[(q - 1 - t->log[a]) % (q - 1)];
    }
    return t;
}

inline std::shared_ptr<const FieldTables> cached_tables(unsigned p, unsigned e) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FieldTables>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({p, e});
    if (it != cache.end()) return it->second;
    const auto* c = find_conway(p, e);
    if (c == nullptr)
        throw InvalidParameter("unsupported field GF(" + std::to_string(p) + "^" + std::to_string(e) +
                               "): no tabulated Conway polynomial (fields up to 256 elements)");
    auto t = build_tables(*c);
    cache.emplace(std::pair{p, e}, t);
    return t;
}

}  // namespace detail

class FieldElem;

/// The finite field GF(p^e) defined by the Conway polynomial C_{p,e}.
///
/// Elements are plain indices (`Elem`); the arithmetic members do no range
/// checking. Use `element()` to obtain a validated `FieldElem`.
/// Copies share the same immutable tables.
class Field {
   public:
    Field(unsigned p, unsigned e) : t_(detail::cached_tables(p, e)) {}

    /// GF(q) for a prime power q.
    static Field of_order(unsigned q) {
        if (q < 2) throw InvalidParameter("field order must be at least 2, got " + std::to_string(q));
        unsigned p = 2;
        while (q % p != 0) ++p;
        unsigned e = 0;
        for (unsigned r = q; r > 1; r /= p, ++e)
            if (r % p != 0) throw InvalidParameter(std::to_string(q) + " is not a prime power");
        return Field(p, e);
    }

    unsigned characteristic() const { return t_->p; }
    unsigned degree() const { return t_->e; }
    unsigned order() const { return t_->q; }
    const std::vector<unsigned>& modulus() const { return t_->modulus; }

    bool contains(unsigned idx) const { return idx < t_->q; }

    Elem add(Elem a, Elem b) const { return t_->add[a * t_->q + b]; }
    Elem neg(Elem a) const { return t_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return t_->mul[a * t_->q + b]; }
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero();
        return t_->inv[a];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t k) const {
        if (k == 0) return 1;
        if (a == 0) return 0;
        const std::uint64_t n = t_->q - 1;
        return t_->exp[static_cast<std::size_t>((t_->log[a] * (k % n)) % n)];
    }

    /// The Conway root x; generates the multiplicative group.
    Elem primitive() const { return t_->exp[t_->q > 2 ? 1 : 0]; }
    Elem exp(std::uint64_t i) const { return t_->exp[static_cast<std::size_t>(i % (t_->q - 1))]; }
    unsigned log(Elem a) const {
        if (a == 0) throw DivisionByZero();
        return t_->log[a];
    }

    FieldElem element(unsigned idx) const;
    FieldElem zero() const;
    FieldElem one() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->e == b.t_->e);
    }

    std::string name() const {
        return t_->e == 1 ? "GF(" + std::to_string(t_->p) + ")"
                          : "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->e) + ")";
    }

   private:
    std::shared_ptr<const detail::FieldTables> t_;
};

/// Field sizes accepted for code constructions.
inline bool is_supported_base_order(unsigned q) {
    switch (q) {
        case 2: case 3: case 4: case 5: case 7: case 8: case 9: return true;
        default: return false;
    }
}

inline void require_supported_base_order(unsigned q) {
    if (!is_supported_base_order(q))
        throw InvalidParameter("field size q=" + std::to_string(q) +
                               " is not supported for constructions (supported: 2, 3, 4, 5, 7, 8, 9)");
}

/// An element bound to its field; arithmetic between different fields throws.
class FieldElem {
   public:
    FieldElem(Field f, unsigned idx) : f_(std::move(f)), v_(0) {
        if (!f_.contains(idx))
            throw InvalidElement("element index " + std::to_string(idx) + " out of range for " + f_.name());
        v_ = static_cast<Elem>(idx);
    }

    const Field& field() const { return f_; }
    Elem value() const { return v_; }

    FieldElem inverse() const { return {f_, f_.inv(v_)}; }
    FieldElem pow(std::uint64_t k) const { return {f_, f_.pow(v_, k)}; }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.f_, a.f_.add(a.v_, b.v_)};
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.f_, a.f_.sub(a.v_, b.v_)};
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.f_, a.f_.mul(a.v_, b.v_)};
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        return {a.f_, a.f_.div(a.v_, b.v_)};
    }
    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.f_ == b.f_ && a.v_ == b.v_; }

   private:
    static void check(const FieldElem& a, const FieldElem& b) {
        if (!(a.f_ == b.f_)) throw IncompatibleField("operands from " + a.f_.name() + " and " + b.f_.name());
    }

    Field f_;
    Elem v_;
};

inline FieldElem Field::element(unsigned idx) const { return {*this, idx}; }
inline FieldElem Field::zero() const { return {*this, 0}; }
inline FieldElem Field::one() const { return {*this, 1}; }

/// GF(q^m) viewed as an m-dimensional vector space over GF(q).
///
/// The big field is GF(p^(e*m)) with its own Conway modulus. GF(q) sits inside it
/// through the Conway-compatible embedding x_small -> x_big^((q^m-1)/(q-1)).
/// Coordinates are taken in `basis()`; the default is the power basis 1, b, ..., b^(m-1)
/// of the big field's Conway root b.
class ExtensionField {
   public:
    ExtensionField(Field base, unsigned degree, std::optional<std::vector<Elem>> basis = std::nullopt)
        : base_(std::move(base)),
          big_(base_.characteristic(), checked_degree(base_, degree)),
          degree_(degree) {
        const unsigned q = base_.order(), Q = big_.order();
        const unsigned step = (Q - 1) / (q - 1);

        embed_.assign(q, 0);
        for (unsigned i = 0; i + 1 < q; ++i) embed_[base_.exp(i)] = big_.exp(std::uint64_t(i) * step);
        // The image of the small Conway root must satisfy the small modulus.
        Elem acc = 0, power = 1;
        const Elem gamma = big_.exp(step);
        for (unsigned c : base_.modulus()) {
            acc = big_.add(acc, big_.mul(static_cast<Elem>(c), power));
            power = big_.mul(power, gamma);
        }
        if (acc != 0) throw InternalError("Conway embedding of " + base_.name() + " into " + big_.name() + " failed");

        if (basis) {
            if (basis->size() != degree_) throw InvalidParameter("basis must have exactly `degree` elements");
            for (Elem b : *basis)
                if (!big_.contains(b)) throw InvalidElement("basis element out of range");
            basis_ = std::move(*basis);
        } else {
            for (unsigned j = 0; j < degree_; ++j) basis_.push_back(big_.exp(j));
        }

        coords_.assign(std::size_t(Q) * degree_, 0);
        std::vector<bool> seen(Q, false);
        std::vector<Elem> c(degree_, 0);
        for (unsigned t = 0; t < Q; ++t) {
            unsigned r = t;
            Elem v = 0;
            for (unsigned j = 0; j < degree_; ++j, r /= q) {
                c[j] = static_cast<Elem>(r % q);
                v = big_.add(v, big_.mul(embed_[c[j]], basis_[j]));
            }
            if (seen[v]) throw InvalidParameter("basis elements are not linearly independent over " + base_.name());
            seen[v] = true;
            std::copy(c.begin(), c.end(), coords_.begin() + std::size_t(v) * degree_);
        }
    }

    const Field& base() const { return base_; }
    const Field& field() const { return big_; }
    unsigned degree() const { return degree_; }
    std::span<const Elem> basis() const { return basis_; }

    Elem embed(Elem small) const { return embed_.at(small); }

    /// x^(q^times).
    Elem frobenius(Elem x, unsigned times = 1) const {
        if (x == 0) return 0;
        std::uint64_t k = 1;
        for (unsigned i = 0; i < times; ++i) k = (k * base_.order()) % (big_.order() - 1);
        return big_.pow(x, k);
    }

    /// Coordinates of x over GF(q) in `basis()`.
    std::span<const Elem> expand(Elem x) const {
        return std::span<const Elem>(coords_).subspan(std::size_t(x) * degree_, degree_);
    }

    Elem combine(std::span<const Elem> coords) const {
        if (coords.size() != degree_) throw InvalidParameter("coordinate vector has wrong length");
        Elem v = 0;
        for (unsigned j = 0; j < degree_; ++j) v = big_.add(v, big_.mul(embed(coords[j]), basis_[j]));
        return v;
    }

   private:
    static unsigned checked_degree(const Field& base, unsigned degree) {
        if (degree == 0) throw InvalidParameter("extension degree must be positive");
        std::uint64_t Q = 1;
        for (unsigned i = 0; i < degree; ++i) Q *= base.order();
        if (Q > kMaxFieldOrder)
            throw InvalidParameter("extension field " + base.name() + "^" + std::to_string(degree) +
                                   " exceeds 256 elements");
        return base.degree() * degree;
    }

    Field base_;
    Field big_;
    unsigned degree_;
    std::vector<Elem> embed_;
    std::vector<Elem> basis_;
    std::vector<Elem> coords_;
};

/// Evaluates the q-linearized polynomial sum_i coeffs[i] * x^(q^i) over GF(q^m).
inline FieldElem linearized_eval(std::span<const FieldElem> coeffs, const FieldElem& x, unsigned q) {
    if (coeffs.empty()) throw InvalidParameter("linearized polynomial needs at least one coefficient");
    const Field& f = x.field();
    unsigned r = f.order();
    if (q < 2) throw InvalidParameter("q must be at least 2");
    while (r % q == 0) r /= q;
    if (r != 1) throw InvalidParameter(f.name() + " is not an extension of a field of order " + std::to_string(q));

    Elem acc = 0, power = x.value();
    for (const auto& c : coeffs) {
        if (!(c.field() == f)) throw IncompatibleField("coefficient from " + c.field().name() + ", argument from " + f.name());
        acc = f.add(acc, f.mul(c.value(), power));
        power = f.pow(power, q);
    }
    return {f, acc};
}

}  // namespace cdc
