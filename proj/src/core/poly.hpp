#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"

namespace tlab {

template <class T>
class UniPoly;
template <class T>
std::string poly_to_string(const UniPoly<T>& p, const std::string& var = "x");

// Dense univariate polynomial with coefficients in a commutative ring T.
// T provides value semantics plus: is_zero(), zero(), one(), and arithmetic
// operators; inv() is required only by the field-based operations below.
//
// Every polynomial carries a zero element of its coefficient domain (proto)
// so that context-holding coefficient types (finite fields, number fields)
// survive the zero polynomial.
template <class T>
class UniPoly {
public:
    UniPoly() : proto_(T{}) {}
    explicit UniPoly(const T& proto) : proto_(proto.zero()) {}
    UniPoly(const T& proto, std::vector<T> coeffs) : proto_(proto.zero()), c_(std::move(coeffs)) { normalize(); }

    static UniPoly constant(const T& value) {
        UniPoly p(value);
        p.c_ = {value};
        p.normalize();
        return p;
    }
    static UniPoly x(const T& proto) { return monomial(proto.one(), 1); }
    static UniPoly monomial(const T& value, std::size_t deg) {
        UniPoly p(value);
        if (!value.is_zero()) {
            p.c_.assign(deg + 1, value.zero());
            p.c_[deg] = value;
        }
        return p;
    }

    const T& proto() const { return proto_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : proto_; }
    const T& lc() const {
        if (c_.empty()) throw internal_error("lc of zero polynomial");
        return c_.back();
    }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly r(proto_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), proto_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
        r.normalize();
        return r;
    }
    UniPoly operator-(const UniPoly& o) const {
        UniPoly r(proto_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), proto_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
        r.normalize();
        return r;
    }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly(proto_);
        UniPoly r(proto_);
        r.c_.assign(c_.size() + o.c_.size() - 1, proto_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.normalize();
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    bool operator==(const UniPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly scaled(const T& s) const {
        if (s.is_zero()) return UniPoly(proto_);
        UniPoly r(*this);
        for (auto& a : r.c_) a = a * s;
        r.normalize();
        return r;
    }

    UniPoly shifted_up(std::size_t k) const { // * x^k
        if (is_zero()) return *this;
        UniPoly r(proto_);
        r.c_.assign(c_.size() + k, proto_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    // x^n * p(1/x) with n = max(degree, min_len-1)
    UniPoly reversed(std::size_t min_len = 0) const {
        UniPoly r(proto_);
        r.c_.assign(std::max(c_.size(), min_len), proto_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[r.c_.size() - 1 - i] = c_[i];
        r.normalize();
        return r;
    }

    T eval(const T& x) const {
        T acc = proto_;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Horner evaluation in another domain; conv maps coefficients into it.
    template <class U, class F>
    U eval_in(const U& x, F conv) const {
        U acc = x.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + conv(c_[i]);
        return acc;
    }

    template <class U, class F>
    UniPoly<U> map_coeffs(const U& proto, F conv) const {
        std::vector<U> cc;
        cc.reserve(c_.size());
        for (const auto& a : c_) cc.push_back(conv(a));
        return UniPoly<U>(proto, std::move(cc));
    }

    UniPoly derivative() const {
        UniPoly r(proto_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1, proto_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = c_[i] * proto_.from_long(static_cast<long>(i));
        r.normalize();
        return r;
    }

    // p(q(x)) by Horner.
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc(proto_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + constant(c_[i]);
        return acc;
    }

    void set_coeff(std::size_t i, const T& v) {
        if (i >= c_.size()) c_.resize(i + 1, proto_);
        c_[i] = v;
        normalize();
    }

    // ring-element interface, so polynomials can serve as coefficients
    UniPoly zero() const { return UniPoly(proto_); }
    UniPoly one() const { return constant(proto_.one()); }
    UniPoly from_long(long k) const { return constant(proto_.from_long(k)); }
    std::string to_string() const { return poly_to_string(*this, "x"); }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    T proto_;
    std::vector<T> c_;
};

// ---- field-based algorithms ------------------------------------------------

template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divrem(const UniPoly<T>& a, const UniPoly<T>& b) {
    if (b.is_zero()) throw internal_error("polynomial division by zero");
    UniPoly<T> q(a.proto()), r = a;
    const T lcb_inv = b.lc().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        T c = r.lc() * lcb_inv;
        auto k = static_cast<std::size_t>(r.degree() - b.degree());
        q += UniPoly<T>::monomial(c, k);
        r -= b.scaled(c).shifted_up(k);
    }
    return {q, r};
}

template <class T>
UniPoly<T> operator/(const UniPoly<T>& a, const UniPoly<T>& b) { return divrem(a, b).first; }

template <class T>
UniPoly<T> operator%(const UniPoly<T>& a, const UniPoly<T>& b) { return divrem(a, b).second; }

// Exact quotient; throws if b does not divide a.
template <class T>
UniPoly<T> exact_div(const UniPoly<T>& a, const UniPoly<T>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw internal_error("exact_div: remainder nonzero");
    return q;
}

template <class T>
UniPoly<T> monic(const UniPoly<T>& a) {
    if (a.is_zero()) return a;
    return a.scaled(a.lc().inv());
}

// Monic gcd; gcd(0,0) = 0.
template <class T>
UniPoly<T> poly_gcd(UniPoly<T> a, UniPoly<T> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// g = gcd(a,b) monic, with g = s*a + t*b.
template <class T>
UniPoly<T> poly_gcdext(const UniPoly<T>& a, const UniPoly<T>& b, UniPoly<T>& s, UniPoly<T>& t) {
    UniPoly<T> r0 = a, r1 = b;
    UniPoly<T> s0 = UniPoly<T>::constant(a.proto().one()), s1(a.proto());
    UniPoly<T> t0(a.proto()), t1 = UniPoly<T>::constant(a.proto().one());
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        UniPoly<T> s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) { s = s0; t = t0; return r0; }
    T u = r0.lc().inv();
    s = s0.scaled(u);
    t = t0.scaled(u);
    return r0.scaled(u);
}

template <class T>
UniPoly<T> powmod(UniPoly<T> base, Integer e, const UniPoly<T>& mod) {
    UniPoly<T> r = UniPoly<T>::constant(base.proto().one()) % mod;
    base = base % mod;
    while (e.sign() > 0) {
        if (e.odd()) r = (r * base) % mod;
        base = (base * base) % mod;
        e = e / Integer(2);
    }
    return r;
}

// Resultant over a field via the Euclidean remainder sequence, with the
// convention Res(a,b) = lc(b)^deg(a) * prod_j a(beta_j).  Zero iff a and b
// share a root; throws on zero input.
template <class T>
T resultant(UniPoly<T> a, UniPoly<T> b) {
    if (a.is_zero() || b.is_zero()) throw input_error("resultant of zero polynomial");
    T res = a.proto().one();
    bool negate = false;
    while (true) {
        if (b.degree() == 0) {
            T lb = b.lc();
            T acc = a.proto().one();
            for (long i = 0; i < a.degree(); ++i) acc = acc * lb;
            res = res * acc;
            break;
        }
        auto r = a % b;
        if (r.is_zero()) return a.proto().zero();
        // Res(a,b) = lc(b)^(deg a - deg r) * (-1)^(deg r * deg b) * Res(b,r)
        if ((r.degree() & 1) && (b.degree() & 1)) negate = !negate;
        T lb = b.lc();
        T acc = a.proto().one();
        for (long i = 0; i < a.degree() - r.degree(); ++i) acc = acc * lb;
        res = res * acc;
        a = std::move(b);
        b = std::move(r);
    }
    return negate ? -res : res;
}

template <class T>
std::string poly_to_string(const UniPoly<T>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        auto c = p.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        if (i > 0) out += "*" + var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

} // namespace tlab
