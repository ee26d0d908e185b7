#include "core/bipoly.hpp"

namespace tlab {

namespace {
const QPoly& qzero() {
    static QPoly z{Rational(0)};
    return z;
}
} // namespace

BiPoly bipoly_zero() { return BiPoly(qzero()); }

BiPoly bipoly_const(const Rational& c) { return BiPoly::constant(QPoly::constant(c)); }

BiPoly bipoly_s() { return BiPoly::constant(QPoly::x(Rational(0))); }

BiPoly bipoly_t() { return BiPoly::x(qzero()); }

BiPoly bipoly_from_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<QPoly> cc;
    cc.reserve(rows.size());
    for (const auto& r : rows) cc.push_back(q_from_longs(r));
    return BiPoly(qzero(), std::move(cc));
}

long degree_t(const BiPoly& f) { return f.degree(); }

long degree_s(const BiPoly& f) {
    long d = -1;
    for (const auto& c : f.coeffs()) d = std::max(d, c.degree());
    return d;
}

Rational bipoly_eval(const BiPoly& f, const Rational& s, const Rational& t) {
    Rational acc(0);
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * t + f.coeff(i).eval(s);
    return acc;
}

QPoly bipoly_content(const BiPoly& f) {
    QPoly g = qzero();
    for (const auto& c : f.coeffs()) g = poly_gcd(g, c);
    return g;
}

BiPoly bipoly_primitive(const BiPoly& f) {
    if (f.is_zero()) return f;
    QPoly cont = bipoly_content(f);
    std::vector<QPoly> cc;
    cc.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) cc.push_back(exact_div(c, cont));
    BiPoly g(qzero(), std::move(cc));
    // clear rational content and fix the sign of the leading coefficient
    Integer num_gcd(0), den_lcm(1);
    for (const auto& c : g.coeffs())
        for (const auto& r : c.coeffs()) {
            num_gcd = Integer::gcd(num_gcd, r.num());
            den_lcm = Integer::lcm(den_lcm, r.den());
        }
    if (num_gcd.is_zero()) return g;
    Rational scale{den_lcm, num_gcd};
    if (g.lc().lc().sign() < 0) scale = -scale;
    std::vector<QPoly> dd;
    dd.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) dd.push_back(c.scaled(scale));
    return BiPoly(qzero(), std::move(dd));
}

namespace {

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r
BiPoly bipoly_prem(BiPoly a, const BiPoly& b) {
    long db = b.degree();
    const QPoly& lb = b.lc();
    while (!a.is_zero() && a.degree() >= db) {
        long k = a.degree() - db;
        BiPoly scaled_a(qzero());
        {
            std::vector<QPoly> cc;
            cc.reserve(a.coeffs().size());
            for (const auto& c : a.coeffs()) cc.push_back(c * lb);
            scaled_a = BiPoly(qzero(), std::move(cc));
        }
        a = scaled_a - b.scaled(a.lc()).shifted_up(static_cast<std::size_t>(k));
    }
    return a;
}

} // namespace

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return bipoly_primitive(b);
    if (b.is_zero()) return bipoly_primitive(a);
    QPoly cont = poly_gcd(bipoly_content(a), bipoly_content(b));
    BiPoly A = bipoly_primitive(a), B = bipoly_primitive(b);
    if (A.degree() < B.degree()) std::swap(A, B);
    // primitive PRS
    while (!B.is_zero() && B.degree() > 0) {
        BiPoly R = bipoly_prem(A, B);
        A = std::move(B);
        B = bipoly_primitive(R);
    }
    if (!B.is_zero()) {
        // gcd in t is trivial; only the content survives
        return BiPoly::constant(cont);
    }
    BiPoly g = bipoly_primitive(A);
    // multiply back the s-content
    std::vector<QPoly> cc;
    cc.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) cc.push_back(c * cont);
    return BiPoly(qzero(), std::move(cc));
}

std::optional<BiPoly> bipoly_try_exact_div(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) return std::nullopt;
    BiPoly r = a, q(qzero());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        auto [qc, rc] = divrem(r.lc(), b.lc());
        if (!rc.is_zero()) return std::nullopt;
        long k = r.degree() - b.degree();
        q += BiPoly::monomial(qc, static_cast<std::size_t>(k));
        r -= b.scaled(qc).shifted_up(static_cast<std::size_t>(k));
    }
    if (!r.is_zero()) return std::nullopt;
    return q;
}

bool bipoly_proportional(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    return bipoly_primitive(f) == bipoly_primitive(g);
}

BiRat::BiRat(BiPoly n, BiPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw internal_error("BiRat: zero denominator");
    reduce();
}

void BiRat::reduce() {
    if (num_.is_zero()) {
        den_ = bipoly_const(Rational(1));
        return;
    }
    BiPoly g = bipoly_gcd(num_, den_);
    if (degree_t(g) > 0 || degree_s(g) > 0) {
        num_ = *bipoly_try_exact_div(num_, g);
        den_ = *bipoly_try_exact_div(den_, g);
    }
    // normalize by the rational content of the denominator
    BiPoly dp = bipoly_primitive(den_);
    auto scale = bipoly_try_exact_div(den_, dp);
    if (scale && scale->degree() == 0 && scale->lc().degree() == 0) {
        Rational c = scale->lc().coeff(0);
        std::vector<QPoly> cc;
        for (const auto& co : num_.coeffs()) cc.push_back(co.scaled(c.inv()));
        num_ = BiPoly(num_.proto(), std::move(cc));
        den_ = dp;
    }
}

BiRat BiRat::operator-() const {
    BiRat r = *this;
    r.num_ = -r.num_;
    return r;
}

BiRat BiRat::operator+(const BiRat& o) const {
    return BiRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BiRat BiRat::operator-(const BiRat& o) const {
    return BiRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

BiRat BiRat::operator*(const BiRat& o) const { return BiRat(num_ * o.num_, den_ * o.den_); }

BiRat BiRat::inv() const {
    if (is_zero()) throw internal_error("BiRat: inverse of zero");
    return BiRat(den_, num_);
}

std::string BiRat::to_string() const {
    std::string out = "(";
    out += poly_to_string(num_, "t");
    out += ")/(";
    out += poly_to_string(den_, "t");
    return out + ")";
}

} // namespace tlab
