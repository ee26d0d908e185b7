#include "core/integer.hpp"

namespace tlab {

Integer::Integer(const std::string& s) {
    if (v_.set_str(s, 10) != 0)
        throw input_error("invalid integer literal: " + s);
}

mpz_class Integer::from_ll(long long x) {
    if (x >= 0) return from_ull(static_cast<unsigned long long>(x));
    mpz_class m = from_ull(static_cast<unsigned long long>(-(x + 1)) + 1ULL);
    return -m;
}

mpz_class Integer::from_ull(unsigned long long x) {
    mpz_class m;
    mpz_import(m.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
    return m;
}

Integer Integer::fdiv(const Integer& o) const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
    return Integer(q);
}

Integer Integer::fmod(const Integer& o) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
    return Integer(r);
}

Integer Integer::exact_div(const Integer& o) const {
    if (o.is_zero() || !divisible_by(o))
        throw internal_error("exact_div: not divisible");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
    return Integer(q);
}

long Integer::to_long() const {
    if (!fits_long()) throw internal_error("integer does not fit in long");
    return v_.get_si();
}

std::uint64_t Integer::to_u64() const {
    if (sgn(v_) < 0 || mpz_sizeinbase(v_.get_mpz_t(), 2) > 64)
        throw internal_error("integer does not fit in u64");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v_.get_mpz_t());
    return out;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return Integer(g);
}

Integer Integer::lcm(const Integer& a, const Integer& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return Integer(l);
}

Integer Integer::gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t) {
    mpz_class g;
    mpz_gcdext(g.get_mpz_t(), s.v_.get_mpz_t(), t.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return Integer(g);
}

Integer Integer::pow(const Integer& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.v_.get_mpz_t(), e);
    return Integer(r);
}

Integer Integer::powmod(const Integer& base, const Integer& e, const Integer& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.v_.get_mpz_t(), e.v_.get_mpz_t(), mod.v_.get_mpz_t());
    return Integer(r);
}

Integer Integer::binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Integer(r);
}

Integer Integer::isqrt() const {
    if (sign() < 0) throw internal_error("isqrt of negative");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v_.get_mpz_t());
    return Integer(r);
}

std::optional<Integer> Integer::sqrt_exact() const {
    if (sign() < 0 || !is_perfect_square()) return std::nullopt;
    return isqrt();
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (den.is_zero()) throw input_error("rational with zero denominator");
    v_ = mpq_class(num.raw()) / mpq_class(den.raw());
    v_.canonicalize();
}

Rational::Rational(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (v_.set_str(t, 10) != 0 || v_.get_den() == 0)
        throw input_error("invalid rational literal: " + s);
    v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw internal_error("rational division by zero");
    return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::inv() const {
    if (is_zero()) throw internal_error("inverse of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rational(r);
}

std::optional<Rational> Rational::sqrt() const {
    if (sign() < 0) return std::nullopt;
    auto n = num().sqrt_exact();
    auto d = den().sqrt_exact();
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

} // namespace tlab
