#include "core/fq.hpp"

#include <algorithm>

#include "core/polyfactor_fp.hpp"

namespace tlab {

std::shared_ptr<const FqCtx> FqCtx::make(std::uint64_t p, std::vector<std::uint64_t> g) {
    auto ctx = std::make_shared<FqCtx>();
    ctx->p = p;
    while (!g.empty() && g.back() % p == 0) g.pop_back();
    if (g.size() < 2 || g.back() % p != 1) throw internal_error("FqCtx: modulus must be monic of degree >= 1");
    for (auto& c : g) c %= p;
    ctx->g = std::move(g);
    ctx->d = static_cast<unsigned>(ctx->g.size() - 1);
    ctx->q = Integer::pow(Integer(static_cast<unsigned long long>(p)), ctx->d);
    return ctx;
}

std::shared_ptr<const FqCtx> FqCtx::prime_field(std::uint64_t p) {
    return make(p, {0, 1});
}

std::shared_ptr<const FqCtx> FqCtx::extension(std::uint64_t p, unsigned d) {
    if (d == 1) return prime_field(p);
    return make(p, find_irreducible_mod_p(p, d));
}

Fq64::Fq64(std::shared_ptr<const FqCtx> F, std::vector<std::uint64_t> coeffs) : F_(std::move(F)) {
    coeffs.resize(F_->d, 0);
    for (auto& c : coeffs) c %= F_->p;
    c_ = std::move(coeffs);
}

Fq64 Fq64::from_fp(std::shared_ptr<const FqCtx> F, const Fp64& a) {
    if (a.modulus() != F->p) throw internal_error("Fq64::from_fp: wrong characteristic");
    return scalar(std::move(F), a.value());
}

Fq64 Fq64::scalar(std::shared_ptr<const FqCtx> F, std::uint64_t v) {
    std::vector<std::uint64_t> c(F->d, 0);
    c[0] = v % F->p;
    Fq64 r;
    r.F_ = std::move(F);
    r.c_ = std::move(c);
    return r;
}

Fq64 Fq64::gen(std::shared_ptr<const FqCtx> F) {
    if (F->d == 1) {
        // x == root of x + g0, i.e. -g0
        std::uint64_t p = F->p;
        return scalar(std::move(F), (p - F->g[0] % p) % p);
    }
    std::vector<std::uint64_t> c(F->d, 0);
    c[1] = 1;
    Fq64 r;
    r.F_ = std::move(F);
    r.c_ = std::move(c);
    return r;
}

bool Fq64::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool Fq64::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint64_t v) { return v == 0; });
}

Fq64 Fq64::from_long(long k) const {
    std::int64_t r = k % static_cast<std::int64_t>(F_->p);
    if (r < 0) r += static_cast<std::int64_t>(F_->p);
    return scalar(F_, static_cast<std::uint64_t>(r));
}

Fq64 Fq64::operator-() const {
    Fq64 r = *this;
    for (auto& v : r.c_) v = v ? F_->p - v : 0;
    return r;
}

Fq64 Fq64::operator+(const Fq64& o) const {
    check(o);
    Fq64 r = *this;
    for (unsigned i = 0; i < F_->d; ++i) {
        r.c_[i] += o.c_[i];
        if (r.c_[i] >= F_->p) r.c_[i] -= F_->p;
    }
    return r;
}

Fq64 Fq64::operator-(const Fq64& o) const {
    check(o);
    Fq64 r = *this;
    for (unsigned i = 0; i < F_->d; ++i)
        r.c_[i] = r.c_[i] >= o.c_[i] ? r.c_[i] - o.c_[i] : r.c_[i] + F_->p - o.c_[i];
    return r;
}

Fq64 Fq64::operator*(const Fq64& o) const {
    check(o);
    const std::uint64_t p = F_->p;
    const unsigned d = F_->d;
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (o.c_[j] == 0) continue;
            std::uint64_t t = prod[i + j] + mulmod64(c_[i], o.c_[j], p);
            prod[i + j] = t >= p ? t - p : t; // both summands < p, so t < 2p
        }
    }
    // reduce by the monic modulus
    for (unsigned i = 2 * d - 2; i >= d && i < prod.size(); --i) {
        std::uint64_t lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < d; ++j) {
            if (F_->g[j] == 0) continue;
            std::uint64_t sub = mulmod64(lead, F_->g[j], p);
            std::uint64_t& tgt = prod[i - d + j];
            tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
        }
    }
    prod.resize(d);
    Fq64 r;
    r.F_ = F_;
    r.c_ = std::move(prod);
    return r;
}

Fq64 Fq64::inv() const {
    if (is_zero()) throw internal_error("Fq64: inverse of zero");
    if (F_->d == 1) return scalar(F_, invmod64(c_[0], F_->p));
    // extended Euclid in F_p[x]
    Fp64 proto(0, F_->p);
    auto to_poly = [&](const std::vector<std::uint64_t>& v) {
        std::vector<Fp64> cc;
        cc.reserve(v.size());
        for (auto x : v) cc.emplace_back(x, F_->p);
        return UniPoly<Fp64>(proto, std::move(cc));
    };
    UniPoly<Fp64> a = to_poly(c_), g = to_poly(F_->g), s(proto), t(proto);
    auto d = poly_gcdext(a, g, s, t);
    if (d.degree() != 0) throw internal_error("Fq64: modulus not irreducible?");
    auto r = s.scaled(d.coeff(0).inv());
    std::vector<std::uint64_t> out(F_->d, 0);
    for (long i = 0; i <= r.degree(); ++i) out[static_cast<std::size_t>(i)] = r.coeff(static_cast<std::size_t>(i)).value();
    return Fq64(F_, std::move(out));
}

Fq64 Fq64::pow(const Integer& e) const {
    if (e.sign() < 0) return inv().pow(-e);
    Fq64 r = one(), b = *this;
    Integer k = e;
    while (k.sign() > 0) {
        if (k.odd()) r = r * b;
        b = b * b;
        k = k / Integer(2);
    }
    return r;
}

int Fq64::chi() const {
    if (F_->p == 2) throw internal_error("chi undefined in characteristic 2");
    if (is_zero()) return 0;
    Fq64 r = pow((F_->q - Integer(1)) / Integer(2));
    return r.is_one() ? 1 : -1;
}

std::optional<Fq64> Fq64::sqrt() const {
    if (F_->p == 2) throw input_error("sqrt in even characteristic is unsupported");
    if (is_zero()) return zero();
    if (chi() != 1) return std::nullopt;
    const Integer& q = F_->q;
    if ((q.fmod(Integer(4))).to_long() == 3)
        return pow((q + Integer(1)) / Integer(4));
    // Tonelli-Shanks in F_q with a deterministic non-residue search
    Integer Q = q - Integer(1);
    unsigned s = 0;
    while (!Q.odd()) Q = Q / Integer(2), ++s;
    // Half the nonzero elements are non-residues; scan in index order.
    Fq64 z = one();
    for (std::uint64_t idx = 2;; ++idx) {
        if (Integer(static_cast<unsigned long long>(idx)) >= q)
            throw internal_error("Fq64::sqrt: no non-residue found");
        z = from_index(F_, idx);
        if (!z.is_zero() && z.chi() == -1) break;
    }
    Fq64 c = z.pow(Q);
    Fq64 t = pow(Q);
    Fq64 r = pow((Q + Integer(1)) / Integer(2));
    unsigned m = s;
    while (!t.is_one()) {
        unsigned i = 0;
        Fq64 tt = t;
        while (!tt.is_one()) { tt = tt * tt; ++i; }
        Fq64 b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    return r;
}

Fp64 Fq64::trace() const {
    Fq64 acc = *this, term = *this;
    for (unsigned i = 1; i < F_->d; ++i) {
        term = term.frobenius();
        acc = acc + term;
    }
    for (unsigned i = 1; i < F_->d; ++i)
        if (acc.c_[i] != 0) throw internal_error("trace not in prime field");
    return Fp64(acc.c_[0], F_->p);
}

Fq64 Fq64::from_index(std::shared_ptr<const FqCtx> F, std::uint64_t idx) {
    std::vector<std::uint64_t> c(F->d, 0);
    for (unsigned i = 0; i < F->d; ++i) {
        c[i] = idx % F->p;
        idx /= F->p;
    }
    Fq64 r;
    r.F_ = std::move(F);
    r.c_ = std::move(c);
    return r;
}

std::uint64_t Fq64::to_index() const {
    std::uint64_t idx = 0;
    for (unsigned i = F_->d; i-- > 0;) idx = idx * F_->p + c_[i];
    return idx;
}

std::string Fq64::to_string() const {
    std::string out = "[";
    for (unsigned i = 0; i < F_->d; ++i) {
        if (i) out += ",";
        out += std::to_string(c_[i]);
    }
    return out + "]";
}

std::vector<std::uint64_t> find_irreducible_mod_p(std::uint64_t p, unsigned d) {
    if (d == 1) return {0, 1};
    Fp64 proto(0, p);
    // scan monic polynomials x^d + (a_{d-1} x^{d-1} + ... + a_0) in index order
    for (std::uint64_t idx = 1;; ++idx) {
        std::vector<Fp64> cc;
        std::uint64_t k = idx;
        for (unsigned i = 0; i < d; ++i) {
            cc.emplace_back(k % p, p);
            k /= p;
        }
        if (k != 0) throw internal_error("find_irreducible_mod_p: exhausted search space");
        cc.emplace_back(1, p);
        UniPoly<Fp64> f(proto, std::move(cc));
        if (is_irreducible_mod_p(f)) {
            std::vector<std::uint64_t> out;
            out.reserve(d + 1);
            for (long i = 0; i <= f.degree(); ++i) out.push_back(f.coeff(static_cast<std::size_t>(i)).value());
            return out;
        }
    }
}

} // namespace tlab
