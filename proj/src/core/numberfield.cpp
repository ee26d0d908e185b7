#include "core/numberfield.hpp"

#include <algorithm>

#include "core/polyfactor_fp.hpp"
#include "core/primes.hpp"

namespace tlab {

NumberField make_number_field(const QPoly& f, const std::string& label) {
    if (f.degree() < 1) throw input_error("number field needs deg f >= 1");
    if (!f.lc().is_one()) throw input_error("defining polynomial must be monic");
    if (f.degree() > 1 && !is_irreducible_q(f)) throw input_error("defining polynomial is reducible");
    auto data = std::make_shared<NumberFieldData>();
    data->f = f;
    data->degree = static_cast<unsigned>(f.degree());
    data->disc = f.degree() >= 1 ? discriminant_q(f) : Rational(1);
    data->label = label.empty() ? ("Q[x]/(" + poly_to_string(f) + ")") : label;
    return data;
}

NumberField quadratic_field(const Integer& d) {
    QPoly f = q_from_longs({0, 0, 1});
    f = f - QPoly::constant(Rational(d));
    return make_number_field(f, "Q(sqrt(" + d.to_string() + "))");
}

NumberField rationals() {
    static NumberField q = make_number_field(q_from_longs({0, 1}), "Q");
    return q;
}

NumberField compositum_quadratics(const Integer& d1, const Integer& d2) {
    // minimal polynomial of sqrt(d1) + sqrt(d2): x^4 - 2(d1+d2) x^2 + (d1-d2)^2
    QPoly f(Rational(0), {Rational((d1 - d2) * (d1 - d2)), Rational(0), Rational(Integer(-2) * (d1 + d2)),
                          Rational(0), Rational(1)});
    return make_number_field(f, "Q(sqrt(" + d1.to_string() + "),sqrt(" + d2.to_string() + "))");
}

NFElem::NFElem(NumberField K, std::vector<Rational> coords) : K_(std::move(K)) {
    coords.resize(K_->degree, Rational(0));
    c_ = std::move(coords);
}

NFElem NFElem::from_rational(const NumberField& K, const Rational& r) {
    std::vector<Rational> c(K->degree, Rational(0));
    c[0] = r;
    return NFElem(K, std::move(c));
}

NFElem NFElem::gen(const NumberField& K) {
    if (K->degree == 1) {
        // x = -f(0) in the degree-1 field
        return from_rational(K, -K->f.coeff(0));
    }
    std::vector<Rational> c(K->degree, Rational(0));
    c[1] = Rational(1);
    return NFElem(K, std::move(c));
}

bool NFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool NFElem::is_one() const {
    if (c_.empty() || !c_[0].is_one()) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool NFElem::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r.is_zero(); });
}

Rational NFElem::rational_value() const {
    if (!is_rational()) throw internal_error("NFElem not rational");
    return c_[0];
}

bool NFElem::operator==(const NFElem& o) const {
    check(o);
    return c_ == o.c_;
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

NFElem NFElem::operator+(const NFElem& o) const {
    check(o);
    NFElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

NFElem NFElem::operator-(const NFElem& o) const {
    check(o);
    NFElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

NFElem NFElem::operator*(const NFElem& o) const {
    check(o);
    const unsigned n = K_->degree;
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.c_[j].is_zero()) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    // reduce by monic f
    const auto& f = K_->f;
    for (std::size_t i = 2 * n - 2; i >= n && i < prod.size(); --i) {
        Rational lead = prod[i];
        if (lead.is_zero()) continue;
        prod[i] = Rational(0);
        for (unsigned j = 0; j < n; ++j) prod[i - n + j] -= lead * f.coeff(j);
    }
    prod.resize(n);
    return NFElem(K_, std::move(prod));
}

NFElem NFElem::inv() const {
    if (is_zero()) throw internal_error("NFElem: inverse of zero");
    QPoly a = as_poly();
    QPoly s(Rational(0)), t(Rational(0));
    QPoly g = poly_gcdext(a, K_->f, s, t);
    if (g.degree() != 0) throw internal_error("NFElem: gcd with f not constant");
    QPoly r = s.scaled(g.coeff(0).inv()) % K_->f;
    std::vector<Rational> c(K_->degree, Rational(0));
    for (long i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(static_cast<std::size_t>(i));
    return NFElem(K_, std::move(c));
}

NFElem NFElem::scaled(const Rational& r) const {
    NFElem out = *this;
    for (auto& v : out.c_) v *= r;
    return out;
}

QPoly NFElem::as_poly() const { return QPoly(Rational(0), c_); }

std::string NFElem::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ",";
        out += c_[i].to_string();
    }
    return out + "]";
}

bool FieldAutomorphism::is_identity() const {
    return image_of_gen == NFElem::gen(image_of_gen.field());
}

NFElem FieldAutomorphism::operator()(const NFElem& a) const {
    if (a.field().get() != image_of_gen.field().get()) throw internal_error("automorphism: wrong field");
    // evaluate the representative polynomial at sigma(w)
    NFElem acc = image_of_gen.zero();
    const auto& c = a.coords();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * image_of_gen + NFElem::from_rational(a.field(), c[i]);
    return acc;
}

UniPoly<NFElem> to_K_poly(const NumberField& K, const QPoly& f) {
    NFElem pr = NFElem::from_rational(K, Rational(0));
    return f.map_coeffs(pr, [&](const Rational& c) { return NFElem::from_rational(K, c); });
}

std::vector<FieldAutomorphism> automorphisms(const NumberField& K) {
    std::vector<FieldAutomorphism> out;
    out.push_back({NFElem::gen(K)});
    if (K->degree == 1) return out;
    if (K->degree == 2) {
        // x^2 + bx + c: the conjugate root is -b - w
        NFElem w = NFElem::gen(K);
        out.push_back({NFElem::from_rational(K, -K->f.coeff(1)) - w});
        return out;
    }
    for (const auto& root : roots_in_K(to_K_poly(K, K->f))) {
        if (root == NFElem::gen(K)) continue;
        out.push_back({root});
    }
    return out;
}

std::vector<PrimeSlot> split_prime(const NumberField& K, std::uint64_t p) {
    if (!is_prime_u64(p)) throw input_error("split_prime: p not prime");
    Integer P(static_cast<unsigned long long>(p));
    bool risk = false;
    for (const auto& c : K->f.coeffs())
        if (c.den().fmod(P).is_zero()) throw input_error("split_prime: denominator divisible by p");
    if (K->disc.num().fmod(P).is_zero() || K->disc.den().fmod(P).is_zero()) risk = true;

    auto fp = reduce_mod_p(K->f, p);
    auto factors = factor_mod_q(fp);
    std::vector<PrimeSlot> slots;
    for (const auto& [g, mult] : factors) {
        if (mult > 1) risk = true;
        PrimeSlot s;
        s.p = p;
        for (long i = 0; i <= g.degree(); ++i) s.g.push_back(g.coeff(static_cast<std::size_t>(i)).value());
        s.degree = static_cast<unsigned>(g.degree());
        s.residue_field = FqCtx::make(p, s.g);
        slots.push_back(std::move(s));
    }
    for (auto& s : slots) s.index_risk = risk;
    return slots;
}

Fq64 reduce_nf(const NFElem& alpha, const PrimeSlot& slot) {
    auto F = slot.residue_field;
    Fq64 w = Fq64::gen(F);
    Fq64 acc = Fq64::scalar(F, 0);
    const auto& c = alpha.coords();
    for (std::size_t i = c.size(); i-- > 0;) {
        Fp64 ci = Fp64::from_rational(c[i], slot.p);
        acc = acc * w + Fq64::from_fp(F, ci);
    }
    return acc;
}

Fp64 reduce_nf_fp(const NFElem& alpha, const PrimeSlot& slot) {
    if (slot.degree != 1) throw internal_error("reduce_nf_fp needs a degree-1 slot");
    std::uint64_t root = (slot.p - slot.g[0] % slot.p) % slot.p;
    Fp64 w(root, slot.p);
    Fp64 acc(0, slot.p);
    const auto& c = alpha.coords();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * w + Fp64::from_rational(c[i], slot.p);
    return acc;
}

namespace {

// Res_y(f(y), H(x - k*y)) by evaluation/interpolation in x.
QPoly norm_resultant(const NumberField& K, const UniPoly<NFElem>& h, long k) {
    const long n = static_cast<long>(K->degree);
    const long m = h.degree();
    const long deg_bound = n * m;
    // evaluate at x0: H(x0, y) = sum_j a_j(y) (x0 - k y)^j in Q[y]
    std::vector<Rational> xs, vals;
    QPoly f = K->f;
    long x0 = 0;
    while (static_cast<long>(xs.size()) <= deg_bound) {
        Rational X(x0);
        // build H(x0, y)
        QPoly acc(Rational(0));
        QPoly lin(Rational(0), {X, Rational(-k)}); // x0 - k*y
        QPoly power = QPoly::constant(Rational(1));
        for (long j = 0; j <= m; ++j) {
            acc += h.coeff(static_cast<std::size_t>(j)).as_poly() * power;
            power *= lin;
        }
        // N(x0) = prod_{f(beta)=0} H(x0, beta) = Res(H(x0, .), f) for monic f
        xs.emplace_back(X);
        vals.emplace_back(acc.is_zero() ? Rational(0) : resultant(acc, f));
        x0 = x0 > 0 ? -x0 : -x0 + 1;
    }
    // Lagrange interpolation
    QPoly result(Rational(0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly basis = QPoly::constant(Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            basis *= QPoly(Rational(0), {-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        result += basis.scaled(vals[i] / denom);
    }
    return result;
}

UniPoly<NFElem> compose_shift(const NumberField& K, const QPoly& F, long k) {
    // F(x + k*w) as a polynomial over K
    NFElem pr = NFElem::from_rational(K, Rational(0));
    UniPoly<NFElem> x = UniPoly<NFElem>::x(pr);
    UniPoly<NFElem> shift = x + UniPoly<NFElem>::constant(NFElem::gen(K).scaled(Rational(k)));
    UniPoly<NFElem> acc(pr);
    for (long i = F.degree(); i >= 0; --i)
        acc = acc * shift + UniPoly<NFElem>::constant(NFElem::from_rational(K, F.coeff(static_cast<std::size_t>(i))));
    return acc;
}

std::vector<UniPoly<NFElem>> factor_squarefree_over_K(const UniPoly<NFElem>& h) {
    std::vector<UniPoly<NFElem>> out;
    if (h.degree() == 1) {
        out.push_back(monic(h));
        return out;
    }
    const NumberField K = h.proto().field();
    if (K->degree == 1) {
        QPoly hq = h.map_coeffs(Rational(0), [](const NFElem& c) { return c.rational_value(); });
        for (auto& [fac, mult] : factor_rational_poly(hq).factors) {
            (void)mult;
            out.push_back(monic(to_K_poly(K, to_qpoly(fac))));
        }
        return out;
    }
    for (long k = 0;; k = (k > 0 ? -k : -k + 1)) {
        QPoly norm = norm_resultant(K, monic(h), k);
        if (norm.is_zero()) continue;
        if (poly_gcd(norm, norm.derivative()).degree() != 0) continue; // not squarefree, shift again
        auto fac = factor_rational_poly(norm);
        for (auto& [F, mult] : fac.factors) {
            (void)mult;
            auto piece = poly_gcd(h, compose_shift(K, to_qpoly(F), k));
            if (piece.degree() > 0) out.push_back(piece);
        }
        return out;
    }
}

} // namespace

std::vector<std::pair<UniPoly<NFElem>, unsigned>> factor_over_K(const UniPoly<NFElem>& h) {
    if (h.is_zero()) throw input_error("factor_over_K: zero polynomial");
    std::vector<std::pair<UniPoly<NFElem>, unsigned>> out;
    if (h.degree() == 0) return out;
    UniPoly<NFElem> rest = monic(h);
    auto sqpart = exact_div(rest, poly_gcd(rest, rest.derivative()));
    for (auto& piece : factor_squarefree_over_K(sqpart)) {
        unsigned mult = 0;
        while (true) {
            auto [q, r] = divrem(rest, piece);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        out.emplace_back(piece, mult);
    }
    if (rest.degree() != 0) throw internal_error("factor_over_K: incomplete factorization");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return poly_to_string(a.first) < poly_to_string(b.first);
    });
    return out;
}

std::vector<NFElem> roots_in_K(const UniPoly<NFElem>& h) {
    std::vector<NFElem> roots;
    for (const auto& [fac, mult] : factor_over_K(h)) {
        (void)mult;
        if (fac.degree() == 1) roots.push_back(-fac.coeff(0)); // monic
    }
    std::sort(roots.begin(), roots.end(), [](const NFElem& a, const NFElem& b) {
        return a.to_string() < b.to_string();
    });
    return roots;
}

std::optional<NFElem> sqrt_in_K(const NFElem& d) {
    if (d.is_zero()) return d;
    if (d.is_rational()) {
        auto r = d.rational_value().sqrt();
        if (r) return NFElem::from_rational(d.field(), *r);
    }
    NFElem pr = d.zero();
    UniPoly<NFElem> h(pr, {-d, pr.zero(), pr.one()});
    auto roots = roots_in_K(h);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

std::optional<NFElem> NFElem::sqrt() const { return sqrt_in_K(*this); }

QPoly minimal_poly(const NFElem& alpha) {
    const NumberField& K = alpha.field();
    if (K->degree == 1) return QPoly(Rational(0), {-alpha.rational_value(), Rational(1)});
    NFElem pr = alpha.zero();
    UniPoly<NFElem> h(pr, {-alpha, pr.one()}); // x - alpha
    QPoly charpoly = norm_resultant(K, h, 0);  // prod (x - alpha_i)
    // minpoly = the irreducible factor vanishing at alpha
    for (auto& [F, mult] : factor_rational_poly(charpoly).factors) {
        (void)mult;
        QPoly Fq = to_qpoly(F);
        UniPoly<NFElem> FK = to_K_poly(K, Fq);
        if (FK.eval(alpha).is_zero()) return monic(Fq);
    }
    throw internal_error("minimal_poly: no factor vanishes at alpha");
}

std::vector<std::pair<NumberField, NFElem>> quadratic_subfields(const NumberField& K) {
    std::vector<std::pair<NumberField, NFElem>> out;
    if (K->degree != 4) throw input_error("quadratic_subfields expects a quartic field");
    std::vector<Rational> seen_discs; // same quadratic field iff disc ratio is a square
    for (const auto& sigma : automorphisms(K)) {
        if (sigma.is_identity()) continue;
        NFElem w = NFElem::gen(K);
        if (!(sigma(sigma(w)) == w)) continue; // need an involution
        for (const NFElem& theta : {w + sigma.image_of_gen, -(w * sigma.image_of_gen),
                                    w * sigma.image_of_gen,
                                    w + sigma.image_of_gen + w * sigma.image_of_gen}) {
            QPoly mp = minimal_poly(theta);
            if (mp.degree() != 2) continue;
            Rational d = discriminant_q(mp);
            bool dup = false;
            for (const auto& prev : seen_discs)
                if ((d * prev).sqrt()) dup = true;
            if (dup) break;
            seen_discs.push_back(d);
            out.emplace_back(make_number_field(mp), theta);
            break;
        }
    }
    return out;
}

} // namespace tlab
