#include "core/modular.hpp"

#include <map>

#include "core/fieldops.hpp"
#include "core/primes.hpp"

namespace tlab {

BiPoly universal_disc_factor() {
    // s(s+4)^2 t^2 - s(2s^2+5s+20) t + (s-1)^3
    return bipoly_from_rows({{-1, 3, -3, 1}, {0, -20, -5, -2}, {0, 16, 8, 1}});
}

BiPoly phi_explicit(unsigned n) {
    if (n == 13) {
        // t^3 - (s^4+5s^3+9s^2+4s+2) t^2 + (s^3+6s^2+3s+1) t + s^3
        return bipoly_from_rows({{0, 0, 0, 1}, {1, 3, 6, 1}, {-2, -4, -9, -5, -1}, {1}});
    }
    if (n == 18) {
        // (s^3+6s^2+9s+1) t^4 + (s^5+7s^4+20s^3+19s^2-8s-1) t^3
        //   - s^2(s^2+11s+28) t^2 - s^2(s^2+5s-8) t - s^2(s^2-s+1)
        return bipoly_from_rows({{0, 0, -1, 1, -1},
                                 {0, 0, 8, -5, -1},
                                 {0, 0, -28, -11, -1},
                                 {-1, -8, 19, 20, 7, 1},
                                 {1, 9, 6, 1}});
    }
    throw input_error("explicit order conditions are stored for n = 13, 18");
}

namespace {

BiPoly strip_known_factors(BiPoly f) {
    std::vector<BiPoly> known{
        BiPoly::constant(q_from_longs({0, 1})),  // s
        bipoly_t(),                              // t
        bipoly_t() - bipoly_const(Rational(1)),  // t - 1
        bipoly_t() + bipoly_const(Rational(1)),  // t + 1
        BiPoly::constant(q_from_longs({1, 1})),  // s + 1
        BiPoly::constant(q_from_longs({-1, 1})), // s - 1
        universal_disc_factor(),
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& g : known) {
            while (true) {
                auto q = bipoly_try_exact_div(f, g);
                if (!q || q->is_zero()) break;
                f = *q;
                progress = true;
            }
        }
    }
    return bipoly_primitive(f);
}

} // namespace

BiPoly phi_derive(unsigned n) {
    if (n < 7 || n > 18)
        throw input_error("phi_derive supports 7 <= n <= 18 (smaller orders degenerate in this chart)");
    static std::map<unsigned, BiPoly> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    BiRat s{bipoly_s()}, t{bipoly_t()};
    auto [C, P] = tate_universal(s, t);
    unsigned m = n / 2;
    std::vector<EPoint<BiRat>> mult(m + 2, EPoint<BiRat>::infinity(s));
    mult[1] = P;
    for (unsigned k = 2; k <= m + 1; ++k) mult[k] = C.add(mult[k - 1], P);

    BiRat raw_cond = s.zero();
    if (n % 2 == 1) {
        // order n = 2m+1: x(mP) = x((m+1)P)
        raw_cond = mult[m].x - mult[m + 1].x;
    } else {
        // order n = 2m: mP is 2-torsion
        raw_cond = C.psi2_at(mult[m]);
    }
    BiPoly result = strip_known_factors(bipoly_primitive(raw_cond.num()));
    memo.emplace(n, result);
    return result;
}

Rational phi_eval(unsigned n, const Rational& s, const Rational& t) {
    if (n == 13 || n == 18) return bipoly_eval(phi_explicit(n), s, t);
    return bipoly_eval(phi_derive(n), s, t);
}

PlaneModel uv_model(unsigned n) {
    PlaneModel m;
    if (n == 13) {
        m.name = "x1_13";
        m.qpoly = q_from_longs({1, 1, 2, 1});              // u^3 + 2u^2 + u + 1
        m.rpoly = q_from_longs({0, 0, 1, 1});              // u^2 (u+1)
        m.excluded = q_from_longs({0, -1, -3, -3, 0, 1});  // u(u+1)(u^3-u^2-4u-1)
        return m;
    }
    if (n == 18) {
        m.name = "x1_18";
        m.qpoly = q_from_longs({1, 3, 2, 1}); // u^3 + 2u^2 + 3u + 1
        m.rpoly = q_from_longs({0, 1, 2, 1}); // u (u+1)^2
        // u (u+1) (u^2+u+1) (u^3+3u^2-1)
        m.excluded = q_from_longs({0, 1, 1, 1}) * q_from_longs({-1, 0, 3, 1});
        m.excluded = m.excluded * q_from_longs({0, 1});
        m.excluded = m.excluded * q_from_longs({1, 1});
        return m;
    }
    throw input_error("plane models are available for n = 13, 18");
}

namespace {

// Elements of the function field Q(u)[v]/(v^2 - q(u) v + r(u)), the fraction
// field of the plane-model coordinate ring: (a(u) + b(u) v) / d(u).
struct ModelRing {
    QPoly q, r;
};

class ModelFn {
public:
    ModelFn() = default;
    ModelFn(std::shared_ptr<const ModelRing> R, QPoly a, QPoly b, QPoly d)
        : R_(std::move(R)), a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        normalize();
    }
    static ModelFn u_coord(std::shared_ptr<const ModelRing> R) {
        return ModelFn(std::move(R), QPoly::x(Rational(0)), QPoly(Rational(0)), QPoly::constant(Rational(1)));
    }
    static ModelFn v_coord(std::shared_ptr<const ModelRing> R) {
        return ModelFn(std::move(R), QPoly(Rational(0)), QPoly::constant(Rational(1)),
                       QPoly::constant(Rational(1)));
    }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_ == d_; }
    bool operator==(const ModelFn& o) const { return (*this - o).is_zero(); }
    bool operator!=(const ModelFn& o) const { return !(*this == o); }

    ModelFn zero() const { return ModelFn(R_, QPoly(Rational(0)), QPoly(Rational(0)), QPoly::constant(Rational(1))); }
    ModelFn one() const { return ModelFn(R_, QPoly::constant(Rational(1)), QPoly(Rational(0)), QPoly::constant(Rational(1))); }
    ModelFn from_long(long k) const {
        return ModelFn(R_, QPoly::constant(Rational(k)), QPoly(Rational(0)), QPoly::constant(Rational(1)));
    }

    ModelFn operator-() const { return ModelFn(R_, -a_, -b_, d_); }
    ModelFn operator+(const ModelFn& o) const {
        return ModelFn(R_, a_ * o.d_ + o.a_ * d_, b_ * o.d_ + o.b_ * d_, d_ * o.d_);
    }
    ModelFn operator-(const ModelFn& o) const { return *this + (-o); }
    ModelFn operator*(const ModelFn& o) const {
        // (a + bv)(a' + b'v) with v^2 = q v - r
        QPoly aa = a_ * o.a_ - b_ * o.b_ * R_->r;
        QPoly bb = a_ * o.b_ + b_ * o.a_ + b_ * o.b_ * R_->q;
        return ModelFn(R_, std::move(aa), std::move(bb), d_ * o.d_);
    }
    ModelFn& operator+=(const ModelFn& o) { return *this = *this + o; }
    ModelFn& operator-=(const ModelFn& o) { return *this = *this - o; }
    ModelFn& operator*=(const ModelFn& o) { return *this = *this * o; }
    ModelFn operator/(const ModelFn& o) const { return *this * o.inv(); }

    ModelFn inv() const {
        if (is_zero()) throw internal_error("ModelFn: inverse of zero");
        // conjugate: a + b(q - v); norm: a^2 + a b q + b^2 r in Q[u]
        QPoly norm = a_ * a_ + a_ * b_ * R_->q + b_ * b_ * R_->r;
        if (norm.is_zero()) throw internal_error("ModelFn: zero norm (relation reducible?)");
        return ModelFn(R_, (a_ + b_ * R_->q) * d_, -b_ * d_, norm);
    }

    std::string to_string() const {
        return "(" + poly_to_string(a_, "u") + " + (" + poly_to_string(b_, "u") + ")v)/(" +
               poly_to_string(d_, "u") + ")";
    }

private:
    void normalize() {
        if (d_.is_zero()) throw internal_error("ModelFn: zero denominator");
        QPoly g = poly_gcd(poly_gcd(a_, b_), d_);
        if (g.degree() > 0) {
            a_ = exact_div(a_, g);
            b_ = exact_div(b_, g);
            d_ = exact_div(d_, g);
        }
        if (!d_.is_zero() && !d_.lc().is_one()) {
            Rational c = d_.lc().inv();
            a_ = a_.scaled(c);
            b_ = b_.scaled(c);
            d_ = d_.scaled(c);
        }
    }
    std::shared_ptr<const ModelRing> R_;
    QPoly a_, b_, d_;
};

} // namespace

bool phi_vanishes_on_model(unsigned n) {
    auto model = uv_model(n);
    auto R = std::make_shared<const ModelRing>(ModelRing{model.qpoly, model.rpoly});
    ModelFn u = ModelFn::u_coord(R), v = ModelFn::v_coord(R);
    auto [s, t] = st_from_uv(n, u, v);
    auto scal = [&](const Rational& c) {
        return ModelFn(R, QPoly::constant(c), QPoly(Rational(0)), QPoly::constant(Rational(1)));
    };
    BiPoly phi = phi_explicit(n);
    ModelFn acc = u.zero();
    for (std::size_t i = phi.coeffs().size(); i-- > 0;) {
        const QPoly& cs = phi.coeff(i);
        ModelFn coeff = u.zero();
        for (std::size_t j = cs.coeffs().size(); j-- > 0;) coeff = coeff * s + scal(cs.coeff(j));
        acc = acc * t + coeff;
    }
    return acc.is_zero();
}

QPoly hyperelliptic_form(unsigned n) {
    // complete the square, then move to the chart at infinity (u -> e/u,
    // v -> v/u^3, e = -1 for n = 13 and +1 for n = 18), which is where the
    // positive-definite sextic presentation lives
    auto m = uv_model(n);
    QPoly h = m.qpoly * m.qpoly - m.rpoly.scaled(Rational(4));
    QPoly rev = h.reversed(7);
    if (n == 13) {
        std::vector<Rational> c;
        for (long i = 0; i <= rev.degree(); ++i) {
            Rational ci = rev.coeff(static_cast<std::size_t>(i));
            c.push_back(i % 2 ? -ci : ci);
        }
        rev = QPoly(Rational(0), std::move(c));
    }
    return rev;
}

FamilyMember family_curve(unsigned n, const Rational& c) {
    if (n != 13 && n != 18) throw input_error("family_curve: n must be 13 or 18");
    auto model = uv_model(n);
    FamilyMember fam;
    fam.n = n;
    fam.c = c;
    if (model.excluded.eval(c).is_zero())
        throw input_error("family_curve: c lies on the excluded locus");
    Rational qc = model.qpoly.eval(c), rc = model.rpoly.eval(c);
    Rational disc = qc * qc - Rational(4) * rc;
    if (disc.is_zero()) throw input_error("family_curve: degenerate fiber");
    if (disc.sqrt()) {
        fam.split = true; // etale algebra Q x Q; no quadratic field to build
        return fam;
    }
    // L = Q[v]/(v^2 - q(c) v + r(c))
    QPoly f(Rational(0), {rc, -qc, Rational(1)});
    fam.L = make_number_field(f, "fiber(" + std::to_string(n) + ", c=" + c.to_string() + ")");
    NFElem v0 = NFElem::gen(fam.L);
    NFElem u0 = NFElem::from_rational(fam.L, c);
    auto [s, t] = st_from_uv(n, u0, v0);
    auto [curve, marked] = tate_universal(s, t);
    fam.curve = curve;
    fam.marked = marked;
    auto bound = torsion_bound(curve, 5, 2ULL * n);
    auto ord = point_order(curve, marked, bound.bound);
    if (!ord) throw verify_error("family_curve: marked point has infinite order?");
    fam.marked_order = *ord;
    if (*ord != Integer(static_cast<unsigned long long>(n)))
        throw verify_error("family_curve: marked point has order " + ord->to_string() +
                           ", expected " + std::to_string(n));
    return fam;
}

int FalseCMOperator::expected_square(unsigned n) {
    switch (n) {
    case 13: return -1;
    case 16: return 1;
    case 18: return -2;
    default: throw input_error("false CM applies to n = 13, 16, 18");
    }
}

FalseCMOperator FalseCMOperator::build(unsigned n, const ECurve<NFElem>& C) {
    expected_square(n);
    const NumberField& K = C.a1.field();
    if (K->degree != 2) throw input_error("false CM operator needs a quadratic base field");
    auto autos = automorphisms(K);
    if (autos.size() != 2) throw internal_error("quadratic field without conjugation");
    const FieldAutomorphism sigma = autos[1];
    ECurve<NFElem> Cs = galois_apply(sigma, C);
    auto jC = C.j();
    if (jC.is_rational()) {
        Rational j = jC.rational_value();
        if (j.is_zero() || j == Rational(1728))
            throw input_error("false CM operator: j in {0, 1728} is ambiguous");
    }
    if (n == 13 || n == 16) {
        auto iso = find_isomorphism(Cs, C, sqrt_hook<NFElem>(), cuberoots_hook<NFElem>());
        if (!iso)
            throw verify_error("conjugate curve is not isomorphic to the curve (false CM violated)");
        return FalseCMOperator(n, C, sigma, std::nullopt, *iso);
    }
    // n = 18: quotient the conjugate curve by its rational 2-torsion point
    auto twos = points_of_order(Cs, 2);
    if (twos.empty()) throw verify_error("false CM(18): no rational 2-torsion on the conjugate curve");
    for (const auto& T : twos) {
        auto phi = velu2(Cs, T);
        auto iso = find_isomorphism(phi.codomain, C, sqrt_hook<NFElem>(), cuberoots_hook<NFElem>());
        if (iso) return FalseCMOperator(n, C, sigma, phi, *iso);
    }
    throw verify_error("false CM(18): no 2-isogeny quotient of the conjugate curve is isomorphic "
                       "to the curve (false CM violated)");
}

EPoint<NFElem> FalseCMOperator::operator()(const EPoint<NFElem>& Q) const {
    EPoint<NFElem> img = galois_apply(sigma_, Q);
    if (quotient_) img = quotient_->apply(img);
    return iso_.apply(img);
}

FalseCMData false_cm_verify(unsigned n, const ECurve<NFElem>& C, const EPoint<NFElem>& marked,
                            const std::vector<EPoint<NFElem>>& extra) {
    FalseCMData data;
    data.n = n;
    data.a = FalseCMOperator::expected_square(n);
    auto t = FalseCMOperator::build(n, C);
    std::vector<EPoint<NFElem>> samples;
    EPoint<NFElem> acc = marked;
    for (int k = 1; k <= 5; ++k) {
        samples.push_back(acc);
        acc = C.add(acc, marked);
    }
    for (const auto& Q : extra) {
        samples.push_back(Q);
        samples.push_back(C.add(Q, marked));
    }
    for (const auto& Q : samples) {
        if (!C.on_curve(Q)) throw input_error("false_cm_verify: sample not on curve");
        EPoint<NFElem> lhs = t(t(Q));
        EPoint<NFElem> rhs = C.mul(Integer(static_cast<long long>(data.a)), Q);
        if (!(lhs == rhs)) {
            data.detail = "t(t(Q)) != aQ at a sample point";
            return data;
        }
        ++data.samples_checked;
    }
    // spot-check the homomorphism property on pairs of samples
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        auto left = t(C.add(samples[i], samples[i + 1]));
        auto right = C.add(t(samples[i]), t(samples[i + 1]));
        if (!(left == right)) {
            data.detail = "t is not additive on a sample pair";
            return data;
        }
    }
    data.homomorphism_checked = true;
    data.ok = true;
    return data;
}

SecondGeneratorReport second_generator_18(const ECurve<NFElem>& C, const EPoint<NFElem>& Q) {
    auto t = FalseCMOperator::build(18, C);
    SecondGeneratorReport rep{t(Q), false, false};
    auto cert = certify_infinite(C, rep.point, "t(Q)");
    rep.infinite_certified = cert.ok;
    if (!cert.ok) throw verify_error("second_generator_18: t(Q) is torsion; the module structure fails");
    auto ind = bounded_independence(C, {Q, rep.point}, 3);
    rep.independent = ind.ok;
    return rep;
}

Integer cusp_divisor_count(unsigned k, unsigned d) {
    if (k == 0) return d == 0 ? Integer(1) : Integer(0);
    return Integer::binomial(k + d - 1, d);
}

X15Report x15_checks() {
    X15Report rep;
    // model of X1(15): y^2 + xy + y = x^3 + x^2 over Q(sqrt 5)
    auto K = quadratic_field(Integer(5));
    auto one = NFElem::from_rational(K, Rational(1));
    auto zero = NFElem::from_rational(K, Rational(0));
    ECurve<NFElem> X15(one, one, one, zero, zero);
    auto bound = torsion_bound(X15, 5, 2);
    // order-8 point built by halving the 2-torsion twice
    auto bigpts = points_of_prime_power_order(X15, 2, 3);
    if (bigpts.empty()) {
        rep.detail = "no order-8 point found on the X1(15) model";
        return rep;
    }
    auto ord = point_order(X15, bigpts.front(), bound.bound);
    rep.model_torsion_contains_z8 = ord && *ord == Integer(8);

    // the unique curve with a 15-torsion point over Q(sqrt 5)
    NFElem w = NFElem::gen(K);
    NFElem a4 = w.scaled(Rational(281880)) - NFElem::from_rational(K, Rational(630315));
    NFElem a6 = NFElem::from_rational(K, Rational(328392630)) - w.scaled(Rational(146861640));
    ECurve<NFElem> E(zero, zero, zero, a4, a6);
    EPoint<NFElem> P = EPoint<NFElem>::affine(
        NFElem::from_rational(K, Rational(315)) - w.scaled(Rational(132)),
        NFElem::from_rational(K, Rational(5400)) - w.scaled(Rational(2376)));
    auto bnd = torsion_bound(E, 5, 30);
    auto ordP = point_order(E, P, bnd.bound);
    rep.point_order_15 = ordP && *ordP == Integer(15);

    // over Q(i, sqrt 5) the curve acquires a point of infinite order
    auto K4 = compositum_quadratics(Integer(-1), Integer(5));
    auto i_roots = roots_in_K(to_K_poly(K4, q_from_longs({1, 0, 1})));
    auto s5_roots = roots_in_K(to_K_poly(K4, q_from_longs({-5, 0, 1})));
    if (i_roots.empty() || s5_roots.empty()) {
        rep.detail = "could not locate i and sqrt(5) in the compositum";
        return rep;
    }
    NFElem I = i_roots.front(), S5 = s5_roots.front();
    auto lift = [&](long rat, long co) { return NFElem::from_rational(K4, Rational(rat)) + S5.scaled(Rational(co)); };
    ECurve<NFElem> E4(I.zero(), I.zero(), I.zero(), lift(-630315, 281880), lift(328392630, -146861640));
    EPoint<NFElem> R = EPoint<NFElem>::affine(lift(-675, 300), (S5.scaled(Rational(2052)) - lift(4590, 0)) * I);
    if (!E4.on_curve(R)) {
        rep.detail = "quartic point is not on the curve";
        return rep;
    }
    auto cert = certify_infinite(E4, R, "x15-quartic-point");
    rep.quartic_point_infinite = cert.ok;

    rep.ok = rep.model_torsion_contains_z8 && rep.point_order_15 && rep.quartic_point_infinite;
    if (!rep.ok && rep.detail.empty()) rep.detail = "one of the three checks failed";
    return rep;
}

} // namespace tlab
