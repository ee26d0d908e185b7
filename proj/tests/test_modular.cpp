#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/fieldops.hpp"
#include "core/modular.hpp"
#include "core/primes.hpp"

using namespace tlab;

TEST_CASE("universal curve discriminant display") {
    BiRat s{bipoly_s()}, t{bipoly_t()};
    auto [C, P] = tate_universal(s, t);
    CHECK(C.on_curve(P));
    // disc = -s^4 t^3 (t-1)^5 (s(s+4)^2 t^2 - s(2s^2+5s+20) t + (s-1)^3)
    BiRat expect = -(s * s * s * s) * (t * t * t);
    BiRat tm1 = t - t.one();
    for (int i = 0; i < 5; ++i) expect *= tm1;
    BiRat D{universal_disc_factor()};
    expect *= D;
    CHECK(C.disc == expect);

    // s = 0 is singular
    CHECK_THROWS_AS(tate_universal(Rational(0), Rational(5)), input_error);
    // a generic rational point is fine
    CHECK_NOTHROW(tate_universal(Rational(1), Rational(3)));
}

TEST_CASE("explicit order conditions") {
    // phi_13(0, t) = t^3 - 2t^2 + t
    auto phi13 = phi_explicit(13);
    QPoly spec0(Rational(0));
    for (long i = 3; i >= 0; --i)
        spec0 = spec0.shifted_up(1) + QPoly::constant(phi13.coeff(static_cast<std::size_t>(i)).coeff(0));
    CHECK(spec0 == q_from_longs({0, 1, -2, 1}));
    CHECK(degree_t(phi_explicit(18)) == 4);
}

TEST_CASE("derived order conditions match the explicit ones") {
    CHECK(bipoly_proportional(phi_derive(13), phi_explicit(13)));
    CHECK(bipoly_proportional(phi_derive(18), phi_explicit(18)));
}

TEST_CASE("order condition cross-check over F_101") {
    // over F_p, off the discriminant locus, phi_n(s,t) = 0 iff (0,0) has order n
    const std::uint64_t p = 101;
    for (unsigned n : {10u, 13u, 18u}) {
        BiPoly phi = (n == 13 || n == 18) ? phi_explicit(n) : phi_derive(n);
        int matches = 0;
        for (std::uint64_t si = 0; si < p; ++si) {
            for (std::uint64_t ti = 0; ti < p; ++ti) {
                Fp64 s(si, p), t(ti, p);
                Fp64 phival = s.zero();
                for (std::size_t i = phi.coeffs().size(); i-- > 0;) {
                    Fp64 cs = s.zero();
                    const auto& row = phi.coeff(i);
                    for (std::size_t j = row.coeffs().size(); j-- > 0;)
                        cs = cs * s + Fp64::from_rational(row.coeff(j), p);
                    phival = phival * t + cs;
                }
                bool order_is_n = false;
                try {
                    auto [C, P] = tate_universal(s, t);
                    order_is_n = C.mul(static_cast<long>(n), P).inf;
                    for (unsigned d = 1; d < n && order_is_n; ++d)
                        if (n % d == 0 && C.mul(static_cast<long>(d), P).inf) order_is_n = false;
                } catch (const input_error&) {
                    continue; // singular specialization
                }
                if (order_is_n) {
                    ++matches;
                    CHECK(phival.is_zero());
                }
                if (phival.is_zero()) CHECK(order_is_n);
            }
        }
        CHECK(matches > 0);
    }
}

TEST_CASE("uv model round trips over F_101") {
    const std::uint64_t p = 101;
    for (unsigned n : {13u, 18u}) {
        auto model = uv_model(n);
        Rng rng(n * 7919);
        int done = 0;
        while (done < 20) {
            Fp64 u(rng.below(p), p);
            if (reduce_mod_p(model.excluded, p).eval(u).is_zero()) continue;
            // solve v^2 - q(u) v + r(u) = 0
            Fp64 qv = reduce_mod_p(model.qpoly, p).eval(u);
            Fp64 rv = reduce_mod_p(model.rpoly, p).eval(u);
            Fp64 disc = qv * qv - u.from_long(4) * rv;
            auto sd = disc.sqrt();
            if (!sd) continue;
            Fp64 v = (qv + *sd) * u.from_long(2).inv();
            try {
                auto [s, t] = st_from_uv(n, u, v);
                auto [u2, v2] = uv_from_st(n, s, t);
                CHECK(u2 == u);
                CHECK(v2 == v);
                // the explicit order condition vanishes at (s,t)
                BiPoly phi = phi_explicit(n);
                Fp64 phival = s.zero();
                for (std::size_t i = phi.coeffs().size(); i-- > 0;) {
                    Fp64 cs = s.zero();
                    const auto& row = phi.coeff(i);
                    for (std::size_t j = row.coeffs().size(); j-- > 0;)
                        cs = cs * s + Fp64::from_rational(row.coeff(j), p);
                    phival = phival * t + cs;
                }
                CHECK(phival.is_zero());
                ++done;
            } catch (const internal_error&) {
                continue; // division by zero off the good locus
            }
        }
    }
}

TEST_CASE("phi vanishes on the plane model identically") {
    CHECK(phi_vanishes_on_model(13));
    CHECK(phi_vanishes_on_model(18));
}

TEST_CASE("hyperelliptic forms") {
    CHECK(hyperelliptic_form(13) == q_from_longs({1, -4, 6, -2, 1, -2, 1}));
    CHECK(hyperelliptic_form(18) == q_from_longs({1, 4, 10, 10, 5, 2, 1}));
    CHECK(sturm_positive_definite(hyperelliptic_form(13)));
    CHECK(sturm_positive_definite(hyperelliptic_form(18)));
}

TEST_CASE("family specialization") {
    // c = 2: L = Q[v]/(v^2 - 19 v + 12)
    auto fam2 = family_curve(13, Rational(2));
    REQUIRE(!fam2.split);
    CHECK(fam2.L->f == q_from_longs({12, -19, 1}));
    CHECK(fam2.marked_order == Integer(13));

    // c = 1: discriminant class 17, matching the (1,13) quadratic-table field
    auto fam1 = family_curve(13, Rational(1));
    Rational disc = discriminant_q(fam1.L->f);
    CHECK((disc * Rational(17)).sqrt().has_value());

    CHECK_THROWS_AS(family_curve(13, Rational(0)), input_error);
    CHECK_THROWS_AS(family_curve(13, Rational(-1)), input_error);
    CHECK_THROWS_AS(family_curve(18, Rational(0)), input_error);

    auto fam18 = family_curve(18, Rational(2));
    REQUIRE(!fam18.split);
    CHECK(fam18.marked_order == Integer(18));
}

TEST_CASE("false CM identities on family fibers") {
    // n = 13: t^2 = -1; in particular t^2((0,0)) = (0,-b)
    for (long cc : {2, 3, 5}) {
        auto fam = family_curve(13, Rational(cc));
        auto data = false_cm_verify(13, *fam.curve, *fam.marked);
        CHECK(data.ok);
        CHECK(data.a == -1);
        auto t = FalseCMOperator::build(13, *fam.curve);
        auto twice = t(t(*fam.marked));
        CHECK(twice == fam.curve->neg(*fam.marked));
        CHECK(twice == EPoint<NFElem>::affine(fam.marked->x, -fam.curve->a3));
    }
    // n = 18: t^2 = -2
    for (long cc : {2, 3}) {
        auto fam = family_curve(18, Rational(cc));
        auto data = false_cm_verify(18, *fam.curve, *fam.marked);
        CHECK(data.ok);
        CHECK(data.a == -2);
    }
}

TEST_CASE("false CM on the Z/16 curve over Q(sqrt 10)") {
    auto K = quadratic_field(Integer(10));
    NFElem w = NFElem::gen(K);
    NFElem a = NFElem::from_rational(K, Rational(121)) + w.scaled(Rational(39));
    NFElem b = -(NFElem::from_rational(K, Rational(3510)) + w.scaled(Rational(1107)));
    auto [C, P] = curve_from_tate(a, b);
    auto bound = torsion_bound(C, 5, 32);
    auto ord = point_order(C, P, bound.bound);
    REQUIRE(ord.has_value());
    CHECK(*ord == Integer(16));

    // the conjugate curve is isomorphic over the field
    auto sigma = automorphisms(K)[1];
    auto Cs = galois_apply(sigma, C);
    CHECK(find_isomorphism(Cs, C, sqrt_hook<NFElem>(), cuberoots_hook<NFElem>()).has_value());

    auto data = false_cm_verify(16, C, P);
    CHECK(data.ok);
    CHECK(data.a == 1);
}

TEST_CASE("second generator from the Z[sqrt -2] action") {
    // the (1,18) positive-rank row: f = x^2 + 163 x + 12
    auto K = make_number_field(q_from_longs({12, 163, 1}));
    auto mk = [&](const std::string& c0, const std::string& c1) {
        return NFElem(K, {Rational(c0), Rational(c1)});
    };
    auto [C, P] = curve_from_tate(mk("2071/216", "25105/216"), mk("46752805/7776", "634768555/7776"));
    // the marked point generates only the order-9 part here; the full Z/18
    // certificate assembles the missing 2-torsion part
    auto bound = torsion_bound(C, 5, 36);
    auto ord = point_order(C, P, bound.bound);
    REQUIRE(ord.has_value());
    CHECK(*ord == Integer(9));
    CHECK(certify_torsion(C, 1, 18, P, "t4-(1,18)").ok);

    EPoint<NFElem> Q = EPoint<NFElem>::affine(mk("223/486", "3673/486"), mk("11056609/8748", "150110959/8748"));
    REQUIRE(C.on_curve(Q));
    CHECK(certify_infinite(C, Q, "first-listed").ok);

    auto rep = second_generator_18(C, Q);
    CHECK(rep.infinite_certified);
    CHECK(rep.independent);

    // the listed second point is also certified non-torsion
    EPoint<NFElem> R = EPoint<NFElem>::affine(mk("-8293/6", "-112579/6"), mk("-221775913/288", "-3011095399/288"));
    REQUIRE(C.on_curve(R));
    CHECK(certify_infinite(C, R, "second-listed").ok);
}

TEST_CASE("cusp divisor counts") {
    CHECK(cusp_divisor_count(6, 2) == Integer(21));
    CHECK(cusp_divisor_count(6, 2) + Integer(2) == Integer(23));
    CHECK(cusp_divisor_count(10, 2) == Integer(55));
    CHECK(cusp_divisor_count(10, 3) == Integer(220));
    CHECK(cusp_divisor_count(10, 4) == Integer(715));
}

TEST_CASE("x1(15) checks") {
    auto rep = x15_checks();
    CHECK(rep.model_torsion_contains_z8);
    CHECK(rep.point_order_15);
    CHECK(rep.quartic_point_infinite);
    CHECK(rep.ok);
}
