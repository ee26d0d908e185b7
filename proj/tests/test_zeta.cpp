#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/curvemaps.hpp"
#include "core/primes.hpp"
#include "core/zeta.hpp"

using namespace tlab;

namespace {

ECurve<Rational> e1_curve() {
    return ECurve<Rational>(Rational(0), Rational(0), Rational(0), Rational("-17811145/19683"),
                            Rational("-81827811574/14348907"));
}

PlaneModel x1_13_model() {
    PlaneModel m;
    m.name = "x1_13";
    m.qpoly = q_from_longs({1, 1, 2, 1});      // u^3 + 2u^2 + u + 1
    m.rpoly = q_from_longs({0, 0, 1, 1});      // u^2 (u + 1)
    m.excluded = q_from_longs({0, -1, -3, -3, 0, 1}); // u(u+1)(u^3 - u^2 - 4u - 1)
    return m;
}

PlaneModel x1_18_model() {
    PlaneModel m;
    m.name = "x1_18";
    m.qpoly = q_from_longs({1, 3, 2, 1});      // u^3 + 2u^2 + 3u + 1
    m.rpoly = q_from_longs({0, 1, 2, 1});      // u (u + 1)^2
    return m;
}

bool hasse_ok(std::uint64_t n, std::uint64_t q) {
    // (n - q - 1)^2 <= 4q
    long long d = static_cast<long long>(n) - static_cast<long long>(q) - 1;
    return d * d <= 4 * static_cast<long long>(q);
}

} // namespace

TEST_CASE("elliptic enumeration basics") {
    Fp64 pr(0, 5);
    ECurve<Fp64> C(pr.zero(), pr.zero(), pr.zero(), pr.zero(), pr.one()); // y^2 = x^3 + 1 / F_5
    CHECK(count_elliptic_enum(C) == 6);

    // char 2 and 3 handled by the trace test
    Fp64 p2(0, 2);
    ECurve<Fp64> C2(p2.one(), p2.zero(), p2.zero(), p2.zero(), p2.one()); // y^2+xy = x^3+1 / F_2
    std::uint64_t direct = 1;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            if (C2.on_curve(EPoint<Fp64>::affine(p2.from_long(x), p2.from_long(y)))) ++direct;
    CHECK(count_elliptic_enum(C2) == direct);

    CHECK(hasse_ok(count_elliptic_enum(C), 5));
}

TEST_CASE("bsgs agrees with enumeration") {
    Rng rng(0xc0047ULL);
    auto& PT = PrimeTable::instance();
    int done = 0;
    std::size_t pi = 90; // start above 457
    while (PT.nth(pi) < 458) ++pi;
    while (done < 200) {
        std::uint64_t p = PT.nth(pi + rng.below(1000)); // p in (457, ~10^4)
        try {
            Fp64 pr(0, p);
            ECurve<Fp64> C(pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))));
            auto n_enum = count_elliptic_enum(C);
            auto n_bsgs = count_elliptic_bsgs(C);
            CHECK(n_enum == n_bsgs);
            CHECK(hasse_ok(n_bsgs, p));
            ++done;
        } catch (const input_error&) {
            continue; // singular pick
        }
    }

    // spec example: y^2 = x^3 + 3 over F_1009
    Fp64 pr(0, 1009);
    ECurve<Fp64> C(pr.zero(), pr.zero(), pr.zero(), pr.zero(), pr.from_long(3));
    CHECK(count_elliptic_bsgs(C) == count_elliptic_enum(C));
}

TEST_CASE("counting over extension fields") {
    auto F9 = FqCtx::extension(3, 2);
    Fq64 z = Fq64::scalar(F9, 0);
    ECurve<Fq64> C(z.zero(), z.zero(), z.zero(), z.one(), z.one());
    auto n = count_elliptic_enum(C);
    CHECK(hasse_ok(n, 9));
    CHECK(count_points(C) == n);

    // degree-1 ctx delegates to the prime-field path
    auto F13 = FqCtx::prime_field(13);
    Fq64 z13 = Fq64::scalar(F13, 0);
    ECurve<Fq64> C13(z13.zero(), z13.zero(), z13.zero(), z13.one(), z13.zero());
    Fp64 pr(0, 13);
    ECurve<Fp64> Cp(pr.zero(), pr.zero(), pr.zero(), pr.one(), pr.zero());
    CHECK(count_points(C13) == count_elliptic_enum(Cp));
}

TEST_CASE("example curve structures at 61, 67, 73") {
    auto E1 = e1_curve();
    for (std::uint64_t p : {61ULL, 67ULL, 73ULL}) {
        auto Cp = reduce_curve(E1, p);
        REQUIRE(Cp.has_value());
        CHECK(count_points(*Cp) == 72);
        auto [m, n] = group_structure(*Cp);
        CHECK(m == 6);
        CHECK(n == 12);
    }
}

TEST_CASE("group structure generic properties") {
    Rng rng(321);
    int done = 0;
    while (done < 60) {
        std::uint64_t p = PrimeTable::instance().nth(4 + rng.below(40));
        try {
            Fp64 pr(0, p);
            ECurve<Fp64> C(pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))),
                           pr.from_long(static_cast<long>(rng.below(p))));
            auto N = count_points(C);
            auto [m, n] = group_structure(C);
            CHECK(m * n == N);
            CHECK(n % m == 0);
            CHECK((p - 1) % m == 0);
            ++done;
        } catch (const input_error&) {
            continue;
        }
    }

    // prime order means cyclic
    Fp64 pr(0, 23);
    ECurve<Fp64> C(pr.zero(), pr.zero(), pr.zero(), pr.one(), pr.one());
    auto N = count_points(C);
    auto [m, n] = group_structure(C);
    CHECK(m * n == N);
    if (is_prime_u64(N)) CHECK(m == 1);
}

TEST_CASE("genus-2 chart counting vs direct oracle") {
    // v^2 = u^6 + 1 over F_7, both charts, against a double loop
    PlaneModel m;
    m.name = "oracle";
    m.qpoly = QPoly(Rational(0));
    m.rpoly = q_from_longs({-1, 0, 0, 0, 0, 0, -1}); // v^2 - 0*v + r = 0 <=> v^2 = u^6+1
    auto res = count_genus2(m, 7, 1);
    std::uint64_t affine = 0;
    for (int u = 0; u < 7; ++u)
        for (int v = 0; v < 7; ++v)
            if ((v * v) % 7 == (static_cast<long long>(std::pow(u, 6)) + 1) % 7) ++affine;
    CHECK(res.affine == affine);
    // lc(u^6+1) = 1 is a square: two points at infinity
    CHECK(res.at_infinity == 2);

    // hyperelliptic cross-check (odd characteristic)
    auto res2 = count_genus2_hyperelliptic(m, 7, 1);
    CHECK(res2.count == res.count);
}

TEST_CASE("x1(13) over F_2 and x1(18) over F_5 zeta numerators") {
    auto m13 = x1_13_model();
    auto r1 = count_genus2(m13, 2, 1);
    auto r2 = count_genus2(m13, 2, 2);
    auto z13 = zeta_numerator_genus2(r1.count, r2.count, 2);
    CHECK(z13.coeffs == std::vector<Integer>{Integer(1), Integer(3), Integer(5), Integer(6), Integer(4)});
    CHECK(z13.at1() == Integer(19));

    auto m18 = x1_18_model();
    auto s1 = count_genus2(m18, 5, 1);
    auto s2 = count_genus2(m18, 5, 2);
    auto z18 = zeta_numerator_genus2(s1.count, s2.count, 5);
    CHECK(z18.coeffs == std::vector<Integer>{Integer(1), Integer(0), Integer(-5), Integer(0), Integer(25)});
    CHECK(z18.at1() == Integer(21));

    // functional-equation shape holds by construction; verify on the outputs
    CHECK(z13.coeffs[3] == Integer(2) * z13.coeffs[1]);
    CHECK(z13.coeffs[4] == Integer(4));

    // chart-form invariance for q in {5, 25}
    auto h1 = count_genus2_hyperelliptic(m18, 5, 1);
    auto h2 = count_genus2_hyperelliptic(m18, 5, 2);
    CHECK(h1.count == s1.count);
    CHECK(h2.count == s2.count);
    auto h13 = count_genus2_hyperelliptic(m13, 5, 1);
    auto c13 = count_genus2(m13, 5, 1);
    CHECK(h13.count == c13.count);

    // trivial numerator case
    auto zt = zeta_numerator_genus2(8, 50, 7);
    CHECK(zt.coeffs == std::vector<Integer>{Integer(1), Integer(0), Integer(0), Integer(0), Integer(49)});
}
