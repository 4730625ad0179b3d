#include <doctest.h>

#include "elemex/ring.hpp"

using namespace elemex;

TEST_CASE("integer and rational basics") {
    Ring z = integers();
    CHECK(eq(add(from_int(z, 2), from_int(z, 3)), from_int(z, 5)));
    CHECK(is_zero(sub(from_int(z, 7), from_int(z, 7))));
    CHECK(eq(mul(from_int(z, -4), from_int(z, 6)), from_int(z, -24)));

    Ring q = rationals();
    Elem half = make_rational(q, 1, 2);
    CHECK(eq(add(half, half), one(q)));
    CHECK(*is_unit(half));
    CHECK_FALSE(*is_unit(from_int(z, 2)));
}

TEST_CASE("residue ring arithmetic and division") {
    Ring z7 = integers_mod(7);
    CHECK(eq(add(from_int(z7, 5), from_int(z7, 4)), from_int(z7, 2)));
    auto q = try_divide(from_int(z7, 3), from_int(z7, 5));
    REQUIRE(q);
    CHECK(eq(mul(*q, from_int(z7, 5)), from_int(z7, 3)));

    Ring z12 = integers_mod(12);
    CHECK_FALSE(try_divide(from_int(z12, 3), from_int(z12, 4)));
    auto q2 = try_divide(from_int(z12, 6), from_int(z12, 2));
    REQUIRE(q2);
    CHECK(eq(mul(*q2, from_int(z12, 2)), from_int(z12, 6)));
}

TEST_CASE("polynomial arithmetic and substitution") {
    Ring zx = polynomial_ring(integers(), {"X"});
    Elem X = variable(zx, "X");
    Elem p = add(mul(X, X), one(zx));  // X^2 + 1

    SUBCASE("monomial image") {
        Ring zxt = polynomial_ring(integers(), {"X", "T"});
        Elem sq = mul(variable(zx, "X"), variable(zx, "X"));
        Elem moved = transport_poly(sq, zxt);
        Elem img = substitute(moved, {{"X", mul(variable(zxt, "X"), variable(zxt, "T"))}});
        CHECK(eq(img, mul(mul(variable(zxt, "X"), variable(zxt, "X")),
                          mul(variable(zxt, "T"), variable(zxt, "T")))));
    }
    SUBCASE("evaluation at zero") {
        Elem r = substitute(add(X, one(zx)), {{"X", zero(zx)}});
        CHECK(eq(r, one(zx)));
    }
    SUBCASE("expand by hand: X^3+2X at X->2X") {
        Elem p3 = add(mul(mul(X, X), X), mul(from_int(zx, 2), X));
        Elem img = substitute(p3, {{"X", mul(from_int(zx, 2), X)}});
        Elem expect = add(mul(from_int(zx, 8), mul(mul(X, X), X)), mul(from_int(zx, 4), X));
        CHECK(eq(img, expect));
    }
    SUBCASE("substitution composes") {
        Elem s1 = substitute(p, {{"X", add(X, one(zx))}});
        Elem s2 = substitute(s1, {{"X", mul(X, X)}});
        Elem direct = substitute(p, {{"X", add(mul(X, X), one(zx))}});
        CHECK(eq(s2, direct));
    }
    SUBCASE("exact division") {
        Elem prod = mul(p, add(X, from_int(zx, 3)));
        auto q = try_divide(prod, p);
        REQUIRE(q);
        CHECK(eq(*q, add(X, from_int(zx, 3))));
        CHECK_FALSE(try_divide(add(p, one(zx)), p));
    }
}

TEST_CASE("localization canonical form and equality") {
    Ring z = integers();
    Ring z2 = localized_ring(z, from_int(z, 2));
    Elem a = make_localized(z2, from_int(z, 12), 2);  // 12/4 -> 3/1
    CHECK(loc_data(a).k == 0);
    CHECK(eq(a, from_int(z2, 3)));
    Elem b = make_localized(z2, from_int(z, 3), 2);
    Elem c = make_localized(z2, from_int(z, 6), 3);
    CHECK(eq(b, c));
    CHECK(eq(add(b, b), make_localized(z2, from_int(z, 3), 1)));
    CHECK(denominator_exponent(b) == 2);

    SUBCASE("base -> localized is injective on random elements") {
        std::uint64_t s = 42;
        for (int i = 0; i < 500; ++i) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            Int v = Int(s % 20011) - 10005;
            Elem lifted = embed(from_int(z, v), z2);
            CHECK(eq(delocalize(lifted, z), from_int(z, v)));
        }
    }
}

TEST_CASE("excision ring multiplication and phi") {
    Ring z = integers();
    auto unit_ideal = make_ideal(z, {one(z)});
    Ring e = excision_ring(z, unit_ideal);

    auto exc = [&](Int r, Int i) {
        return make_excision(e, from_int(z, r), ideal_gen_multiple(unit_ideal, 0, from_int(z, i)));
    };
    // (2 (+) 3)(5 (+) 7) = (10 (+) 50): 5*3 + 2*7 + 3*7 = 50
    Elem prod = mul(exc(2, 3), exc(5, 7));
    CHECK(eq(exc_data(prod).r, from_int(z, 10)));
    CHECK(eq(ideal_elem_value(exc_data(prod).i), from_int(z, 50)));

    CHECK(eq(mul(one(e), exc(4, 9)), exc(4, 9)));
    CHECK(is_zero(mul(exc(4, 9), zero(e))));

    CHECK(eq(phi(one(e)), one(z)));
    CHECK(eq(phi(exc(2, 3)), from_int(z, 5)));
    CHECK(eq(phi(mul(exc(2, 3), exc(5, 7))), mul(phi(exc(2, 3)), phi(exc(5, 7)))));
    CHECK(eq(phi(mul(exc(2, 3), exc(5, 7))), from_int(z, 60)));
}

TEST_CASE("ideal element linearity") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});
    auto w = ideal_gen_multiple(i3, 0, one(z));
    CHECK(eq(ideal_elem_value(w), from_int(z, 3)));

    Ring zx = polynomial_ring(z, {"X"});
    auto i3x = extend_ideal(i3, zx);
    Elem X = variable(zx, "X");
    auto wx = ideal_gen_multiple(i3x, 0, add(X, one(zx)));
    auto scaled = ideal_elem_scale(X, wx);
    CHECK(eq(ideal_elem_value(scaled), add(mul(from_int(zx, 3), mul(X, X)), mul(from_int(zx, 3), X))));

    auto w2 = ideal_gen_multiple(i3, 0, from_int(z, 2));
    CHECK(is_zero(ideal_elem_value(ideal_elem_add(w2, ideal_elem_neg(w2)))));
}

TEST_CASE("membership decisions") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});
    auto m = decide_membership(from_int(z, 6), i3);
    REQUIRE(std::holds_alternative<IdealElem>(m));
    CHECK(eq(ideal_elem_value(std::get<IdealElem>(m)), from_int(z, 6)));
    CHECK(std::holds_alternative<NotMember>(decide_membership(one(z), i3)));
    CHECK(std::holds_alternative<IdealElem>(decide_membership(zero(z), i3)));

    auto i46 = make_ideal(z, {from_int(z, 4), from_int(z, 6)});
    auto m2 = decide_membership(from_int(z, 10), i46);
    REQUIRE(std::holds_alternative<IdealElem>(m2));
    CHECK(eq(ideal_elem_value(std::get<IdealElem>(m2)), from_int(z, 10)));

    Ring qx = polynomial_ring(rationals(), {"X"});
    Elem X = variable(qx, "X");
    auto ix = make_ideal(qx, {X});
    auto m3 = decide_membership(mul(X, add(X, one(qx))), ix);
    REQUIRE(std::holds_alternative<IdealElem>(m3));
    CHECK(std::holds_alternative<NotMember>(decide_membership(add(X, one(qx)), ix)));

    // multivariate: trial division only
    Ring qxy = polynomial_ring(rationals(), {"X", "Y"});
    Elem Y = variable(qxy, "Y");
    auto iy = make_ideal(qxy, {Y});
    CHECK(std::holds_alternative<IdealElem>(
        decide_membership(mul(Y, variable(qxy, "X")), iy)));
    CHECK(std::holds_alternative<Undecidable>(
        decide_membership(add(variable(qxy, "X"), one(qxy)), iy)));
}

TEST_CASE("ring axioms hold on random triples for each variant") {
    std::uint64_t s = 7;
    auto rnd = [&]() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    };
    auto check_axioms = [&](const Ring& r, const std::function<Elem()>& gen) {
        for (int i = 0; i < 500; ++i) {
            Elem a = gen(), b = gen(), c = gen();
            CHECK(eq(add(a, b), add(b, a)));
            CHECK(eq(mul(a, b), mul(b, a)));
            CHECK(eq(add(add(a, b), c), add(a, add(b, c))));
            CHECK(eq(mul(mul(a, b), c), mul(a, mul(b, c))));
            CHECK(eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
            CHECK(eq(mul(a, one(r)), a));
            CHECK(is_zero(mul(a, zero(r))));
        }
    };
    Ring z = integers();
    check_axioms(z, [&] { return from_int(z, Int(rnd() % 2001) - 1000); });
    Ring z9 = integers_mod(9);
    check_axioms(z9, [&] { return from_int(z9, Int(rnd() % 9)); });
    Ring q = rationals();
    check_axioms(q, [&] { return make_rational(q, Int(rnd() % 41) - 20, Int(rnd() % 7) + 1); });
    Ring zx = polynomial_ring(z, {"X"});
    check_axioms(zx, [&] {
        Elem X = variable(zx, "X");
        Elem p = zero(zx);
        for (int d = 0; d < 3; ++d)
            p = add(p, mul(from_int(zx, Int(rnd() % 11) - 5), pow(X, d)));
        return p;
    });
    Ring z2 = localized_ring(z, from_int(z, 2));
    check_axioms(z2, [&] {
        return make_localized(z2, from_int(z, Int(rnd() % 101) - 50), rnd() % 3);
    });
    auto i3 = make_ideal(z, {from_int(z, 3)});
    Ring e = excision_ring(z, i3);
    check_axioms(e, [&] {
        return make_excision(e, from_int(z, Int(rnd() % 21) - 10),
                             ideal_gen_multiple(i3, 0, from_int(z, Int(rnd() % 9) - 4)));
    });
}

TEST_CASE("phi is a ring homomorphism on random pairs") {
    Ring z = integers();
    auto i3 = make_ideal(z, {from_int(z, 3)});
    Ring e = excision_ring(z, i3);
    std::uint64_t s = 99;
    auto rnd = [&]() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    };
    for (int i = 0; i < 500; ++i) {
        Elem a = make_excision(e, from_int(z, Int(rnd() % 41) - 20),
                               ideal_gen_multiple(i3, 0, from_int(z, Int(rnd() % 11) - 5)));
        Elem b = make_excision(e, from_int(z, Int(rnd() % 41) - 20),
                               ideal_gen_multiple(i3, 0, from_int(z, Int(rnd() % 11) - 5)));
        CHECK(eq(phi(mul(a, b)), mul(phi(a), phi(b))));
        CHECK(eq(phi(add(a, b)), add(phi(a), phi(b))));
    }
}
