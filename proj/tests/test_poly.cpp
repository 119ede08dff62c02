#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "knotoid/poly.hpp"

using namespace knotoid;

namespace {

LaurentPoly P(const std::string& s) { return LaurentPoly::parse(s); }

LaurentPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expo(-3, 3), coeff(-4, 4);
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exponents e{expo(rng), expo(rng), 0, 0, expo(rng)};
        p += LaurentPoly::monomial(coeff(rng), e);
    }
    return p;
}

}  // namespace

TEST_CASE("addition drops cancelling terms") {
    CHECK((P("A^4") + P("-A^4")).is_zero());
    CHECK(P("A^4 + A^6") + P("-A^10") == P("-A^10 + A^6 + A^4"));
    CHECK(P("u^2") + P("u^2") == P("2u^2"));
}

TEST_CASE("multiplication follows sign and exponent laws") {
    CHECK(P("-A^3") * P("-A^3") == P("A^6"));
    CHECK(loop_value() * loop_value() == P("A^4 + 2 + A^-4"));
    CHECK(P("A^6 - A^10") * P("u^2") == P("A^6u^2 - A^10u^2"));
}

TEST_CASE("substitution reproduces the closure specializations") {
    LaurentPoly ext = P("A^4 + A^6u^2 - A^10u^2");
    CHECK(ext.substitute(Var::U, P("-A^3")) == P("-A^16 + A^12 + A^4"));
    // Hand expansion: A^4 + A^6 A^-6 - A^10 A^-6 = A^4 + 1 - A^4 = 1.
    CHECK(ext.substitute(Var::U, P("-A^-3")) == LaurentPoly::one());
    CHECK(ext.substitute(Var::U, LaurentPoly::one()) == P("-A^10 + A^6 + A^4"));
}

TEST_CASE("substituting a non-unit into a negative exponent fails") {
    LaurentPoly p = P("u^-1 + A");
    CHECK_THROWS_AS(p.substitute(Var::U, P("1 + A")), Error);
    CHECK_THROWS_AS(p.substitute(Var::U, P("2A")), Error);
    // A unit monomial is fine.
    CHECK(p.substitute(Var::U, P("-A^3")) == P("-A^-3 + A"));
}

TEST_CASE("span and the zero sentinel") {
    CHECK(P("-A^10 + A^6 + A^4").span(Var::A).value() == 6);
    CHECK(P("A^4 + A^6u^2 - A^10u^2").span(Var::U).value() == 2);
    CHECK_FALSE(LaurentPoly::zero().span(Var::A).has_value());
    CHECK(P("5").span(Var::A).value() == 0);
}

TEST_CASE("rendering and parsing round-trip, canonical order") {
    CHECK(P("A^4 + A^6 - A^10").to_string() == "-A^10 + A^6 + A^4");
    CHECK(LaurentPoly::zero().to_string() == "0");
    CHECK(P("-2A^-2u^3 + 7").to_string() == "7 - 2A^-2u^3");
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        LaurentPoly p = random_poly(rng);
        CHECK(LaurentPoly::parse(p.to_string()) == p);
    }
}

TEST_CASE("ring axioms on randomized polynomials") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * LaurentPoly::one() == a);
        // span(monomial * p) = span(p)
        if (!a.is_zero()) {
            LaurentPoly m = LaurentPoly::monomial(3, Exponents{2, -1, 0, 0, 1});
            CHECK((m * a).span(Var::A) == a.span(Var::A));
        }
        // substitute(p, var, var) = p
        CHECK(a.substitute(Var::U, poly_u()) == a);
    }
}
