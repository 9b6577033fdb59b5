#include "doctest.h"

#include <cstdint>

#include "diffract/rational.hpp"

using diffract::RatComplex;
using diffract::Rational;

TEST_CASE("construction reduces and fixes the sign") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, -7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("field operations") {
    Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(-1, 3) * Rational(3, 5) == Rational(-1, 5));
    CHECK(Rational(7, 2) / Rational(7, 2) == Rational(1));
    CHECK_THROWS_AS(third / Rational(0), std::domain_error);
    CHECK(-Rational(5, 3) == Rational(-5, 3));
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 6) <= Rational(1, 3));
    CHECK(Rational(1, 3).abs() == Rational(1, 3));
    CHECK(Rational(-1, 3).abs() == Rational(1, 3));
}

TEST_CASE("overflow is reported, not wrapped") {
    const std::int64_t big = (std::int64_t{1} << 62) + 1;
    Rational huge(big, 1);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
    // Reduction can rescue products that cancel.
    CHECK(Rational(big, 3) * Rational(3, big) == Rational(1));
}

TEST_CASE("string round trip") {
    CHECK(Rational(-1, 3).to_string() == "-1/3");
    CHECK(Rational(5).to_string() == "5/1");
    CHECK(Rational::parse("-1/3") == Rational(-1, 3));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("4/6") == Rational(2, 3));
    CHECK_THROWS_AS(Rational::parse("x/3"), std::invalid_argument);
    for (int n = -20; n <= 20; ++n)
        for (int d = 1; d <= 9; ++d) {
            Rational r(n, d);
            CHECK(Rational::parse(r.to_string()) == r);
        }
}

TEST_CASE("arithmetic identities over a small grid") {
    for (int an = -6; an <= 6; ++an)
        for (int ad = 1; ad <= 4; ++ad)
            for (int bn = -6; bn <= 6; ++bn)
                for (int bd = 1; bd <= 4; ++bd) {
                    Rational a(an, ad), b(bn, bd);
                    CHECK((a + b) - b == a);
                    CHECK(a * b == b * a);
                    if (!b.is_zero()) CHECK((a / b) * b == a);
                }
}

TEST_CASE("complex rationals") {
    RatComplex i{Rational(0), Rational(1)};
    CHECK(i * i == RatComplex{Rational(-1), Rational(0)});
    RatComplex z{Rational(1, 2), Rational(-1, 3)};
    CHECK(z.conj().im == Rational(1, 3));
    CHECK(z.norm_sq() == Rational(1, 4) + Rational(1, 9));
    CHECK((z * z.conj()).im == Rational(0));
    CHECK((z * z.conj()).re == z.norm_sq());
}
