#include <doctest.h>

#include "plh/errors.hpp"
#include "plh/rat.hpp"

using plh::Rat;

TEST_CASE("rationals are stored in lowest terms") {
    CHECK(Rat(2, 6).str() == "1/3");
    CHECK(Rat(-4, 8).str() == "-1/2");
    CHECK(Rat(3, -9).str() == "-1/3");  // sign moves to the numerator
    CHECK(Rat(0, 5).str() == "0");
    CHECK(Rat(7).str() == "7");
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) - Rat(1, 3) == Rat(0));
    CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
    CHECK(Rat(1, 3) / Rat(2, 9) == Rat(3, 2));
    CHECK(-Rat(1, 2) == Rat(-1, 2));
    CHECK(Rat(1, 3).reciprocal() == Rat(3));
    // no rounding: (1/3 + 1/3 + 1/3) == 1 exactly
    CHECK(Rat(1, 3) + Rat(1, 3) + Rat(1, 3) == Rat(1));
}

TEST_CASE("comparisons") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-5, 2) < Rat(-2));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(7, 3) > Rat(2));
    CHECK(plh::midpoint(Rat(0), Rat(1)) == Rat(1, 2));
}

TEST_CASE("parse accepts p/q and integers") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-3/4") == Rat(-3, 4));
    CHECK(Rat::parse("42") == Rat(42));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK(Rat::parse("6/4") == Rat(3, 2));

    CHECK_THROWS_AS(Rat::parse(""), plh::ValidationError);
    CHECK_THROWS_AS(Rat::parse("1/0"), plh::ValidationError);
    CHECK_THROWS_AS(Rat::parse("1/-2"), plh::ValidationError);
    CHECK_THROWS_AS(Rat::parse("a/b"), plh::ValidationError);
    CHECK_THROWS_AS(Rat::parse("1.5"), plh::ValidationError);
    CHECK_THROWS_AS(Rat(1, 0), plh::ValidationError);
    CHECK_THROWS_AS(Rat(1) / Rat(0), plh::ValidationError);
    CHECK_THROWS_AS(Rat(0).reciprocal(), plh::ValidationError);
}

TEST_CASE("large values stay exact") {
    Rat big(1);
    for (int i = 0; i < 200; ++i) big *= Rat(10);
    CHECK((big - big) == Rat(0));
    CHECK((big / big) == Rat(1));
    CHECK(big.str().size() == 201);
}
