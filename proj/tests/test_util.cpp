#include <doctest.h>

#include "cooc/util.hpp"

using namespace cooc;

TEST_SUITE("util") {

TEST_CASE("split and tokenize") {
    auto f = split("a\t\tb", '\t');
    REQUIRE(f.size() == 3);
    CHECK(f[1].empty());
    auto t = tokenize("  wash  the face ");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == "wash");
    CHECK(first_token(" wash face") == "wash");
}

TEST_CASE("parse_double rejects junk and non-finite values") {
    double v;
    CHECK(parse_double("1.5e3", v));
    CHECK(v == 1500.0);
    CHECK(!parse_double("1.5x", v));
    CHECK(!parse_double("nan", v));
    CHECK(!parse_double("", v));
}

TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-11, 12345.678}) {
        double back;
        REQUIRE(parse_double(format_double(v), back));
        CHECK(back == v);
    }
}

TEST_CASE("fnv1a is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
    CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}

} // TEST_SUITE
