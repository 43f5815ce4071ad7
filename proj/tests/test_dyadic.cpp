#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zperm/dyadic.hpp"

#include <random>

using namespace zperm;

TEST_CASE("construction normalizes to odd numerator or zero") {
    CHECK(Dyadic(BigInt(6), 1) == Dyadic(3));
    CHECK(Dyadic(BigInt(4), 2) == Dyadic(1));
    CHECK(Dyadic(BigInt(0), 7) == Dyadic::zero());
    CHECK(Dyadic(BigInt(12), 1).is_integer());
    const Dyadic half(BigInt(2), 2);
    CHECK(half.numerator() == 1);
    CHECK(half.log2_denominator() == 1);
}

TEST_CASE("integers may keep an even numerator") {
    const Dyadic six(6);
    CHECK(six.numerator() == 6);
    CHECK(six.log2_denominator() == 0);
}

TEST_CASE("arithmetic") {
    const Dyadic three_quarters(BigInt(3), 2);
    const Dyadic quarter(BigInt(1), 2);
    CHECK(three_quarters + quarter == Dyadic(1));
    CHECK(three_quarters - quarter == Dyadic(BigInt(1), 1));
    CHECK(quarter * Dyadic(4) == Dyadic(1));
    CHECK(Dyadic(BigInt(1), 1) * Dyadic(BigInt(1), 1) == quarter);
    CHECK(-three_quarters == Dyadic(BigInt(-3), 2));
    CHECK(Dyadic(5).div_pow2(2) == Dyadic(BigInt(5), 2));
    CHECK(Dyadic(8).div_pow2(2) == Dyadic(2));
}

TEST_CASE("comparisons order by value") {
    CHECK(Dyadic(BigInt(1), 2) < Dyadic(BigInt(1), 1));
    CHECK(Dyadic(-1) < Dyadic(BigInt(1), 4));
    CHECK(Dyadic(BigInt(3), 2) > Dyadic(BigInt(1), 1));
    CHECK(Dyadic(2) >= Dyadic(2));
    CHECK(Dyadic(BigInt(-3), 2).abs() == Dyadic(BigInt(3), 2));
    CHECK(Dyadic(BigInt(-3), 2).sign() == -1);
}

TEST_CASE("to_double is exact for representable values") {
    CHECK(Dyadic(BigInt(3), 2).to_double() == 0.75);
    CHECK(Dyadic(BigInt(-1), 4).to_double() == -0.0625);
    CHECK(Dyadic(41).to_double() == 41.0);
}

TEST_CASE("printing and parsing round trip") {
    CHECK(Dyadic(BigInt(3), 2).to_string() == "3/4");
    CHECK(Dyadic(BigInt(-1), 2).to_string() == "-1/4");
    CHECK(Dyadic(7).to_string() == "7");
    CHECK(Dyadic::parse("3/4") == Dyadic(BigInt(3), 2));
    CHECK(Dyadic::parse("-12") == Dyadic(-12));
    CHECK(Dyadic::parse("0") == Dyadic::zero());
    CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse("1/0"), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto num = static_cast<long long>(rng() % 2001) - 1000;
        const auto den = static_cast<std::uint32_t>(rng() % 12);
        const Dyadic v(BigInt(num), den);
        CHECK(Dyadic::parse(v.to_string()) == v);
    }
}

TEST_CASE("field laws hold on random samples") {
    std::mt19937_64 rng(5);
    const auto draw = [&] {
        const auto num = static_cast<long long>(rng() % 401) - 200;
        const auto den = static_cast<std::uint32_t>(rng() % 8);
        return Dyadic(BigInt(num), den);
    };
    for (int trial = 0; trial < 300; ++trial) {
        const Dyadic a = draw(), b = draw(), c = draw();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Dyadic::zero());
        CHECK((a - b) + b == a);
    }
}
