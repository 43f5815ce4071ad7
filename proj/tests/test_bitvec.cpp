#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zperm/bitvec.hpp"

#include <random>
#include <vector>

using namespace zperm;

TEST_CASE("bitvector basics") {
    BitVector v(4, 0b1010);
    CHECK(v.n == 4);
    CHECK(hamming_weight(v) == 2);
    CHECK(to_string(v) == "1010");
    CHECK(bitvector_from_string("1010") == v);
    CHECK_THROWS_AS(BitVector(4, 0b10000), std::invalid_argument);
    CHECK_THROWS_AS(BitVector(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(bitvector_from_string("10x0"), std::invalid_argument);
}

TEST_CASE("site order puts site 0 at the most significant bit") {
    const BitVector v = bitvector_from_string("1000");
    CHECK(v.bits == 8);
    CHECK(bits_to_string(4, 1) == "0001");
}

TEST_CASE("dot product and parity sign") {
    CHECK(gf2_dot(0b101, 0b100) == 1);
    CHECK(gf2_dot(0b101, 0b010) == 0);
    CHECK(parity_sign(0b11, 0b11) == 1);
    CHECK(parity_sign(0b11, 0b01) == -1);
}

TEST_CASE("rank of small mask sets") {
    CHECK(gf2_rank(std::vector<std::uint32_t>{}) == 0);
    CHECK(gf2_rank(std::vector<std::uint32_t>{0}) == 0);
    CHECK(gf2_rank(std::vector<std::uint32_t>{5, 5}) == 1);
    CHECK(gf2_rank(std::vector<std::uint32_t>{1, 2, 3}) == 2);
    CHECK(gf2_rank(std::vector<std::uint32_t>{8, 12, 14, 15}) == 4);
    CHECK(gf2_rank(std::vector<std::uint32_t>{6, 5, 3}) == 2);
}

TEST_CASE("rank by brute-force span size") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<std::uint32_t> masks;
        std::vector<BitVector> gens;
        const int count = static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) {
            const auto m = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
            masks.push_back(m);
            gens.emplace_back(n, m);
        }
        const auto span = gf2_span(n, gens);
        CHECK((std::size_t{1} << gf2_rank(masks)) == span.size());
    }
}

TEST_CASE("span is sorted, unique, and closed under xor") {
    const std::vector<BitVector> gens = {BitVector(3, 0b011), BitVector(3, 0b101)};
    const auto span = gf2_span(3, gens);
    REQUIRE(span.size() == 4);
    CHECK(span[0].bits == 0b000);
    CHECK(span[1].bits == 0b011);
    CHECK(span[2].bits == 0b101);
    CHECK(span[3].bits == 0b110);

    const auto trivial = gf2_span(4, {});
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].bits == 0);

    const auto pair = gf2_span(4, {BitVector(4, 0b1000)});
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].bits == 0b0000);
    CHECK(pair[1].bits == 0b1000);
}

TEST_CASE("matrix apply, multiply, transpose") {
    // rows[i] = input mask feeding output bit i
    Gf2Matrix a(3, {0b011, 0b110, 0b100});
    CHECK(a.apply(0b001) == 0b001);
    CHECK(a.apply(0b110) == 0b101);
    const Gf2Matrix id = Gf2Matrix::identity(3);
    CHECK(gf2_mul(a, id).rows == a.rows);
    CHECK(gf2_mul(id, a).rows == a.rows);
    const Gf2Matrix at = gf2_transpose(a);
    CHECK(at.rows == std::vector<std::uint32_t>({0b001, 0b011, 0b110}));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto random_rows = [&] {
            std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
            for (auto& r : rows) r = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
            return rows;
        };
        const Gf2Matrix p(n, random_rows()), q(n, random_rows());
        const auto x = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
        CHECK(gf2_mul(p, q).apply(x) == p.apply(q.apply(x)));
        CHECK(gf2_transpose(gf2_transpose(p)).rows == p.rows);
    }
}

TEST_CASE("inverse round trip on random invertible matrices") {
    std::mt19937_64 rng(13);
    int found = 0;
    while (found < 100) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
        const Gf2Matrix a(n, rows);
        if (!gf2_is_invertible(a)) continue;
        ++found;
        const Gf2Matrix inv = gf2_inverse(a);
        CHECK(gf2_mul(a, inv).rows == Gf2Matrix::identity(n).rows);
        CHECK(gf2_mul(inv, a).rows == Gf2Matrix::identity(n).rows);
    }
    Gf2Matrix singular(2, {0b11, 0b11});
    CHECK(!gf2_is_invertible(singular));
    CHECK_THROWS_AS(gf2_inverse(singular), std::invalid_argument);
}
