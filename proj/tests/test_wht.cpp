#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zperm/rng.hpp"
#include "zperm/wht.hpp"

#include "oracles.hpp"

#include <random>
#include <vector>

using namespace zperm;

TEST_CASE("frozen length-4 transform") {
    const std::vector<long long> y = {1, 2, 3, 4};
    const auto t = walsh_hadamard(y);
    CHECK(t == std::vector<long long>({10, -2, -4, 0}));
}

TEST_CASE("rejects non power-of-two lengths") {
    std::vector<double> bad(3, 1.0);
    CHECK_THROWS_AS(walsh_hadamard_inplace(std::span<double>(bad)), std::invalid_argument);
    std::vector<double> empty;
    CHECK_THROWS_AS(walsh_hadamard_inplace(std::span<double>(empty)), std::invalid_argument);
}

TEST_CASE("matches the quadratic-time definition") {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<long long> y(std::size_t{1} << n);
            for (auto& v : y) v = static_cast<long long>(rng() % 201) - 100;
            CHECK(walsh_hadamard(y) == oracle::naive_wht(y));
        }
    }
}

TEST_CASE("applying twice multiplies by 2^n") {
    std::mt19937_64 rng(19);
    for (int n = 1; n <= 10; ++n) {
        std::vector<Dyadic> y(std::size_t{1} << n);
        for (auto& v : y) {
            const auto num = static_cast<long long>(rng() % 2001) - 1000;
            v = Dyadic(BigInt(num), static_cast<std::uint32_t>(rng() % 6));
        }
        auto twice = walsh_hadamard(walsh_hadamard(y));
        for (std::size_t x = 0; x < y.size(); ++x)
            CHECK(twice[x] == y[x] * Dyadic(BigInt(1) << n, 0));
    }
}

TEST_CASE("transform of a delta is a character row") {
    std::vector<long long> y(16, 0);
    y[5] = 1;
    const auto t = walsh_hadamard(y);
    for (std::uint32_t k = 0; k < 16; ++k) CHECK(t[k] == parity_sign(k, 5));
}

TEST_CASE("dyadic spectrum wrapper") {
    DyadicVector v(2);
    v.values = {Dyadic(1), Dyadic(BigInt(1), 1), Dyadic::zero(), Dyadic(-1)};
    const DyadicVector t = wht(v);
    CHECK(t.values[0] == Dyadic(BigInt(1), 1));
    CHECK(t.values[1] == Dyadic(BigInt(3), 1));
    CHECK(t.values[3] == Dyadic(BigInt(-1), 1));
}
