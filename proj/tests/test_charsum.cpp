#include <doctest.h>

#include <cmath>

#include "korolat/charsum.hpp"

using namespace korolat;

TEST_CASE("char_sum examples") {
    PrimeContext c52(5, 2, 4);
    auto r1 = char_sum(3, {2, 1}, c52);
    CHECK(r1.value == 1); // 2*1 + 1*3 = 5 == 0 mod 5
    CHECK(r1.dot_product_residue == 0);

    auto r2 = char_sum(3, {1, 1}, c52);
    CHECK(r2.value == 0);
    CHECK(r2.dot_product_residue == 4);

    CHECK(char_sum(2, {0, 0}, c52).value == 1);
    CHECK_THROWS_AS(char_sum(0, {1, 1}, c52), std::invalid_argument);
}

TEST_CASE("char_sum_oracle examples") {
    PrimeContext c52(5, 2, 4);
    CHECK(std::abs(char_sum_oracle(3, {2, 1}, c52) - 1.0) < 1e-12);
    CHECK(std::abs(char_sum_oracle(3, {1, 1}, c52)) < 1e-12);

    PrimeContext c73(7, 3, 6);
    CHECK(std::abs(char_sum_oracle(2, {1, 1, 1}, c73) - 1.0) < 1e-12); // 1+2+4 = 7
}

TEST_CASE("indicator agrees with the exponential-sum oracle exhaustively") {
    for (std::uint32_t n : {3u, 5u, 7u}) {
        for (std::uint32_t s : {1u, 2u, 3u}) {
            PrimeContext ctx(n, s, n - 1);
            std::vector<std::uint32_t> k(s, 0);
            while (true) {
                for (std::uint32_t z = 1; z <= ctx.num_lattices; ++z) {
                    std::vector<std::int64_t> ks(k.begin(), k.end());
                    const double oracle = std::abs(char_sum_oracle(z, ks, ctx));
                    CHECK(std::abs(oracle - char_sum(z, k, ctx).value) < 1e-10);
                }
                if (!detail::next_index(k, n)) break;
            }
        }
    }
}

TEST_CASE("count_generator_hits") {
    PrimeContext c52(5, 2, 4);
    CHECK(count_generator_hits({2, 1}, c52) == 1); // only z = 3
    CHECK(count_generator_hits({1, 0}, c52) == 0); // constant nonzero polynomial
    CHECK_THROWS_AS(count_generator_hits({0, 0}, c52), std::invalid_argument);

    // root-count bound, exhaustive small cases
    for (std::uint32_t n : {5u, 7u, 13u}) {
        for (std::uint32_t s : {2u, 3u}) {
            PrimeContext ctx(n, s, n - 1);
            std::vector<std::uint32_t> k(s, 0);
            while (detail::next_index(k, n)) {
                CHECK(count_generator_hits(k, ctx) <= s - 1);
            }
        }
    }

    // sampled at larger N and s
    {
        PrimeContext ctx(101, 6, 100);
        std::uint64_t state = 999;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::uint32_t> k(6);
            bool nonzero = false;
            for (auto& v : k) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                v = static_cast<std::uint32_t>((state >> 33) % 101);
                if (v) nonzero = true;
            }
            if (!nonzero) k[0] = 1;
            CHECK(count_generator_hits(k, ctx) <= 5);
        }
    }
}

TEST_CASE("frequencies that are multiples of N give indicator 1 for every z") {
    PrimeContext c73(7, 3, 6);
    for (std::uint32_t z = 1; z <= 6; ++z) {
        CHECK(char_sum(z, {7 % 7, 14 % 7, 0}, c73).value == 1);
        std::vector<std::int64_t> lifted{7, 14, 21};
        CHECK(std::abs(char_sum_oracle(z, lifted, c73) - 1.0) < 1e-10);
    }
}

TEST_CASE("expected_sq_char_sum") {
    PrimeContext c52(5, 2, 4);
    CHECK(expected_sq_char_sum({2, 1}, c52) == doctest::Approx(0.25));
    CHECK(expected_sq_char_sum({1, 0}, c52) == 0.0);

    for (std::uint32_t n : {5u, 7u, 13u}) {
        const std::uint32_t s = 4;
        PrimeContext ctx(n, s, n - 1);
        std::vector<std::uint32_t> k(s, 0);
        while (detail::next_index(k, n)) {
            CHECK(expected_sq_char_sum(k, ctx) <=
                  static_cast<double>(s - 1) / ctx.num_lattices + 1e-15);
        }
    }
}
