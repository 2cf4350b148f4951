#include <doctest.h>

#include "korolat/modmath.hpp"

using namespace korolat;

TEST_CASE("is_prime basic values") {
    CHECK(is_prime(2));
    CHECK(is_prime(31));
    CHECK_FALSE(is_prime(33));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(7917));
    CHECK_THROWS_AS(is_prime(1), std::invalid_argument);
    CHECK_THROWS_AS(is_prime(0), std::invalid_argument);
}

TEST_CASE("PrimeContext validation") {
    PrimeContext ctx(5, 2, 4);
    CHECK(ctx.n_tot() == 20);
    CHECK(PrimeContext(13, 3).num_lattices == 12); // default M = N - 1
    CHECK_THROWS_AS(PrimeContext(9, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(5, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(5, 2, 0), std::invalid_argument);
}

TEST_CASE("korobov_vector examples") {
    PrimeContext c53(5, 3);
    auto g = korobov_vector(2, c53);
    CHECK(g.components == std::vector<std::uint32_t>{1, 2, 4});

    PrimeContext c74(7, 4);
    CHECK(korobov_vector(1, c74).components == std::vector<std::uint32_t>{1, 1, 1, 1});
    CHECK(korobov_vector(3, c74).components == std::vector<std::uint32_t>{1, 3, 2, 6});

    CHECK_THROWS_AS(korobov_vector(0, c53), std::invalid_argument);
    CHECK_THROWS_AS(korobov_vector(5, c53), std::invalid_argument);
}

TEST_CASE("korobov_vector matches repeated multiplication") {
    for (std::uint32_t n : {2u, 3u, 5u, 7u, 11u, 13u}) {
        const std::uint32_t s = 6;
        PrimeContext ctx(n, s, n - 1);
        for (std::uint32_t z = 1; z < n; ++z) {
            auto g = korobov_vector(z, ctx);
            std::uint64_t expect = 1;
            for (std::uint32_t j = 0; j < s; ++j) {
                CHECK(g.components[j] == expect);
                expect = (expect * z) % n;
            }
        }
    }
}

TEST_CASE("pow_mod consistency") {
    CHECK(pow_mod(3, 3, 7) == 6);
    CHECK(pow_mod(2, 0, 5) == 1);
    // large base/exponent stays within 64-bit intermediates
    CHECK(pow_mod(2147483629u, 2, 2147483647u) ==
          static_cast<std::uint32_t>((2147483629ull * 2147483629ull) % 2147483647ull));
}
