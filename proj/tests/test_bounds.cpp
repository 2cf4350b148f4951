#include <doctest.h>

#include <cmath>

#include "korolat/bounds.hpp"

using namespace korolat;

TEST_CASE("variance_cap") {
    PrimeContext c25(5, 2, 4);
    CHECK(variance_cap(BoundCase::RandomContinuous, c25) == doctest::Approx(2.0 * 16.0 / 15.0));
    PrimeContext c35(5, 3, 4);
    CHECK(variance_cap(BoundCase::RandomDiscrete, c35) == 3.0);
    CHECK(variance_cap(BoundCase::FixedContinuous, c35) >
          variance_cap(BoundCase::FixedDiscrete, c35));
}

TEST_CASE("log_term") {
    PrimeContext ctx(5, 2, 4);
    CHECK(log_term(ctx, 0.5) ==
          doctest::Approx(2.0 * std::log(6.0) + 2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(log_term(ctx, 0.5) == doctest::Approx(4.9698).epsilon(1e-4));
    CHECK(log_term(ctx, 0.1) > log_term(ctx, 0.5)); // decreasing in failure_prob
    CHECK_THROWS_AS(log_term(ctx, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(log_term(ctx, 1.0), std::invalid_argument);
}

TEST_CASE("t_zero solves its quadratic") {
    PrimeContext ctx(5, 2, 4);
    const double L = log_term(ctx, 0.5);
    const double t0 = t_zero(L, BoundCase::RandomContinuous, ctx);
    CHECK(t0 == doctest::Approx(6.550).epsilon(1e-3));
    const double cap = variance_cap(BoundCase::RandomContinuous, ctx);
    const double residual = t0 * t0 - 2.0 * L * t0 / 3.0 - 2.0 * cap * L;
    CHECK(std::abs(residual) < 1e-9 * t0 * t0);

    CHECK(t_zero(2.0 * L, BoundCase::RandomContinuous, ctx) > t0); // increasing in L
    CHECK_THROWS_AS(t_zero(0.0, BoundCase::RandomContinuous, ctx), std::invalid_argument);
}

TEST_CASE("universal constants match the displayed decimals") {
    CHECK(std::abs(universal_constant(BoundCase::RandomContinuous) - 1.8283) < 5e-5);
    CHECK(std::abs(universal_constant(BoundCase::FixedDiscrete) - 1.7231) < 5e-5);
    CHECK(universal_constant(BoundCase::FixedContinuous) >
          universal_constant(BoundCase::RandomDiscrete));
    CHECK(rounded_constant(BoundCase::RandomContinuous) == 1.83);
    CHECK(rounded_constant(BoundCase::RandomDiscrete) == 1.73);
}

TEST_CASE("theorem_bound") {
    BoundSpec spec(BoundCase::FixedDiscrete, 0.5, PrimeContext(31, 2, 30));
    auto b = theorem_bound(spec);
    CHECK(b.final_bound == doctest::Approx(0.4797).epsilon(1e-3));
    CHECK(b.rounded_constant == 1.73);
    CHECK(b.variance_cap == 2.0);

    // scales as 1/M with the numerator held fixed
    BoundSpec half(BoundCase::FixedDiscrete, 0.5, PrimeContext(31, 2, 15));
    CHECK(theorem_bound(half).final_bound == doctest::Approx(2.0 * b.final_bound));

    CHECK_THROWS_AS(BoundSpec(BoundCase::FixedDiscrete, 1.5, PrimeContext(31, 2, 30)),
                    std::invalid_argument);
}

TEST_CASE("bernstein_tail") {
    CHECK(bernstein_tail(1e-12, 1.0) == doctest::Approx(2.0));
    CHECK(bernstein_tail(2.0, 1.0) > bernstein_tail(3.0, 1.0));

    // at t = t0 the union-bound mass reproduces failure_prob exactly
    for (std::uint32_t n : {5u, 13u, 31u}) {
        for (std::uint32_t s : {1u, 2u, 5u}) {
            for (double fp : {0.5, 0.1, 0.01}) {
                PrimeContext ctx(n, s, n - 1);
                for (auto c : {BoundCase::RandomContinuous, BoundCase::FixedDiscrete}) {
                    const double L = log_term(ctx, fp);
                    const double t0 = t_zero(L, c, ctx);
                    const double mass =
                        bernstein_tail(t0, variance_cap(c, ctx)) * std::pow(n + 1.0, s);
                    CHECK(mass == doctest::Approx(fp).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("t_zero quadratic residual across a parameter sweep") {
    for (std::uint32_t n : {2u, 3u, 5u, 13u, 31u, 101u}) {
        for (std::uint32_t s = 1; s <= 10; ++s) {
            for (double fp : {0.5, 0.1, 0.01}) {
                PrimeContext ctx(n, s, n - 1);
                for (auto c : {BoundCase::RandomContinuous, BoundCase::RandomDiscrete}) {
                    const double L = log_term(ctx, fp);
                    const double t0 = t_zero(L, c, ctx);
                    const double cap = variance_cap(c, ctx);
                    CHECK(std::abs(t0 * t0 - 2.0 * L * t0 / 3.0 - 2.0 * cap * L) <
                          1e-9 * t0 * t0);
                }
            }
        }
    }
}

TEST_CASE("case names round trip") {
    for (auto c : {BoundCase::RandomContinuous, BoundCase::FixedContinuous,
                   BoundCase::RandomDiscrete, BoundCase::FixedDiscrete}) {
        CHECK(bound_case_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(bound_case_from_string("nope"), std::invalid_argument);
}
