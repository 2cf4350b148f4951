#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "korolat/experiments.hpp"

using namespace korolat;

TEST_CASE("verify_mean_zero_discrete is exactly zero") {
    PrimeContext c51(5, 1, 4);
    auto r = verify_mean_zero_discrete(2, Box::grid({3}, 5), c51);
    CHECK(r.num == 0);
    CHECK(r.den == 25);

    PrimeContext c72(7, 2, 6);
    auto r2 = verify_mean_zero_discrete(3, Box::grid({2, 5}, 7), c72);
    CHECK(r2.num == 0);

    // the full box contributes zero termwise
    CHECK(verify_mean_zero_discrete(4, Box::grid({7, 7}, 7), c72).num == 0);

    // exhaustive over all z and all corners at N in {5, 7}, s in {1, 2}
    for (std::uint32_t n : {5u, 7u}) {
        for (std::uint32_t s : {1u, 2u}) {
            PrimeContext ctx(n, s, n - 1);
            for (std::uint32_t z = 1; z < n; ++z) {
                std::vector<std::uint32_t> bnum(s, 0);
                do {
                    CHECK(verify_mean_zero_discrete(z, Box::grid(bnum, n), ctx).num == 0);
                } while (detail::next_index(bnum, n + 1));
            }
        }
    }

    CHECK_THROWS_AS(verify_mean_zero_discrete(2, Box::continuous({0.5}), c51),
                    std::invalid_argument);
}

TEST_CASE("verify_mean_zero_continuous") {
    PrimeContext c72(7, 2, 6);
    auto est = verify_mean_zero_continuous(3, Box::continuous({0.3, 0.8}), c72, 10000, 77);
    CHECK(std::abs(est.mean) <= 4.0 * est.stderr_);
    CHECK(est.stderr_ > 0.0);

    auto full = verify_mean_zero_continuous(3, Box::continuous({1.0, 1.0}), c72, 100, 1);
    CHECK(full.mean == 0.0);
    CHECK(full.stderr_ == 0.0);

    auto empty = verify_mean_zero_continuous(3, Box::continuous({0.0, 0.5}), c72, 100, 1);
    CHECK(empty.mean == 0.0);
}

TEST_CASE("estimate_variance respects the lemma caps") {
    PrimeContext ctx(13, 2, 12);
    const double s = 2.0, m = 12.0, n = 13.0;

    auto disc = estimate_variance(BoundCase::RandomDiscrete, Box::grid({5, 9}, 13), ctx,
                                  10000, 101);
    CHECK(disc.mean <= s / m + 3.0 * disc.stderr_);

    auto cont = estimate_variance(BoundCase::RandomContinuous, Box::grid({5, 9}, 13), ctx,
                                  10000, 102);
    CHECK(cont.mean <= s / m + s / (3.0 * n * n) + 3.0 * cont.stderr_);

    auto full = estimate_variance(BoundCase::RandomDiscrete, Box::grid({13, 13}, 13), ctx,
                                  100, 103);
    CHECK(full.mean == 0.0);
}

TEST_CASE("sum_variance_fixed dual routes agree") {
    PrimeContext c52(5, 2, 4);
    auto r = sum_variance_fixed(BoundCase::FixedDiscrete, Box::grid({3, 4}, 5), c52);
    CHECK(std::abs(r.shift_average - r.spectral) < 1e-10);
    CHECK(r.shift_average < 2.0);

    auto full = sum_variance_fixed(BoundCase::FixedDiscrete, Box::grid({5, 5}, 5), c52);
    CHECK(full.shift_average == 0.0);
    CHECK(std::abs(full.spectral) < 1e-14);

    // all corners at N = 5 sit below the cap s
    std::vector<std::uint32_t> bnum(2, 0);
    do {
        auto v = sum_variance_fixed(BoundCase::FixedDiscrete, Box::grid(bnum, 5), c52);
        CHECK(std::abs(v.shift_average - v.spectral) < 1e-10);
        CHECK(v.shift_average < 2.0);
    } while (detail::next_index(bnum, 6));

    CHECK_THROWS_AS(
        sum_variance_fixed(BoundCase::FixedContinuous, Box::grid({3, 4}, 5), c52),
        std::invalid_argument);
}

TEST_CASE("run_trial") {
    CampaignConfig config(BoundSpec(BoundCase::FixedDiscrete, 0.5, PrimeContext(5, 2, 4)),
                          10, 77);
    auto rec = run_trial(config, 0);
    CHECK(rec.generators == std::vector<std::uint32_t>{1, 2, 3, 4});
    CHECK(rec.grid_max >= 0.0);
    CHECK(rec.grid_max <= 1.0);
    CHECK(rec.upper_bound == doctest::Approx(rec.grid_max + 2.0 / 5.0));
    CHECK(rec.violated == (rec.upper_bound > rec.bound_value));

    auto again = run_trial(config, 0);
    CHECK(again.grid_max == rec.grid_max);
    CHECK(again.generators == rec.generators);
}

TEST_CASE("run_campaign") {
    CampaignConfig config(BoundSpec(BoundCase::RandomDiscrete, 0.5, PrimeContext(13, 2, 12)),
                          20, 2024);
    auto result = run_campaign(config);
    CHECK(result.records.size() == 20);
    CHECK(result.summary.num_trials == 20);
    CHECK(result.summary.num_violations <= 20);
    CHECK(result.summary.grid_max_mean > 0.0);

    // single-trial summary matches its record
    CampaignConfig one(config.spec, 1, 5);
    auto single = run_campaign(one);
    CHECK(single.summary.num_trials == 1);
    CHECK(single.summary.grid_max_mean == single.records[0].grid_max);
    CHECK(single.summary.upper_bound_quantiles.front().second ==
          single.records[0].upper_bound);

    // threaded execution is bit-identical to sequential
    CampaignConfig threaded = config;
    threaded.num_threads = 4;
    auto parallel = run_campaign(threaded);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(parallel.records[i].grid_max == result.records[i].grid_max);
        CHECK(parallel.records[i].generators == result.records[i].generators);
    }

    // CSV is reproducible byte for byte
    std::stringstream a, b;
    write_campaign_csv(a, result.records);
    write_campaign_csv(b, run_campaign(config).records);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, a.str().find('\n')) ==
          "trial,generators,grid_max,upper_bound,bound,violated");
}

TEST_CASE("campaign JSON echoes the config") {
    CampaignConfig config(BoundSpec(BoundCase::FixedContinuous, 0.25, PrimeContext(5, 1, 4)),
                          3, 9);
    auto result = run_campaign(config);
    auto j = summary_to_json(config, result.summary);
    CHECK(j["config"]["case"] == "fixed-continuous");
    CHECK(j["config"]["n_prime"] == 5);
    CHECK(j["config"]["failure_prob"] == 0.25);
    CHECK(j["num_trials"] == 3);
}
