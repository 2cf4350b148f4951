#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "korolat/bounds.hpp"
#include "korolat/charsum.hpp"
#include "korolat/discrepancy.hpp"
#include "korolat/errors.hpp"
#include "korolat/fourier.hpp"
#include "korolat/pointset.hpp"
#include "korolat/rng.hpp"

namespace korolat {

struct CampaignConfig {
    BoundSpec spec;
    std::uint32_t num_trials;
    std::uint64_t master_seed;
    bool record_boxes = false;
    std::optional<std::string> csv_path;
    std::optional<std::string> json_path;
    std::uint32_t num_threads = 1;

    CampaignConfig(BoundSpec s, std::uint32_t trials, std::uint64_t seed)
        : spec(s), num_trials(trials), master_seed(seed) {
        if (trials < 1) throw std::invalid_argument("CampaignConfig: num_trials >= 1");
    }
};

struct TrialRecord {
    std::uint32_t trial_index;
    std::vector<std::uint32_t> generators;
    double grid_max;
    double upper_bound;
    double bound_value;
    bool violated;
    std::vector<std::uint32_t> argmax_numerators;
};

struct CampaignSummary {
    std::uint32_t num_trials = 0;
    std::uint32_t num_violations = 0;
    std::vector<std::pair<double, double>> upper_bound_quantiles;
    double grid_max_mean = 0.0;
    double grid_max_stddev = 0.0;
};

inline GeneratorMode generator_mode_of(BoundCase c) {
    return is_random_generators(c) ? GeneratorMode::Random : GeneratorMode::Fixed;
}

inline ShiftMode shift_mode_of(BoundCase c) {
    return is_continuous(c) ? ShiftMode::Continuous : ShiftMode::Discrete;
}

inline TrialRecord run_trial(const CampaignConfig& config, std::uint32_t trial_index) {
    const BoundSpec& spec = config.spec;
    ConstructionResult built =
        sample_construction(spec.ctx, generator_mode_of(spec.bound_case),
                            shift_mode_of(spec.bound_case), config.master_seed, trial_index);
    DiscrepancyReport report = star_disc_grid(built.points, spec.ctx);
    const double bound = theorem_bound(spec).final_bound;
    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.generators = std::move(built.generators);
    rec.grid_max = report.grid_max;
    rec.upper_bound = report.upper_bound;
    rec.bound_value = bound;
    rec.violated = report.upper_bound > bound;
    if (config.record_boxes) rec.argmax_numerators = report.argmax_numerators;
    return rec;
}

// An exact rational value num/den; den is always a positive power of N.
struct Rational {
    long long num;
    long long den;
};

namespace detail {

inline std::uint64_t count_in_grid_box(const PointSet& p,
                                       const std::vector<std::uint32_t>& b_num,
                                       const std::vector<std::uint32_t>& shift) {
    std::uint64_t count = 0;
    const std::uint32_t n = p.modulus;
    for (const auto& pt : p.grid_points) {
        bool inside = true;
        for (std::uint32_t j = 0; j < p.dim; ++j) {
            if ((pt[j] + shift[j]) % n >= b_num[j]) { inside = false; break; }
        }
        count += inside;
    }
    return count;
}

} // namespace detail

// Average of disc(P_N(z) + delta, J(b)) over all N^s discrete shifts delta,
// in exact integer arithmetic: the result is (sum of counts - N * prod b_num)
// over N^{s+1}. The lemma asserts it is exactly zero.
inline Rational verify_mean_zero_discrete(std::uint32_t z, const Box& b,
                                          const PrimeContext& ctx,
                                          std::uint64_t cap = default_enumeration_cap) {
    if (!b.on_grid() || b.modulus != ctx.n_prime || b.dim() != ctx.dim) {
        throw std::invalid_argument("verify_mean_zero_discrete: box must lie on Gamma-bar^s");
    }
    const std::uint32_t n = ctx.n_prime;
    const std::uint32_t s = ctx.dim;
    detail::checked_pow_count(n, s, cap, "verify_mean_zero_discrete");
    const PointSet lattice = generate_korobov(z, ctx);

    long long count_sum = 0;
    std::vector<std::uint32_t> shift(s, 0);
    do {
        count_sum += static_cast<long long>(
            detail::count_in_grid_box(lattice, *b.grid_numerators, shift));
    } while (detail::next_index(shift, n));

    long long box_prod = 1;
    for (std::uint32_t j = 0; j < s; ++j) box_prod *= (*b.grid_numerators)[j];
    long long den = n;
    for (std::uint32_t j = 0; j < s; ++j) den *= n;
    return Rational{count_sum - static_cast<long long>(n) * box_prod, den};
}

struct MonteCarloEstimate {
    double mean;
    double stderr_;
};

// Monte Carlo mean of disc(P_N(z) + Delta, J(b)) over uniform continuous
// shifts, with the standard error of the mean.
inline MonteCarloEstimate verify_mean_zero_continuous(std::uint32_t z, const Box& b,
                                                      const PrimeContext& ctx,
                                                      std::uint32_t num_samples,
                                                      std::uint64_t seed) {
    if (num_samples < 2) throw std::invalid_argument("verify_mean_zero_continuous: need >= 2 samples");
    const PointSet lattice = generate_korobov(z, ctx);
    Rng rng = make_stream(seed, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint32_t i = 0; i < num_samples; ++i) {
        ContinuousShift d;
        d.delta.resize(ctx.dim);
        for (std::uint32_t j = 0; j < ctx.dim; ++j) d.delta[j] = rng.uniform_real();
        const double disc = local_disc(shift_continuous(lattice, d), b);
        sum += disc;
        sum_sq += disc * disc;
    }
    const double mean = sum / num_samples;
    const double var = std::max(0.0, (sum_sq - num_samples * mean * mean) / (num_samples - 1));
    return MonteCarloEstimate{mean, std::sqrt(var / num_samples)};
}

// Monte Carlo estimate of E[disc^2] for a single randomly shifted lattice:
// z uniform on {1,...,M}, shift per the case. Compared by callers against
// s/M (+ s/(3N^2) for continuous shifts) plus sampling error.
inline MonteCarloEstimate estimate_variance(BoundCase bound_case, const Box& b,
                                            const PrimeContext& ctx,
                                            std::uint32_t num_samples,
                                            std::uint64_t seed) {
    if (num_samples < 2) throw std::invalid_argument("estimate_variance: need >= 2 samples");
    Rng rng = make_stream(seed, 1);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint32_t i = 0; i < num_samples; ++i) {
        const auto z = 1 + static_cast<std::uint32_t>(rng.uniform_below(ctx.num_lattices));
        const PointSet lattice = generate_korobov(z, ctx);
        double disc;
        if (is_continuous(bound_case)) {
            ContinuousShift d;
            d.delta.resize(ctx.dim);
            for (std::uint32_t j = 0; j < ctx.dim; ++j) d.delta[j] = rng.uniform_real();
            disc = local_disc(shift_continuous(lattice, d), b);
        } else {
            DiscreteShift d;
            d.modulus = ctx.n_prime;
            d.numerators.resize(ctx.dim);
            for (std::uint32_t j = 0; j < ctx.dim; ++j) {
                d.numerators[j] = static_cast<std::uint32_t>(rng.uniform_below(ctx.n_prime));
            }
            disc = local_disc(shift_discrete(lattice, d), b);
        }
        const double sq = disc * disc;
        sum += sq;
        sum_sq += sq * sq;
    }
    const double mean = sum / num_samples;
    const double var = std::max(0.0, (sum_sq - num_samples * mean * mean) / (num_samples - 1));
    return MonteCarloEstimate{mean, std::sqrt(var / num_samples)};
}

struct SumVarianceResult {
    double shift_average; // exhaustive average over all N^s shifts, summed over r
    double spectral;      // sum_k |C_k(b)|^2 sum_r |S_N(r,k)|^2
};

// Sum over r = 1..M of E_shift[disc^2(P_N(r) + shift, J(b))] for discrete
// shifts, computed two independent ways: exact exhaustive shift enumeration
// in integer arithmetic, and the spectral formula through the discrete
// Fourier coefficients and character sums.
inline SumVarianceResult sum_variance_fixed(BoundCase bound_case, const Box& b,
                                            const PrimeContext& ctx,
                                            std::uint64_t cap = default_enumeration_cap) {
    if (is_continuous(bound_case)) {
        throw std::invalid_argument(
            "sum_variance_fixed: exact dual-route check applies to discrete shifts; "
            "use estimate_variance for continuous cases");
    }
    if (!b.on_grid() || b.modulus != ctx.n_prime || b.dim() != ctx.dim) {
        throw std::invalid_argument("sum_variance_fixed: box must lie on Gamma-bar^s");
    }
    const std::uint32_t n = ctx.n_prime;
    const std::uint32_t s = ctx.dim;
    const std::uint32_t m = ctx.num_lattices;
    detail::checked_pow_count(n, s, cap, "sum_variance_fixed");

    // Exhaustive route. Per shift, disc = (count * N^{s-1} - prod b_num) / N^s;
    // the squared numerators accumulate exactly in 128-bit integers.
    long long scale = 1; // N^{s-1}
    for (std::uint32_t j = 0; j + 1 < s; ++j) scale *= n;
    long long box_prod = 1;
    for (std::uint32_t j = 0; j < s; ++j) box_prod *= (*b.grid_numerators)[j];
    __int128 numer_sum = 0;
    for (std::uint32_t r = 1; r <= m; ++r) {
        const PointSet lattice = generate_korobov(r, ctx);
        std::vector<std::uint32_t> shift(s, 0);
        do {
            const long long count = static_cast<long long>(
                detail::count_in_grid_box(lattice, *b.grid_numerators, shift));
            const long long numer = count * scale - box_prod;
            numer_sum += static_cast<__int128>(numer) * numer;
        } while (detail::next_index(shift, n));
    }
    long double den = 1.0L; // N^{3s}
    for (std::uint32_t j = 0; j < 3 * s; ++j) den *= n;
    SumVarianceResult result;
    result.shift_average = static_cast<double>(static_cast<long double>(numer_sum) / den);

    // Spectral route.
    double spectral = 0.0;
    std::vector<std::uint32_t> k(s, 0);
    while (detail::next_index(k, n)) {
        std::uint32_t hits = 0;
        for (std::uint32_t r = 1; r <= m; ++r) hits += char_sum(r, k, ctx).value;
        if (hits == 0) continue;
        spectral += std::norm(disc_coeff(k, b)) * hits;
    }
    result.spectral = spectral;
    return result;
}

inline nlohmann::json config_to_json(const CampaignConfig& config) {
    return nlohmann::json{
        {"case", to_string(config.spec.bound_case)},
        {"n_prime", config.spec.ctx.n_prime},
        {"dim", config.spec.ctx.dim},
        {"num_lattices", config.spec.ctx.num_lattices},
        {"failure_prob", config.spec.failure_prob},
        {"num_trials", config.num_trials},
        {"master_seed", config.master_seed},
    };
}

struct CampaignResult {
    std::vector<TrialRecord> records;
    CampaignSummary summary;
};

inline void write_campaign_csv(std::ostream& os, const std::vector<TrialRecord>& records);
inline nlohmann::json summary_to_json(const CampaignConfig& config,
                                      const CampaignSummary& summary);

inline CampaignResult run_campaign(const CampaignConfig& config) {
    std::vector<TrialRecord> records(config.num_trials);
    const std::uint32_t threads =
        std::max<std::uint32_t>(1, std::min(config.num_threads, config.num_trials));
    if (threads == 1) {
        for (std::uint32_t t = 0; t < config.num_trials; ++t) {
            records[t] = run_trial(config, t);
        }
    } else {
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint32_t t = w; t < config.num_trials; t += threads) {
                    records[t] = run_trial(config, t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    CampaignSummary summary;
    summary.num_trials = config.num_trials;
    std::vector<double> uppers;
    uppers.reserve(records.size());
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& rec : records) {
        summary.num_violations += rec.violated;
        uppers.push_back(rec.upper_bound);
        sum += rec.grid_max;
        sum_sq += rec.grid_max * rec.grid_max;
    }
    std::sort(uppers.begin(), uppers.end());
    for (double q : {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}) {
        const auto i = static_cast<std::size_t>(q * (uppers.size() - 1) + 0.5);
        summary.upper_bound_quantiles.emplace_back(q, uppers[i]);
    }
    summary.grid_max_mean = sum / records.size();
    const double var = records.size() > 1
        ? std::max(0.0, (sum_sq - records.size() * summary.grid_max_mean *
                                      summary.grid_max_mean) / (records.size() - 1.0))
        : 0.0;
    summary.grid_max_stddev = std::sqrt(var);

    if (config.csv_path) {
        std::ofstream out(*config.csv_path);
        if (!out) throw std::runtime_error("run_campaign: cannot open " + *config.csv_path);
        write_campaign_csv(out, records);
    }
    if (config.json_path) {
        std::ofstream out(*config.json_path);
        if (!out) throw std::runtime_error("run_campaign: cannot open " + *config.json_path);
        out << summary_to_json(config, summary).dump(2) << "\n";
    }
    return CampaignResult{std::move(records), std::move(summary)};
}

inline void write_campaign_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "trial,generators,grid_max,upper_bound,bound,violated\n";
    char buf[32];
    for (const auto& rec : records) {
        os << rec.trial_index << ",";
        for (std::size_t i = 0; i < rec.generators.size(); ++i) {
            if (i) os << ";";
            os << rec.generators[i];
        }
        std::snprintf(buf, sizeof(buf), "%.17g", rec.grid_max);
        os << "," << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", rec.upper_bound);
        os << "," << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", rec.bound_value);
        os << "," << buf << "," << (rec.violated ? 1 : 0) << "\n";
    }
}

inline nlohmann::json summary_to_json(const CampaignConfig& config,
                                      const CampaignSummary& summary) {
    nlohmann::json quantiles = nlohmann::json::array();
    for (const auto& [q, v] : summary.upper_bound_quantiles) {
        quantiles.push_back({q, v});
    }
    return nlohmann::json{
        {"config", config_to_json(config)},
        {"num_trials", summary.num_trials},
        {"num_violations", summary.num_violations},
        {"upper_bound_quantiles", quantiles},
        {"grid_max_mean", summary.grid_max_mean},
        {"grid_max_stddev", summary.grid_max_stddev},
    };
}

} // namespace korolat
