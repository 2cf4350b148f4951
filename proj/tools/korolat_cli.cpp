// Command-line surface for building shifted Korobov lattice unions, computing
// star discrepancy, evaluating the probabilistic bounds, and running
// verification suites and Monte Carlo campaigns.
//
// JSON goes to stdout for scripting; human-readable notes go to stderr.
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 I/O error, 4 capacity error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "korolat/korolat.hpp"

using namespace korolat;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitArgError = 2;
constexpr int kExitIoError = 3;
constexpr int kExitCapacity = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PrimeContext make_context(std::uint32_t n_prime, std::uint32_t dim,
                          std::int64_t num_lattices) {
    if (num_lattices < 0) return PrimeContext(n_prime, dim); // default M = N - 1
    return PrimeContext(n_prime, dim, static_cast<std::uint32_t>(num_lattices));
}

GeneratorMode parse_generators(const std::string& s) {
    if (s == "random") return GeneratorMode::Random;
    if (s == "fixed") return GeneratorMode::Fixed;
    throw std::invalid_argument("--generators must be 'random' or 'fixed'");
}

ShiftMode parse_shift(const std::string& s) {
    if (s == "continuous") return ShiftMode::Continuous;
    if (s == "discrete") return ShiftMode::Discrete;
    throw std::invalid_argument("--shift must be 'continuous' or 'discrete'");
}

int cmd_generate(std::uint32_t n_prime, std::uint32_t dim, std::int64_t num_lattices,
                 const std::string& generators, const std::string& shift,
                 std::uint64_t seed, const std::string& out_path) {
    PrimeContext ctx = make_context(n_prime, dim, num_lattices);
    auto built = sample_construction(ctx, parse_generators(generators),
                                     parse_shift(shift), seed);
    if (out_path.empty()) {
        write_csv(std::cout, built.points);
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot open " + out_path);
        write_csv(out, built.points);
        if (!out.good()) throw IoError("write failed for " + out_path);
    }
    std::cerr << "generated N_tot=" << ctx.n_tot() << " points (N=" << ctx.n_prime
              << ", s=" << ctx.dim << ", M=" << ctx.num_lattices << ", generators="
              << generators << ", shift=" << shift << ", seed=" << seed << ")\n";
    return kExitOk;
}

int cmd_coeff(const std::string& type, const std::vector<std::int64_t>& k,
              const std::vector<double>& b, const std::vector<std::uint32_t>& b_num,
              std::uint32_t n_prime) {
    json j;
    if (type == "cont") {
        auto box = Box::continuous(b);
        auto c = cont_coeff(k, box);
        j = {{"type", "cont"}, {"re", c.real()}, {"im", c.imag()}};
    } else if (type == "disc") {
        auto box = Box::grid(b_num, n_prime);
        std::vector<std::uint32_t> kd;
        for (auto v : k) {
            if (v < 0 || v >= n_prime) throw std::invalid_argument("disc k must be in D_N");
            kd.push_back(static_cast<std::uint32_t>(v));
        }
        auto c = disc_coeff(kd, box);
        j = {{"type", "disc"}, {"re", c.real()}, {"im", c.imag()}};
    } else {
        throw std::invalid_argument("--type must be 'cont' or 'disc'");
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_charsum(std::uint32_t n_prime, std::uint32_t dim, std::int64_t num_lattices,
                std::uint32_t z, const std::vector<std::int64_t>& k) {
    PrimeContext ctx = make_context(n_prime, dim, num_lattices);
    auto kd = detail::reduce_frequency(k, ctx.n_prime);
    auto result = char_sum(z, kd, ctx);
    auto oracle = char_sum_oracle(z, k, ctx);
    json j{{"value", result.value},
           {"dot_product_residue", result.dot_product_residue},
           {"oracle_re", oracle.real()},
           {"oracle_im", oracle.imag()}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_disc(const std::string& in_path, std::uint32_t n_prime, std::uint32_t dim,
             std::int64_t num_lattices, const std::string& generators,
             const std::string& shift, std::uint64_t seed, bool exact) {
    PointSet points;
    std::uint32_t n = n_prime, s = dim;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw IoError("cannot open " + in_path);
        points = read_csv(in);
        s = points.dim;
        if (points.rep == Representation::Grid) n = points.modulus;
        if (n == 0) throw std::invalid_argument("--n-prime required for real input sets");
    } else {
        PrimeContext ctx = make_context(n_prime, dim, num_lattices);
        points = sample_construction(ctx, parse_generators(generators),
                                     parse_shift(shift), seed).points;
    }
    PrimeContext ctx(n, s, 1);
    auto report = star_disc_grid(points, ctx);
    if (exact) report.exact = star_disc_exact(points);
    std::cout << to_json(report).dump(2) << "\n";
    return kExitOk;
}

int cmd_bound(const std::string& case_name, std::uint32_t n_prime, std::uint32_t dim,
              std::int64_t num_lattices, double failure_prob) {
    BoundSpec spec(bound_case_from_string(case_name), failure_prob,
                   make_context(n_prime, dim, num_lattices));
    std::cout << to_json(theorem_bound(spec)).dump(2) << "\n";
    return kExitOk;
}

// ---- verify suites ------------------------------------------------------

int verify_parseval(const PrimeContext& ctx) {
    std::size_t checked = 0;
    std::vector<std::uint32_t> bnum(ctx.dim, 0);
    do {
        const double residual = parseval_discrete_residual(Box::grid(bnum, ctx.n_prime), ctx);
        ++checked;
        if (residual > 1e-10) {
            std::cerr << "FAIL parseval: residual " << residual << " at b=(";
            for (auto v : bnum) std::cerr << v << " ";
            std::cerr << ")\n";
            return kExitVerifyFail;
        }
    } while (detail::next_index(bnum, ctx.n_prime + 1));
    std::cerr << "parseval: " << checked << " corners, all residuals <= 1e-10\n";
    return kExitOk;
}

int verify_charsum(const PrimeContext& ctx) {
    std::size_t checked = 0;
    std::vector<std::uint32_t> k(ctx.dim, 0);
    while (detail::next_index(k, ctx.n_prime)) {
        const std::uint32_t hits = count_generator_hits(k, ctx);
        ++checked;
        if (hits > ctx.dim - 1) {
            std::cerr << "FAIL charsum: " << hits << " hits at k=(";
            for (auto v : k) std::cerr << v << " ";
            std::cerr << ")\n";
            return kExitVerifyFail;
        }
        for (std::uint32_t z = 1; z <= ctx.num_lattices; ++z) {
            std::vector<std::int64_t> ks(k.begin(), k.end());
            const double oracle = std::abs(char_sum_oracle(z, ks, ctx));
            if (std::abs(oracle - char_sum(z, k, ctx).value) > 1e-10) {
                std::cerr << "FAIL charsum: oracle mismatch at z=" << z << "\n";
                return kExitVerifyFail;
            }
        }
    }
    std::cerr << "charsum: " << checked << " frequencies, all counts <= s-1 and "
              << "oracle-consistent\n";
    return kExitOk;
}

int verify_meanzero(const PrimeContext& ctx) {
    std::size_t checked = 0;
    for (std::uint32_t z = 1; z < ctx.n_prime; ++z) {
        std::vector<std::uint32_t> bnum(ctx.dim, 0);
        do {
            auto r = verify_mean_zero_discrete(z, Box::grid(bnum, ctx.n_prime), ctx);
            ++checked;
            if (r.num != 0) {
                std::cerr << "FAIL meanzero: " << r.num << "/" << r.den << " at z=" << z
                          << "\n";
                return kExitVerifyFail;
            }
        } while (detail::next_index(bnum, ctx.n_prime + 1));
    }
    std::cerr << "meanzero: " << checked << " (z, b) pairs, all exactly zero\n";
    return kExitOk;
}

int verify_variance(const PrimeContext& ctx, std::uint64_t seed) {
    const double s = ctx.dim;
    const double m = ctx.num_lattices;
    std::size_t checked = 0;
    std::vector<std::uint32_t> bnum(ctx.dim, 0);
    do {
        auto box = Box::grid(bnum, ctx.n_prime);
        auto dual = sum_variance_fixed(BoundCase::FixedDiscrete, box, ctx);
        ++checked;
        if (std::abs(dual.shift_average - dual.spectral) > 1e-10 ||
            !(dual.shift_average < s + 1e-12)) {
            std::cerr << "FAIL variance: dual-route mismatch or cap exceeded at b=(";
            for (auto v : bnum) std::cerr << v << " ";
            std::cerr << ")\n";
            return kExitVerifyFail;
        }
    } while (detail::next_index(bnum, ctx.n_prime + 1));

    // Monte Carlo routes for the random-generator lemmas, mid box
    std::vector<std::uint32_t> mid(ctx.dim, (ctx.n_prime + 1) / 2);
    auto mid_box = Box::grid(mid, ctx.n_prime);
    auto disc = estimate_variance(BoundCase::RandomDiscrete, mid_box, ctx, 10000, seed);
    auto cont = estimate_variance(BoundCase::RandomContinuous, mid_box, ctx, 10000, seed + 1);
    const double n = ctx.n_prime;
    if (disc.mean > s / m + 3.0 * disc.stderr_ ||
        cont.mean > s / m + s / (3.0 * n * n) + 3.0 * cont.stderr_) {
        std::cerr << "FAIL variance: Monte Carlo estimate above the lemma cap\n";
        return kExitVerifyFail;
    }
    std::cerr << "variance: " << checked << " corners dual-route exact, MC caps hold\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint32_t n_prime, std::uint32_t dim,
               std::int64_t num_lattices, std::uint64_t seed) {
    PrimeContext ctx = make_context(n_prime, dim, num_lattices);
    if (suite == "parseval") return verify_parseval(ctx);
    if (suite == "charsum") return verify_charsum(ctx);
    if (suite == "meanzero") return verify_meanzero(ctx);
    if (suite == "variance") return verify_variance(ctx, seed);
    throw std::invalid_argument("--suite must be parseval|charsum|meanzero|variance");
}

int cmd_campaign(const std::string& config_path, const std::string& case_name,
                 std::uint32_t n_prime, std::uint32_t dim, std::int64_t num_lattices,
                 double failure_prob, std::int64_t num_trials, std::uint64_t seed,
                 const std::string& out_csv, const std::string& out_json,
                 std::uint32_t threads) {
    std::optional<CampaignConfig> config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open " + config_path);
        json j = json::parse(in);
        BoundSpec spec(bound_case_from_string(j.at("case").get<std::string>()),
                       j.at("failure_prob").get<double>(),
                       make_context(j.at("n_prime").get<std::uint32_t>(),
                                    j.at("dim").get<std::uint32_t>(),
                                    j.value("num_lattices", std::int64_t{-1})));
        config.emplace(spec, j.at("num_trials").get<std::uint32_t>(),
                       j.at("master_seed").get<std::uint64_t>());
    } else {
        if (num_trials < 1) throw std::invalid_argument("--num-trials must be >= 1");
        BoundSpec spec(bound_case_from_string(case_name), failure_prob,
                       make_context(n_prime, dim, num_lattices));
        config.emplace(spec, static_cast<std::uint32_t>(num_trials), seed);
    }
    if (!out_csv.empty()) config->csv_path = out_csv;
    if (!out_json.empty()) config->json_path = out_json;
    config->num_threads = threads ? threads : std::thread::hardware_concurrency();

    auto result = run_campaign(*config);
    std::cout << summary_to_json(*config, result.summary).dump(2) << "\n";
    std::cerr << "campaign: " << result.summary.num_trials << " trials, "
              << result.summary.num_violations << " bound violations\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiset unions of shifted Korobov lattices: construction, "
                 "star discrepancy, bounds, and verification"};
    app.require_subcommand(1);

    std::uint32_t n_prime = 5, dim = 2, z = 1, threads = 0;
    std::int64_t num_lattices = -1, num_trials = 200;
    std::uint64_t seed = 0;
    double failure_prob = 0.5;
    std::string generators = "fixed", shift = "discrete", out_path, in_path;
    std::string coeff_type = "cont", case_name = "fixed-discrete", suite = "parseval";
    std::string out_csv, out_json, config_path;
    std::vector<std::int64_t> k;
    std::vector<double> b;
    std::vector<std::uint32_t> b_num;
    bool exact = false;

    auto add_ctx = [&](CLI::App* cmd, bool require_prime = true) {
        auto* opt = cmd->add_option("--n-prime", n_prime, "prime modulus N");
        if (require_prime) opt->required();
        cmd->add_option("--dim", dim, "dimension s");
        cmd->add_option("--num-lattices", num_lattices, "M (default N-1)");
    };

    auto* gen = app.add_subcommand("generate", "build a shifted Korobov multiset union");
    add_ctx(gen);
    gen->add_option("--generators", generators, "random|fixed");
    gen->add_option("--shift", shift, "continuous|discrete");
    gen->add_option("--seed", seed, "master seed");
    gen->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* coeff = app.add_subcommand("coeff", "evaluate a Fourier coefficient");
    coeff->add_option("--type", coeff_type, "cont|disc")->required();
    coeff->add_option("--k", k, "frequency vector")->required();
    coeff->add_option("--b", b, "continuous box corner");
    coeff->add_option("--b-num", b_num, "grid box numerators");
    coeff->add_option("--n-prime", n_prime, "prime modulus N (disc)");

    auto* cs = app.add_subcommand("charsum", "character sum indicator and oracle");
    add_ctx(cs);
    cs->add_option("--z", z, "generator")->required();
    cs->add_option("--k", k, "frequency vector")->required();

    auto* disc = app.add_subcommand("disc", "star discrepancy report");
    add_ctx(disc, false);
    disc->add_option("--in", in_path, "point-set CSV to analyze");
    disc->add_option("--generators", generators, "random|fixed");
    disc->add_option("--shift", shift, "continuous|discrete");
    disc->add_option("--seed", seed, "master seed");
    disc->add_flag("--exact", exact, "also compute the exact critical-box value");

    auto* bound = app.add_subcommand("bound", "theorem bound breakdown");
    add_ctx(bound);
    bound->add_option("--case", case_name, "construction case")->required();
    bound->add_option("--failure-prob", failure_prob, "union-bound failure mass");

    auto* verify = app.add_subcommand("verify", "lemma verification suites");
    add_ctx(verify);
    verify->add_option("--suite", suite, "parseval|charsum|meanzero|variance")->required();
    verify->add_option("--seed", seed, "seed for Monte Carlo checks");

    auto* campaign = app.add_subcommand("campaign", "seeded Monte Carlo campaign");
    add_ctx(campaign, false);
    campaign->add_option("--config", config_path, "campaign config JSON");
    campaign->add_option("--case", case_name, "construction case");
    campaign->add_option("--failure-prob", failure_prob, "union-bound failure mass");
    campaign->add_option("--num-trials", num_trials, "number of trials");
    campaign->add_option("--seed", seed, "master seed");
    campaign->add_option("--out-csv", out_csv, "per-trial CSV path");
    campaign->add_option("--out-json", out_json, "summary JSON path");
    campaign->add_option("--threads", threads, "worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_generate(n_prime, dim, num_lattices, generators, shift, seed,
                                out_path);
        }
        if (coeff->parsed()) return cmd_coeff(coeff_type, k, b, b_num, n_prime);
        if (cs->parsed()) return cmd_charsum(n_prime, dim, num_lattices, z, k);
        if (disc->parsed()) {
            return cmd_disc(in_path, n_prime, dim, num_lattices, generators, shift, seed,
                            exact);
        }
        if (bound->parsed()) {
            return cmd_bound(case_name, n_prime, dim, num_lattices, failure_prob);
        }
        if (verify->parsed()) return cmd_verify(suite, n_prime, dim, num_lattices, seed);
        if (campaign->parsed()) {
            return cmd_campaign(config_path, case_name, n_prime, dim, num_lattices,
                                failure_prob, num_trials, seed, out_csv, out_json, threads);
        }
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitArgError;
}
