#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "korolat/modmath.hpp"

namespace korolat {

// The four construction scenarios: generator selection x shift type.
enum class BoundCase {
    RandomContinuous,
    FixedContinuous,
    RandomDiscrete,
    FixedDiscrete,
};

inline bool is_continuous(BoundCase c) {
    return c == BoundCase::RandomContinuous || c == BoundCase::FixedContinuous;
}

inline bool is_random_generators(BoundCase c) {
    return c == BoundCase::RandomContinuous || c == BoundCase::RandomDiscrete;
}

inline std::string to_string(BoundCase c) {
    switch (c) {
        case BoundCase::RandomContinuous: return "random-continuous";
        case BoundCase::FixedContinuous: return "fixed-continuous";
        case BoundCase::RandomDiscrete: return "random-discrete";
        case BoundCase::FixedDiscrete: return "fixed-discrete";
    }
    return "?";
}

inline BoundCase bound_case_from_string(const std::string& s) {
    if (s == "random-continuous") return BoundCase::RandomContinuous;
    if (s == "fixed-continuous") return BoundCase::FixedContinuous;
    if (s == "random-discrete") return BoundCase::RandomDiscrete;
    if (s == "fixed-discrete") return BoundCase::FixedDiscrete;
    throw std::invalid_argument("unknown case '" + s + "'");
}

// failure_prob is the union-bound probability mass under which the bound may
// be exceeded (the theorems' 1 - delta).
struct BoundSpec {
    BoundCase bound_case;
    double failure_prob;
    PrimeContext ctx;

    BoundSpec(BoundCase c, double fp, PrimeContext context)
        : bound_case(c), failure_prob(fp), ctx(context) {
        if (!(fp > 0.0 && fp < 1.0)) {
            throw std::invalid_argument("BoundSpec: failure_prob must lie in (0,1)");
        }
    }
};

// Variance cap for the sum of the M per-lattice discrepancies:
// s(1 + 1/(3N)) in the continuous cases, s in the discrete cases.
inline double variance_cap(BoundCase c, const PrimeContext& ctx) {
    const double s = ctx.dim;
    return is_continuous(c) ? s * (1.0 + 1.0 / (3.0 * ctx.n_prime)) : s;
}

// L = log(2 (N+1)^s) + log(1/failure_prob), natural logarithms.
inline double log_term(const PrimeContext& ctx, double failure_prob) {
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
        throw std::invalid_argument("log_term: failure_prob must lie in (0,1)");
    }
    return ctx.dim * std::log(static_cast<double>(ctx.n_prime) + 1.0) + std::log(2.0) +
           std::log(1.0 / failure_prob);
}

// Positive root of t^2 - (2L/3) t - 2 sigma^2 L = 0 with sigma^2 the case's
// variance cap: t0 = (L/3)(1 + sqrt(1 + 18 sigma^2 / L)).
inline double t_zero(double big_l, BoundCase c, const PrimeContext& ctx) {
    if (!(big_l > 0.0)) throw std::invalid_argument("t_zero: L must be positive");
    const double cap = variance_cap(c, ctx);
    return big_l / 3.0 * (1.0 + std::sqrt(1.0 + 18.0 * cap / big_l));
}

// The underbraced constants: (1/3)(1 + sqrt(1 + 18 (7/6) / log 3)) = 1.8283...
// for continuous shifts and (1/3)(1 + sqrt(1 + 18 / log 3)) = 1.7231... for
// discrete shifts.
inline double universal_constant(BoundCase c) {
    const double factor = is_continuous(c) ? 18.0 * (7.0 / 6.0) : 18.0;
    return (1.0 + std::sqrt(1.0 + factor / std::log(3.0))) / 3.0;
}

inline double rounded_constant(BoundCase c) { return is_continuous(c) ? 1.83 : 1.73; }

// Two-sided Bernstein tail 2 exp(-t^2 / (2 variance + 2t/3)).
inline double bernstein_tail(double t, double var) {
    if (!(t > 0.0)) throw std::invalid_argument("bernstein_tail: t must be positive");
    if (var < 0.0) throw std::invalid_argument("bernstein_tail: variance must be >= 0");
    return 2.0 * std::exp(-t * t / (2.0 * var + 2.0 * t / 3.0));
}

struct BoundBreakdown {
    double variance_cap;
    double log_term;
    double t_zero;
    double constant;          // unrounded 1.8283... / 1.7231...
    double rounded_constant;  // 1.83 / 1.73 exactly as printed in the theorems
    double final_bound;       // rounded_constant * L / M
    double pipeline_value;    // t0 / M + s / N, the unrounded chain
};

inline BoundBreakdown theorem_bound(const BoundSpec& spec) {
    BoundBreakdown b{};
    const PrimeContext& ctx = spec.ctx;
    b.variance_cap = variance_cap(spec.bound_case, ctx);
    b.log_term = log_term(ctx, spec.failure_prob);
    b.t_zero = t_zero(b.log_term, spec.bound_case, ctx);
    b.constant = universal_constant(spec.bound_case);
    b.rounded_constant = rounded_constant(spec.bound_case);
    b.final_bound = b.rounded_constant * b.log_term / ctx.num_lattices;
    b.pipeline_value = b.t_zero / ctx.num_lattices +
                       static_cast<double>(ctx.dim) / ctx.n_prime;
    return b;
}

inline nlohmann::json to_json(const BoundBreakdown& b) {
    return nlohmann::json{
        {"variance_cap", b.variance_cap}, {"log_term", b.log_term},
        {"t_zero", b.t_zero},             {"constant", b.constant},
        {"rounded_constant", b.rounded_constant},
        {"final_bound", b.final_bound},   {"pipeline_value", b.pipeline_value},
    };
}

} // namespace korolat
