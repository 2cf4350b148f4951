#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "korolat/errors.hpp"
#include "korolat/modmath.hpp"

namespace korolat {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

// The anchored box J(b) = [0, b). When the corner lies on the grid
// (b_j = m_j / N with 0 <= m_j <= N), the exact numerators are carried along
// so grid-case identities evaluate without rounding.
struct Box {
    std::vector<double> corner;
    std::optional<std::vector<std::uint32_t>> grid_numerators;
    std::uint32_t modulus = 0; // N when grid_numerators is present

    static Box continuous(std::vector<double> b) {
        for (double x : b) {
            if (!(x >= 0.0 && x <= 1.0)) {
                throw std::invalid_argument("Box: corner coordinates must lie in [0,1]");
            }
        }
        Box box;
        box.corner = std::move(b);
        return box;
    }

    static Box grid(std::vector<std::uint32_t> numerators, std::uint32_t n) {
        Box box;
        box.corner.reserve(numerators.size());
        for (std::uint32_t m : numerators) {
            if (m > n) throw std::invalid_argument("Box: grid numerator out of {0,...,N}");
            box.corner.push_back(static_cast<double>(m) / n);
        }
        box.modulus = n;
        box.grid_numerators = std::move(numerators);
        return box;
    }

    std::size_t dim() const { return corner.size(); }
    bool on_grid() const { return grid_numerators.has_value(); }
};

// e^{-2 pi i m / N} with the angle reduced modulo N first.
inline std::complex<double> unit_root_neg(std::int64_t m, std::uint32_t n) {
    std::int64_t r = m % static_cast<std::int64_t>(n);
    if (r < 0) r += n;
    return std::polar(1.0, -two_pi * static_cast<double>(r) / n);
}

// Fourier coefficient c_k(b) of the indicator of [0, b) on the torus:
// b for k = 0, else (1 - e^{-2 pi i k b}) / (2 pi i k).
inline std::complex<double> cont_coeff_1d(std::int64_t k, double b) {
    if (!(b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument("cont_coeff_1d: b must lie in [0,1]");
    }
    if (k == 0) return {b, 0.0};
    const double kb = static_cast<double>(k) * b;
    const double phase = -two_pi * (kb - std::floor(kb)); // reduce k*b mod 1
    const std::complex<double> numerator = 1.0 - std::polar(1.0, phase);
    return numerator / std::complex<double>(0.0, two_pi * static_cast<double>(k));
}

inline std::complex<double> cont_coeff(const std::vector<std::int64_t>& k, const Box& b) {
    if (k.size() != b.dim()) throw std::invalid_argument("cont_coeff: dimension mismatch");
    std::complex<double> prod{1.0, 0.0};
    for (std::size_t j = 0; j < k.size(); ++j) {
        prod *= cont_coeff_1d(k[j], b.corner[j]);
    }
    return prod;
}

// Discrete Fourier coefficient C_k(b) on the grid Gamma: b_num/N for k = 0,
// else (1/N) (1 - e^{-2 pi i k b_num / N}) / (1 - e^{-2 pi i k / N}).
// The formula extends continuously to b_num = N, where it vanishes for k != 0.
inline std::complex<double> disc_coeff_1d(std::uint32_t k, std::uint32_t b_num,
                                          std::uint32_t n) {
    if (k > n - 1) throw std::invalid_argument("disc_coeff_1d: k must be in {0,...,N-1}");
    if (b_num > n) throw std::invalid_argument("disc_coeff_1d: b_num must be in {0,...,N}");
    if (k == 0) return {static_cast<double>(b_num) / n, 0.0};
    const std::complex<double> num =
        1.0 - unit_root_neg(static_cast<std::int64_t>(k) * b_num, n);
    const std::complex<double> den = 1.0 - unit_root_neg(k, n);
    return num / den / static_cast<double>(n);
}

inline std::complex<double> disc_coeff(const std::vector<std::uint32_t>& k, const Box& b) {
    if (!b.on_grid()) throw std::invalid_argument("disc_coeff: box must be on the grid");
    if (k.size() != b.dim()) throw std::invalid_argument("disc_coeff: dimension mismatch");
    std::complex<double> prod{1.0, 0.0};
    for (std::size_t j = 0; j < k.size(); ++j) {
        prod *= disc_coeff_1d(k[j], (*b.grid_numerators)[j], b.modulus);
    }
    return prod;
}

namespace detail {

// Advances a mixed-radix counter; returns false once it wraps to all zeros.
inline bool next_index(std::vector<std::uint32_t>& idx, std::uint32_t radix) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (++idx[j] < radix) return true;
        idx[j] = 0;
    }
    return false;
}

inline double checked_pow_count(std::uint64_t base, std::uint32_t exp,
                                std::uint64_t cap, const char* who) {
    double total = 1.0;
    for (std::uint32_t j = 0; j < exp; ++j) {
        total *= static_cast<double>(base);
        if (total > static_cast<double>(cap)) {
            throw capacity_error(std::string(who) + ": enumeration size exceeds cap");
        }
    }
    return total;
}

} // namespace detail

// Volume of a box, from exact numerators when available.
inline double box_volume(const Box& b) {
    if (b.on_grid()) {
        unsigned __int128 num = 1, den = 1;
        for (std::size_t j = 0; j < b.dim(); ++j) {
            num *= (*b.grid_numerators)[j];
            den *= b.modulus;
        }
        return static_cast<double>(static_cast<long double>(num) /
                                   static_cast<long double>(den));
    }
    double v = 1.0;
    for (double x : b.corner) v *= x;
    return v;
}

// | sum_{k in D_N^s \ {0}} |C_k(b)|^2  -  lambda(b)(1 - lambda(b)) |,
// by exhaustive enumeration over all N^s - 1 nonzero frequencies.
inline double parseval_discrete_residual(const Box& b, const PrimeContext& ctx,
                                         std::uint64_t cap = default_enumeration_cap) {
    if (!b.on_grid() || b.modulus != ctx.n_prime || b.dim() != ctx.dim) {
        throw std::invalid_argument("parseval_discrete_residual: box must lie on Gamma-bar^s");
    }
    const std::uint32_t n = ctx.n_prime;
    const std::uint32_t s = ctx.dim;
    detail::checked_pow_count(n, s, cap, "parseval_discrete_residual");

    // Per-dimension coefficient tables, |C_k(b_j)|^2.
    std::vector<std::vector<double>> sq(s, std::vector<double>(n));
    for (std::uint32_t j = 0; j < s; ++j) {
        for (std::uint32_t k = 0; k < n; ++k) {
            sq[j][k] = std::norm(disc_coeff_1d(k, (*b.grid_numerators)[j], n));
        }
    }
    double sum = 0.0;
    std::vector<std::uint32_t> k(s, 0);
    while (detail::next_index(k, n)) { // skips k = 0
        double term = 1.0;
        for (std::uint32_t j = 0; j < s; ++j) term *= sq[j][k[j]];
        sum += term;
    }
    const double lambda = box_volume(b);
    return std::abs(sum - lambda * (1.0 - lambda));
}

// Truncated continuous Parseval sum over the cube {-K,...,K}^s \ {0}; a
// monotone lower bound for lambda(b)(1 - lambda(b)). Uses the product
// structure of the cube, which equals the direct enumeration exactly.
inline double parseval_continuous_truncated(const Box& b, std::uint64_t k_max) {
    if (k_max < 1) throw std::invalid_argument("parseval_continuous_truncated: K_max >= 1");
    double prod_all = 1.0, prod_zero = 1.0;
    for (std::size_t j = 0; j < b.dim(); ++j) {
        double col = std::norm(cont_coeff_1d(0, b.corner[j]));
        prod_zero *= col;
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            col += std::norm(cont_coeff_1d(static_cast<std::int64_t>(k), b.corner[j]));
            col += std::norm(cont_coeff_1d(-static_cast<std::int64_t>(k), b.corner[j]));
        }
        prod_all *= col;
    }
    return prod_all - prod_zero;
}

// Truncated aliasing remainder R_N(b) = sum over h in {-H,...,H}^{|u|} \ {0}
// of prod_j |c_{N h_j}(b_j)|^2, where u is the set of coordinates with
// b_j < 1. The analytic per-dimension tail 1/(3N^2) is added by callers.
inline double remainder_term(const Box& b, std::uint32_t n, std::uint64_t h_max) {
    if (h_max < 1) throw std::invalid_argument("remainder_term: H_max >= 1");
    double prod_all = 1.0, prod_zero = 1.0;
    bool any_active = false;
    for (std::size_t j = 0; j < b.dim(); ++j) {
        const double bj = b.corner[j];
        if (bj >= 1.0) continue; // inactive coordinate
        any_active = true;
        double col = bj * bj; // |c_0(b_j)|^2
        prod_zero *= bj * bj;
        for (std::uint64_t h = 1; h <= h_max; ++h) {
            const std::int64_t nh = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(h);
            col += std::norm(cont_coeff_1d(nh, bj));
            col += std::norm(cont_coeff_1d(-nh, bj));
        }
        prod_all *= col;
    }
    if (!any_active) return 0.0;
    return prod_all - prod_zero;
}

} // namespace korolat
