#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "korolat/fourier.hpp"
#include "korolat/modmath.hpp"
#include "korolat/pointset.hpp"

namespace korolat {

// S_N(z, k) for a Korobov lattice collapses to the indicator of
// k . a(z) == 0 (mod N); both the indicator value and the residue are kept.
struct CharSumResult {
    std::uint32_t value;                // 0 or 1
    std::uint32_t dot_product_residue;  // k . a(z) mod N
};

namespace detail {

// Componentwise reduction of an integer frequency vector into D_N^s.
inline std::vector<std::uint32_t> reduce_frequency(const std::vector<std::int64_t>& k,
                                                   std::uint32_t n) {
    std::vector<std::uint32_t> out(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        std::int64_t r = k[j] % static_cast<std::int64_t>(n);
        if (r < 0) r += n;
        out[j] = static_cast<std::uint32_t>(r);
    }
    return out;
}

} // namespace detail

inline CharSumResult char_sum(std::uint32_t z, const std::vector<std::uint32_t>& k,
                              const PrimeContext& ctx) {
    if (k.size() != ctx.dim) throw std::invalid_argument("char_sum: dimension mismatch");
    const GeneratorVector gen = korobov_vector(z, ctx);
    std::uint64_t dot = 0;
    for (std::uint32_t j = 0; j < ctx.dim; ++j) {
        dot = (dot + static_cast<std::uint64_t>(k[j] % ctx.n_prime) * gen.components[j]) %
              ctx.n_prime;
    }
    const auto residue = static_cast<std::uint32_t>(dot);
    return CharSumResult{residue == 0 ? 1u : 0u, residue};
}

// Brute-force evaluation of (1/N) sum_n e^{2 pi i k . x_n} over the actual
// lattice points; the independent oracle for char_sum.
inline std::complex<double> char_sum_oracle(std::uint32_t z,
                                            const std::vector<std::int64_t>& k,
                                            const PrimeContext& ctx) {
    if (k.size() != ctx.dim) throw std::invalid_argument("char_sum_oracle: dimension mismatch");
    const PointSet lattice = generate_korobov(z, ctx);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        double phase = 0.0;
        for (std::uint32_t j = 0; j < ctx.dim; ++j) {
            phase += static_cast<double>(k[j]) * lattice.coord(i, j);
        }
        sum += std::polar(1.0, two_pi * (phase - std::floor(phase)));
    }
    return sum / static_cast<double>(ctx.n_prime);
}

// Number of generators z in {1,...,M} with k . a(z) == 0 (mod N). For
// k in D_N^s \ {0} the associated polynomial is nonzero mod N, so the count
// is at most s - 1.
inline std::uint32_t count_generator_hits(const std::vector<std::uint32_t>& k,
                                          const PrimeContext& ctx) {
    if (k.size() != ctx.dim) {
        throw std::invalid_argument("count_generator_hits: dimension mismatch");
    }
    bool all_zero = true;
    for (std::uint32_t kj : k) {
        if (kj % ctx.n_prime != 0) all_zero = false;
    }
    if (all_zero) {
        throw std::invalid_argument("count_generator_hits: k must be nonzero in D_N^s");
    }
    std::uint32_t hits = 0;
    for (std::uint32_t z = 1; z <= ctx.num_lattices; ++z) {
        hits += char_sum(z, k, ctx).value;
    }
    return hits;
}

inline double expected_sq_char_sum(const std::vector<std::uint32_t>& k,
                                   const PrimeContext& ctx) {
    return static_cast<double>(count_generator_hits(k, ctx)) / ctx.num_lattices;
}

} // namespace korolat
