#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "korolat/errors.hpp"

namespace korolat {

// Deterministic primality test by trial division. Intended for desk-scale n.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("is_prime: n must be >= 2");
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

// The prime modulus N, dimension s and number of lattices M in a construction.
// N is bounded below 2^31 so modular products fit in 64-bit intermediates.
struct PrimeContext {
    std::uint32_t n_prime;
    std::uint32_t dim;
    std::uint32_t num_lattices;

    PrimeContext(std::uint32_t n, std::uint32_t s, std::uint32_t m)
        : n_prime(n), dim(s), num_lattices(m) {
        if (n >= (1u << 31)) throw std::invalid_argument("PrimeContext: N must be < 2^31");
        if (!is_prime(n)) {
            throw std::invalid_argument("PrimeContext: " + std::to_string(n) + " is not prime");
        }
        if (s < 1) throw std::invalid_argument("PrimeContext: dim must be positive");
        if (m < 1 || m > n - 1) {
            throw std::invalid_argument("PrimeContext: num_lattices must be in {1,...,N-1}");
        }
    }

    // Default M = N - 1.
    PrimeContext(std::uint32_t n, std::uint32_t s) : PrimeContext(n, s, n - 1) {}

    std::uint64_t n_tot() const {
        return static_cast<std::uint64_t>(num_lattices) * n_prime;
    }
};

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % n);
}

inline std::uint32_t pow_mod(std::uint32_t base, std::uint32_t exp, std::uint32_t n) {
    std::uint64_t result = 1 % n;
    std::uint64_t b = base % n;
    while (exp > 0) {
        if (exp & 1u) result = (result * b) % n;
        b = (b * b) % n;
        exp >>= 1u;
    }
    return static_cast<std::uint32_t>(result);
}

// The generating vector a(z) = (1, z, z^2, ..., z^{s-1}) mod N.
struct GeneratorVector {
    std::uint32_t z;
    std::vector<std::uint32_t> components;
};

inline GeneratorVector korobov_vector(std::uint32_t z, const PrimeContext& ctx) {
    if (z < 1 || z > ctx.n_prime - 1) {
        throw std::invalid_argument("korobov_vector: z must be in {1,...,N-1}");
    }
    GeneratorVector g;
    g.z = z;
    g.components.resize(ctx.dim);
    g.components[0] = 1;
    for (std::uint32_t j = 1; j < ctx.dim; ++j) {
        g.components[j] = mul_mod(g.components[j - 1], z, ctx.n_prime);
    }
    return g;
}

} // namespace korolat
