#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "korolat/errors.hpp"
#include "korolat/fourier.hpp"
#include "korolat/pointset.hpp"

namespace korolat {

inline constexpr std::uint64_t default_grid_sweep_cap = 10'000'000;
inline constexpr std::uint64_t default_exact_cap = 10'000'000;

inline double volume(const Box& b) { return box_volume(b); }

// Signed local discrepancy disc(p, J(b)) with half-open membership x_j < b_j.
// For grid point sets against grid boxes the count is exact integer
// comparison of numerators.
inline double local_disc(const PointSet& p, const Box& b) {
    if (p.size() == 0) throw std::invalid_argument("local_disc: empty point set");
    if (p.dim != b.dim()) throw std::invalid_argument("local_disc: dimension mismatch");
    std::uint64_t count = 0;
    if (p.rep == Representation::Grid && b.on_grid() && b.modulus == p.modulus) {
        for (const auto& pt : p.grid_points) {
            bool inside = true;
            for (std::uint32_t j = 0; j < p.dim; ++j) {
                if (pt[j] >= (*b.grid_numerators)[j]) { inside = false; break; }
            }
            count += inside;
        }
    } else {
        for (std::size_t i = 0; i < p.size(); ++i) {
            bool inside = true;
            for (std::uint32_t j = 0; j < p.dim; ++j) {
                if (!(p.coord(i, j) < b.corner[j])) { inside = false; break; }
            }
            count += inside;
        }
    }
    return static_cast<double>(count) / static_cast<double>(p.size()) - volume(b);
}

struct DiscrepancyReport {
    double grid_max = 0.0;                    // max over b in Gamma-bar^s of |disc|
    double upper_bound = 0.0;                 // grid_max + s/N
    std::optional<double> exact;              // critical-box D*, when computed
    std::vector<std::uint32_t> argmax_numerators; // corner attaining grid_max, over N
};

inline nlohmann::json to_json(const DiscrepancyReport& r) {
    nlohmann::json j;
    j["grid_max"] = r.grid_max;
    j["upper_bound"] = r.upper_bound;
    j["exact"] = r.exact.has_value() ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
    j["argmax_box"] = r.argmax_numerators;
    return j;
}

// Exhaustive maximization of |disc| over all corners b in Gamma-bar^s via an
// s-dimensional prefix-count sweep: points are binned into the N^s cells once,
// then counts for every box follow by cumulative sums along each axis.
inline DiscrepancyReport star_disc_grid(const PointSet& p, const PrimeContext& ctx,
                                        std::uint64_t cap = default_grid_sweep_cap) {
    if (p.size() == 0) throw std::invalid_argument("star_disc_grid: empty point set");
    if (p.dim != ctx.dim) throw std::invalid_argument("star_disc_grid: dimension mismatch");
    if (p.rep == Representation::Grid && p.modulus != ctx.n_prime) {
        throw std::invalid_argument("star_disc_grid: modulus mismatch");
    }
    const std::uint32_t n = ctx.n_prime;
    const std::uint32_t s = ctx.dim;
    const std::uint64_t side = n + 1;
    double total_d = detail::checked_pow_count(side, s, cap, "star_disc_grid");
    const auto total = static_cast<std::uint64_t>(total_d);

    // Deposit each point at cell index + 1 per dimension; the zero planes of
    // the table stay empty so the prefix sum directly yields strict counts.
    std::vector<std::int64_t> table(total, 0);
    std::vector<std::uint64_t> stride(s);
    stride[0] = 1;
    for (std::uint32_t j = 1; j < s; ++j) stride[j] = stride[j - 1] * side;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::uint64_t idx = 0;
        for (std::uint32_t j = 0; j < s; ++j) {
            std::uint64_t c;
            if (p.rep == Representation::Grid) {
                c = p.grid_points[i][j];
            } else {
                c = std::min<std::uint64_t>(
                    static_cast<std::uint64_t>(p.real_points[i][j] * n), n - 1);
            }
            idx += (c + 1) * stride[j];
        }
        table[idx] += 1;
    }
    // Cumulative sums along each axis: table[b] becomes #points with cell < b.
    for (std::uint32_t j = 0; j < s; ++j) {
        const std::uint64_t st = stride[j];
        const std::uint64_t block = st * side;
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t i = st; i < block; ++i) {
                table[base + i] += table[base + i - st];
            }
        }
    }

    DiscrepancyReport report;
    report.argmax_numerators.assign(s, 0);
    const auto n_pts = static_cast<double>(p.size());
    std::vector<std::uint32_t> b(s, 0);
    std::uint64_t idx = 0;
    while (true) {
        double vol = 1.0;
        for (std::uint32_t j = 0; j < s; ++j) vol *= static_cast<double>(b[j]) / n;
        const double disc = static_cast<double>(table[idx]) / n_pts - vol;
        if (std::abs(disc) > report.grid_max) {
            report.grid_max = std::abs(disc);
            report.argmax_numerators = b;
        }
        // advance the odometer over {0,...,N}^s
        std::uint32_t j = 0;
        for (; j < s; ++j) {
            if (b[j] < n) { ++b[j]; idx += stride[j]; break; }
            idx -= static_cast<std::uint64_t>(b[j]) * stride[j];
            b[j] = 0;
        }
        if (j == s) break;
    }
    report.upper_bound = report.grid_max + static_cast<double>(s) / n;
    return report;
}

// Exact star discrepancy via critical boxes: candidate corners are the
// Cartesian product of per-dimension distinct point coordinates plus 1. For
// each candidate both one-sided discrepancies are evaluated, with strict
// counts for the open side and closed counts for the supremum side.
inline double star_disc_exact(const PointSet& p,
                              std::uint64_t cap = default_exact_cap) {
    if (p.size() == 0) throw std::invalid_argument("star_disc_exact: empty point set");
    const std::uint32_t s = p.dim;
    const std::size_t n_pts = p.size();

    std::vector<std::vector<double>> candidates(s);
    for (std::uint32_t j = 0; j < s; ++j) {
        std::vector<double>& c = candidates[j];
        c.reserve(n_pts + 1);
        for (std::size_t i = 0; i < n_pts; ++i) c.push_back(p.coord(i, j));
        c.push_back(1.0);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    double n_boxes = 1.0;
    for (std::uint32_t j = 0; j < s; ++j) n_boxes *= static_cast<double>(candidates[j].size());
    if (n_boxes * static_cast<double>(n_pts) > static_cast<double>(cap)) {
        throw capacity_error("star_disc_exact: candidate evaluations exceed cap");
    }

    double best = 0.0;
    std::vector<std::size_t> idx(s, 0);
    std::vector<double> corner(s);
    while (true) {
        double vol = 1.0;
        for (std::uint32_t j = 0; j < s; ++j) {
            corner[j] = candidates[j][idx[j]];
            vol *= corner[j];
        }
        std::uint64_t strict = 0, closed = 0;
        for (std::size_t i = 0; i < n_pts; ++i) {
            bool in_strict = true, in_closed = true;
            for (std::uint32_t j = 0; j < s; ++j) {
                const double x = p.coord(i, j);
                if (!(x < corner[j])) in_strict = false;
                if (!(x <= corner[j])) { in_closed = false; break; }
            }
            strict += in_strict;
            closed += in_closed;
        }
        const double inv = 1.0 / static_cast<double>(n_pts);
        best = std::max(best, vol - static_cast<double>(strict) * inv);
        best = std::max(best, static_cast<double>(closed) * inv - vol);

        std::uint32_t j = 0;
        for (; j < s; ++j) {
            if (++idx[j] < candidates[j].size()) break;
            idx[j] = 0;
        }
        if (j == s) break;
    }
    return best;
}

} // namespace korolat
