#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "korolat/modmath.hpp"
#include "korolat/rng.hpp"

namespace korolat {

using GridPoint = std::vector<std::uint32_t>; // numerators over N
using RealPoint = std::vector<double>;        // coordinates in [0,1)

enum class Representation { Grid, Real };

// A finite multiset of points, either on the grid Gamma^s (stored as exact
// integer numerators over N) or in [0,1)^s. Duplicates are retained and
// counted with multiplicity.
struct PointSet {
    Representation rep = Representation::Grid;
    std::uint32_t modulus = 0; // N, meaningful for Grid representation
    std::uint32_t dim = 0;
    std::vector<GridPoint> grid_points;
    std::vector<RealPoint> real_points;

    std::size_t size() const {
        return rep == Representation::Grid ? grid_points.size() : real_points.size();
    }

    // Coordinate of point i in dimension j as a real number.
    double coord(std::size_t i, std::uint32_t j) const {
        if (rep == Representation::Grid) {
            return static_cast<double>(grid_points[i][j]) / modulus;
        }
        return real_points[i][j];
    }
};

struct ContinuousShift {
    std::vector<double> delta;
};

struct DiscreteShift {
    std::uint32_t modulus;
    std::vector<std::uint32_t> numerators;
};

// The Korobov rank-1 lattice point set P_N(z): point n has numerators
// n * (1, z, z^2, ..., z^{s-1}) mod N, for n = 0, ..., N-1.
inline PointSet generate_korobov(std::uint32_t z, const PrimeContext& ctx) {
    const GeneratorVector gen = korobov_vector(z, ctx);
    PointSet p;
    p.rep = Representation::Grid;
    p.modulus = ctx.n_prime;
    p.dim = ctx.dim;
    p.grid_points.reserve(ctx.n_prime);
    for (std::uint32_t n = 0; n < ctx.n_prime; ++n) {
        GridPoint pt(ctx.dim);
        for (std::uint32_t j = 0; j < ctx.dim; ++j) {
            pt[j] = mul_mod(n, gen.components[j], ctx.n_prime);
        }
        p.grid_points.push_back(std::move(pt));
    }
    return p;
}

inline PointSet shift_discrete(const PointSet& p, const DiscreteShift& d) {
    if (p.rep != Representation::Grid) {
        throw std::invalid_argument("shift_discrete: point set must be grid-represented");
    }
    if (p.modulus != d.modulus || p.dim != d.numerators.size()) {
        throw std::invalid_argument("shift_discrete: modulus or dimension mismatch");
    }
    PointSet out = p;
    for (auto& pt : out.grid_points) {
        for (std::uint32_t j = 0; j < p.dim; ++j) {
            pt[j] = (pt[j] + d.numerators[j]) % p.modulus;
        }
    }
    return out;
}

// Fractional part with the [0,1) invariant enforced: a sum that rounds to
// exactly 1.0 maps to 0.0.
inline double wrap_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

inline PointSet shift_continuous(const PointSet& p, const ContinuousShift& d) {
    if (p.dim != d.delta.size()) {
        throw std::invalid_argument("shift_continuous: dimension mismatch");
    }
    PointSet out;
    out.rep = Representation::Real;
    out.dim = p.dim;
    out.real_points.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        RealPoint pt(p.dim);
        for (std::uint32_t j = 0; j < p.dim; ++j) {
            pt[j] = wrap_unit(p.coord(i, j) + d.delta[j]);
        }
        out.real_points.push_back(std::move(pt));
    }
    return out;
}

// Concatenation preserving multiplicity. All parts must share representation,
// dimension, and (for grid sets) modulus.
inline PointSet multiset_union(const std::vector<PointSet>& parts) {
    if (parts.empty()) throw std::invalid_argument("multiset_union: no parts");
    PointSet out;
    out.rep = parts.front().rep;
    out.modulus = parts.front().modulus;
    out.dim = parts.front().dim;
    for (const auto& part : parts) {
        if (part.rep != out.rep || part.dim != out.dim ||
            (out.rep == Representation::Grid && part.modulus != out.modulus)) {
            throw std::invalid_argument("multiset_union: heterogeneous parts");
        }
        out.grid_points.insert(out.grid_points.end(), part.grid_points.begin(),
                               part.grid_points.end());
        out.real_points.insert(out.real_points.end(), part.real_points.begin(),
                               part.real_points.end());
    }
    return out;
}

enum class GeneratorMode { Random, Fixed };
enum class ShiftMode { Continuous, Discrete };

struct ConstructionResult {
    PointSet points;
    std::vector<std::uint32_t> generators; // the z used per sub-lattice
};

// Builds the multiset union of M shifted Korobov lattices. Generators are
// either z_r i.i.d. uniform on {1,...,M} or the fixed sequence 1,...,M;
// shifts are i.i.d. uniform on [0,1)^s or Gamma^s. The RNG stream for
// sub-lattice r of trial t is derived from (seed, t*M + r): the generator is
// drawn first, then the s shift coordinates, all from that stream.
inline ConstructionResult sample_construction(const PrimeContext& ctx,
                                              GeneratorMode generator_mode,
                                              ShiftMode shift_mode,
                                              std::uint64_t seed,
                                              std::uint64_t trial_index = 0) {
    const std::uint32_t m = ctx.num_lattices;
    ConstructionResult result;
    std::vector<PointSet> parts;
    parts.reserve(m);
    for (std::uint32_t r = 0; r < m; ++r) {
        Rng rng = make_stream(seed, trial_index * m + r);
        std::uint32_t z;
        if (generator_mode == GeneratorMode::Random) {
            z = 1 + static_cast<std::uint32_t>(rng.uniform_below(m));
        } else {
            z = r + 1;
        }
        result.generators.push_back(z);
        PointSet lattice = generate_korobov(z, ctx);
        if (shift_mode == ShiftMode::Discrete) {
            DiscreteShift d;
            d.modulus = ctx.n_prime;
            d.numerators.resize(ctx.dim);
            for (std::uint32_t j = 0; j < ctx.dim; ++j) {
                d.numerators[j] = static_cast<std::uint32_t>(rng.uniform_below(ctx.n_prime));
            }
            parts.push_back(shift_discrete(lattice, d));
        } else {
            ContinuousShift d;
            d.delta.resize(ctx.dim);
            for (std::uint32_t j = 0; j < ctx.dim; ++j) {
                d.delta[j] = rng.uniform_real();
            }
            parts.push_back(shift_continuous(lattice, d));
        }
    }
    result.points = multiset_union(parts);
    return result;
}

// CSV serialization: a two-line header (field names, then N, s and the
// representation), followed by one row per point. Grid sets emit integer
// numerators; real sets emit coordinates with 17 significant digits.
inline void write_csv(std::ostream& os, const PointSet& p) {
    os << "N,s,rep\n"
       << p.modulus << "," << p.dim << ","
       << (p.rep == Representation::Grid ? "grid" : "real") << "\n";
    char buf[32];
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::uint32_t j = 0; j < p.dim; ++j) {
            if (j) os << ",";
            if (p.rep == Representation::Grid) {
                os << p.grid_points[i][j];
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", p.real_points[i][j]);
                os << buf;
            }
        }
        os << "\n";
    }
}

inline PointSet read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "N,s,rep") {
        throw std::invalid_argument("read_csv: missing point-set header");
    }
    if (!std::getline(is, line)) throw std::invalid_argument("read_csv: truncated header");
    PointSet p;
    {
        std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("read_csv: malformed header row");
        }
        p.modulus = static_cast<std::uint32_t>(std::stoul(line.substr(0, c1)));
        p.dim = static_cast<std::uint32_t>(std::stoul(line.substr(c1 + 1, c2 - c1 - 1)));
        std::string rep = line.substr(c2 + 1);
        if (rep == "grid") p.rep = Representation::Grid;
        else if (rep == "real") p.rep = Representation::Real;
        else throw std::invalid_argument("read_csv: unknown representation '" + rep + "'");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(',', start);
            fields.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fields.size() != p.dim) throw std::invalid_argument("read_csv: wrong column count");
        if (p.rep == Representation::Grid) {
            GridPoint pt(p.dim);
            for (std::uint32_t j = 0; j < p.dim; ++j) {
                pt[j] = static_cast<std::uint32_t>(std::stoul(fields[j]));
            }
            p.grid_points.push_back(std::move(pt));
        } else {
            RealPoint pt(p.dim);
            for (std::uint32_t j = 0; j < p.dim; ++j) pt[j] = std::stod(fields[j]);
            p.real_points.push_back(std::move(pt));
        }
    }
    return p;
}

} // namespace korolat
