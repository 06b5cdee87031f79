#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "heatrk/common.hpp"

namespace heatrk {

// Planar domains the kernels live on.
//   square_d     : D  = {(x,y): |y| < x, |y| < 2-x}
//   square_q     : Q  = {(x,y): |y| < x, |y| < 1-x}
//   sector       : {z : |arg z| < pi/4}
//   half_plane   : {z : Re z > 0}
//   periodized_d : union of 2n + D over all integers n
//   periodized_q : union of  n + Q over all integers n
//   shifted_d    : -1 + D
enum class region_kind {
    square_d,
    square_q,
    sector,
    half_plane,
    periodized_d,
    periodized_q,
    shifted_d,
};

inline std::string to_string(region_kind k) {
    switch (k) {
        case region_kind::square_d: return "square-d";
        case region_kind::square_q: return "square-q";
        case region_kind::sector: return "sector";
        case region_kind::half_plane: return "half-plane";
        case region_kind::periodized_d: return "periodized-d";
        case region_kind::periodized_q: return "periodized-q";
        case region_kind::shifted_d: return "shifted-d";
    }
    return "unknown";
}

inline region_kind region_from_string(const std::string& s) {
    if (s == "square-d") return region_kind::square_d;
    if (s == "square-q") return region_kind::square_q;
    if (s == "sector") return region_kind::sector;
    if (s == "half-plane") return region_kind::half_plane;
    if (s == "periodized-d") return region_kind::periodized_d;
    if (s == "periodized-q") return region_kind::periodized_q;
    if (s == "shifted-d") return region_kind::shifted_d;
    throw domain_error("unknown region kind: " + s);
}

struct region {
    region_kind kind = region_kind::square_d;
    double margin = 0.0;  // interior shrink used by default membership tests
};

namespace detail {

// Shift z by the even integer that puts Re into [0,2); the representative of
// the periodized-d cosets.
inline cplx reduce_period_two(cplx z) {
    const double shift = 2.0 * std::floor(z.real() / 2.0);
    return {z.real() - shift, z.imag()};
}

// Same with unit shifts, Re into [0,1); representative of periodized-q.
inline cplx reduce_period_one(cplx z) {
    return {z.real() - std::floor(z.real()), z.imag()};
}

}  // namespace detail

// Open-set membership, shrunk inward by Euclidean distance `margin`.
// The squares and the sector are intersections of half-planes with unit
// normals along (1,±1)/sqrt(2), so shifting each linear inequality by
// margin*sqrt(2) realizes the Euclidean shrink exactly.
inline bool contains(region_kind kind, cplx p, double margin) {
    if (margin < 0.0) throw domain_error("contains: margin must be >= 0");
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return false;
    const double x = p.real();
    const double ay = std::abs(p.imag());
    const double off = margin * std::numbers::sqrt2;
    switch (kind) {
        case region_kind::square_d:
            return ay < x - off && ay < 2.0 - x - off;
        case region_kind::square_q:
            return ay < x - off && ay < 1.0 - x - off;
        case region_kind::sector:
            return ay < x - off;
        case region_kind::half_plane:
            return x > margin;
        case region_kind::periodized_d:
            return contains(region_kind::square_d, detail::reduce_period_two(p), margin);
        case region_kind::periodized_q:
            return contains(region_kind::square_q, detail::reduce_period_one(p), margin);
        case region_kind::shifted_d:
            return contains(region_kind::square_d, p + 1.0, margin);
    }
    return false;
}

inline bool contains(const region& r, cplx p) { return contains(r.kind, p, r.margin); }
inline bool contains(const region& r, cplx p, double margin) { return contains(r.kind, p, margin); }

namespace detail {

struct box {
    double x_lo, x_hi, y_lo, y_hi;
};

// Sampling boxes. Bounded kinds use their exact hull; the unbounded kinds
// (sector, half-plane) and the periodized unions sample a fixed
// representative window, which is all any kernel evaluation ever sees.
inline box sampling_box(region_kind kind) {
    switch (kind) {
        case region_kind::square_d: return {0.0, 2.0, -1.0, 1.0};
        case region_kind::square_q: return {0.0, 1.0, -0.5, 0.5};
        case region_kind::sector: return {0.0, 2.0, -2.0, 2.0};
        case region_kind::half_plane: return {0.0, 2.0, -2.0, 2.0};
        case region_kind::periodized_d: return {0.0, 2.0, -1.0, 1.0};
        case region_kind::periodized_q: return {0.0, 1.0, -0.5, 0.5};
        case region_kind::shifted_d: return {-1.0, 1.0, -1.0, 1.0};
    }
    return {0.0, 1.0, -1.0, 1.0};
}

// Uniform double in [0,1) with a platform-independent bit pattern; the
// mt19937_64 stream itself is fully specified by the standard, so seeded
// sampling is reproducible everywhere.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Seeded rejection sampling over the region's bounding box. Deterministic:
// the same (region, count, margin, seed) always yields the same list.
inline std::vector<cplx> sample_points(region_kind kind, std::size_t count, double margin,
                                       std::uint64_t seed) {
    if (count < 1) throw domain_error("sample_points: count must be >= 1");
    if (margin <= 0.0) throw domain_error("sample_points: margin must be > 0");
    const detail::box b = detail::sampling_box(kind);
    std::mt19937_64 rng(seed);
    std::vector<cplx> out;
    out.reserve(count);
    const std::size_t cap = 100000 * count;
    for (std::size_t it = 0; out.size() < count; ++it) {
        if (it >= cap) {
            throw domain_error("sample_points: rejection cap reached for region " +
                               to_string(kind) + " at margin " + std::to_string(margin) +
                               " (shrunk region empty or nearly so)");
        }
        const double x = b.x_lo + (b.x_hi - b.x_lo) * detail::uniform01(rng);
        const double y = b.y_lo + (b.y_hi - b.y_lo) * detail::uniform01(rng);
        const cplx p{x, y};
        if (!contains(kind, p, margin)) continue;
        bool dup = false;
        for (const cplx& q : out) dup = dup || (q == p);
        if (!dup) out.push_back(p);
    }
    return out;
}

inline std::vector<cplx> sample_points(const region& r, std::size_t count, std::uint64_t seed) {
    return sample_points(r.kind, count, r.margin, seed);
}

}  // namespace heatrk
