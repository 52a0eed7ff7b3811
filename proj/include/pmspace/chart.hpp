#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "distance_matrix.hpp"
#include "errors.hpp"
#include "validation.hpp"

namespace pmspace {

// Cube chart for the space of pseudometrics on n ordered points.
//
// A pseudometric is built one point at a time. Placing point p against the
// points 0..p-1 already placed takes p numbers: the free distance d(x_0,x_p),
// rescaled from [0,inf) to [0,1) by t -> t/(1+t), and for each further point
// x_i a position inside the interval of values the triangle inequalities
// leave open for d(x_i,x_p). That interval is
//
//   [ max_{j<i} |d(x_j,x_i) - t_j| ,  min_{j<i} (d(x_j,x_i) + t_j) ]
//
// with t_j = d(x_j,x_p) the distances fixed earlier in the same level. The
// interval is never empty for in-domain coordinates; the decoder enforces
// this with a hard internal assertion.
//
// The resulting chart has n(n-1)/2 coordinates, of which n-1 (the s values)
// live in [0,1) and the rest (the u values) in [0,1]. square_pack folds the
// half-open coordinates pairwise until a single half-open factor remains,
// giving the canonical form [0,1]^{n(n-1)/2 - 1} x [0,1).

/// Coordinates that place point p: `s` in [0,1) for the free distance,
/// then p-1 interval positions, each in [0,1].
struct ChartLevel {
    double s = 0.0;
    std::vector<double> u;
};

/// Per-level chart data for n ordered points; levels[p-1] places point p.
struct NaturalCoords {
    std::size_t n = 1;
    std::vector<ChartLevel> levels;
};

/// Normal form: a point of [0,1]^{n(n-1)/2 - 1} x [0,1), n >= 2.
struct CanonicalCoords {
    std::size_t n = 2;
    std::vector<double> closed;
    double half_open = 0.0;
};

inline std::size_t coordinate_count(std::size_t n) { return n * (n - 1) / 2; }

namespace detail {

// Largest double below 1; clamp target for half-open outputs.
inline constexpr double below_one = 0x1.fffffffffffffp-1;
// The sampler keeps s <= 1 - half_open_gap.
inline constexpr double half_open_gap = 0x1.0p-32;
// Feasible intervals can only fail by rounding; anything worse is a bug.
inline constexpr double interval_collapse_slack = 1e-12;

// Interval [lo, hi] for d(x_i, x_p) given the distances t[j] = d(x_j, x_p),
// j < i, fixed earlier in the level. `m` holds the distances among the
// points already placed.
inline std::pair<double, double> level_interval(const DistanceMatrix& m,
                                                const std::vector<double>& t, std::size_t i) {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < i; ++j) {
        const double a = std::abs(m(j, i) - t[j]);
        const double b = m(j, i) + t[j];
        if (a > lo) lo = a;
        if (b < hi) hi = b;
    }
    return {lo, hi};
}

inline void check_unit_half_open(double v, const char* what) {
    if (!(v >= 0.0 && v < 1.0)) throw domain_error(std::string(what) + " must lie in [0,1)");
}

inline void check_unit_closed(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw domain_error(std::string(what) + " must lie in [0,1]");
}

}  // namespace detail

inline void check_coords(const NaturalCoords& c) {
    if (c.n < 1) throw domain_error("natural coords: n must be at least 1");
    if (c.levels.size() != c.n - 1)
        throw domain_error("natural coords: expected n-1 levels");
    for (std::size_t l = 0; l < c.levels.size(); ++l) {
        detail::check_unit_half_open(c.levels[l].s, "coordinate s");
        if (c.levels[l].u.size() != l)
            throw domain_error("natural coords: level has wrong interval-coordinate count");
        for (double u : c.levels[l].u) detail::check_unit_closed(u, "coordinate u");
    }
}

inline void check_coords(const CanonicalCoords& q) {
    if (q.n < 2) throw domain_error("canonical coords: n must be at least 2");
    if (q.closed.size() != coordinate_count(q.n) - 1)
        throw domain_error("canonical coords: closed length must be n(n-1)/2 - 1");
    for (double v : q.closed) detail::check_unit_closed(v, "closed coordinate");
    detail::check_unit_half_open(q.half_open, "half-open coordinate");
}

/// Reconstructs the pseudometric from per-level chart coordinates.
/// The output always passes validate() as a pseudometric.
inline DistanceMatrix decode_natural(const NaturalCoords& c) {
    check_coords(c);
    DistanceMatrix m(c.n);
    std::vector<double> t;
    for (std::size_t p = 1; p < c.n; ++p) {
        const ChartLevel& level = c.levels[p - 1];
        t.assign(p, 0.0);
        t[0] = level.s / (1.0 - level.s);
        for (std::size_t i = 1; i < p; ++i) {
            const auto [lo, hi] = detail::level_interval(m, t, i);
            if (hi - lo < -detail::interval_collapse_slack)
                throw internal_error("decode_natural: feasible interval collapsed");
            const double width = std::max(0.0, hi - lo);
            t[i] = std::clamp(lo + level.u[i - 1] * width, lo, std::max(lo, hi));
        }
        for (std::size_t i = 0; i < p; ++i) m.set(i, p, t[i]);
    }
    return m;
}

/// Inverse of decode_natural. Interval positions attached to degenerate
/// (zero-width) intervals are normalized to 0. The input must pass
/// validate() as a pseudometric at the given tolerance.
inline NaturalCoords encode_natural(const DistanceMatrix& d, Tolerance tol = Tolerance{1e-9}) {
    if (d.size() < 1) throw domain_error("encode_natural: matrix must have at least one point");
    if (!validate(d, tol).is_pseudometric)
        throw domain_error("encode_natural: input is not a pseudometric");

    NaturalCoords c{d.size(), {}};
    c.levels.resize(d.size() - 1);
    std::vector<double> t;
    for (std::size_t p = 1; p < d.size(); ++p) {
        ChartLevel& level = c.levels[p - 1];
        t.assign(p, 0.0);
        for (std::size_t i = 0; i < p; ++i) t[i] = d(i, p);
        level.s = t[0] / (1.0 + t[0]);
        level.u.assign(p - 1, 0.0);
        for (std::size_t i = 1; i < p; ++i) {
            const auto [lo, hi] = detail::level_interval(d, t, i);
            const double width = hi - lo;
            if (width > 0.0) level.u[i - 1] = std::clamp((t[i] - lo) / width, 0.0, 1.0);
        }
    }
    return c;
}

namespace detail {

inline constexpr double rad_to_deg = 180.0 / std::numbers::pi;
inline constexpr double deg_to_rad = std::numbers::pi / 180.0;

// Point of the max-norm circle of radius r about (0.5, 0.5) at angle `deg`.
inline std::pair<double, double> gauge_point(double r, double deg) {
    const double rad = deg * deg_to_rad;
    const double cx = std::cos(rad);
    const double sy = std::sin(rad);
    const double m = std::max(std::abs(cx), std::abs(sy));
    return {0.5 + 0.5 * r * cx / m, 0.5 + 0.5 * r * sy / m};
}

}  // namespace detail

/// Packs a point of [0,1)^2 into [0,1] x [0,1), bijectively and
/// bicontinuously. The square is read in the disk model: max-norm gauge
/// radius about the center, and a piecewise-linear circle map in angle with
/// knots at -45 and 135 degrees (135 fixed, -45 sent to 45). The boundary
/// arc missing from the source maps exactly onto the arc missing from the
/// target.
inline std::pair<double, double> square_pack(double a, double b) {
    if (!(a >= 0.0 && a < 1.0) || !(b >= 0.0 && b < 1.0))
        throw domain_error("square_pack: input must lie in [0,1)^2");
    const double x = a - 0.5;
    const double y = b - 0.5;
    const double r = 2.0 * std::max(std::abs(x), std::abs(y));
    if (r == 0.0) return {0.5, 0.5};
    double deg = std::atan2(y, x) * detail::rad_to_deg;
    if (deg < -45.0) deg += 360.0;  // now in [-45, 315)
    const double mapped = deg <= 135.0 ? 45.0 + 0.5 * (deg + 45.0)
                                       : 135.0 + 1.5 * (deg - 135.0);  // in [45, 405)
    const auto [cx, hy] = detail::gauge_point(r, mapped);
    return {std::clamp(cx, 0.0, 1.0), std::clamp(hy, 0.0, detail::below_one)};
}

/// Exact inverse of square_pack.
inline std::pair<double, double> square_unpack(double c, double h) {
    if (!(c >= 0.0 && c <= 1.0) || !(h >= 0.0 && h < 1.0))
        throw domain_error("square_unpack: input must lie in [0,1] x [0,1)");
    const double x = c - 0.5;
    const double y = h - 0.5;
    const double r = 2.0 * std::max(std::abs(x), std::abs(y));
    if (r == 0.0) return {0.5, 0.5};
    double deg = std::atan2(y, x) * detail::rad_to_deg;
    if (deg < 45.0) deg += 360.0;  // now in [45, 405)
    const double mapped = deg <= 135.0 ? 2.0 * (deg - 45.0) - 45.0
                                       : 135.0 + (deg - 135.0) / 1.5;
    const auto [ax, by] = detail::gauge_point(r, mapped);
    return {std::clamp(ax, 0.0, detail::below_one), std::clamp(by, 0.0, detail::below_one)};
}

/// Folds the n-1 half-open coordinates (the s values, in level order) with
/// square_pack, leftmost pair first, until one half-open coordinate remains.
/// Closed output layout: the fold outputs in order, then every u value in
/// level order.
inline CanonicalCoords to_canonical(const NaturalCoords& c) {
    check_coords(c);
    if (c.n < 2)
        throw domain_error("to_canonical: the chart for a single point has no coordinates");
    CanonicalCoords q;
    q.n = c.n;
    q.closed.reserve(coordinate_count(c.n) - 1);
    double carry = c.levels[0].s;
    for (std::size_t l = 1; l < c.levels.size(); ++l) {
        const auto [closed, next] = square_pack(carry, c.levels[l].s);
        q.closed.push_back(closed);
        carry = next;
    }
    for (const ChartLevel& level : c.levels)
        for (double u : level.u) q.closed.push_back(u);
    q.half_open = carry;
    return q;
}

/// Inverse of to_canonical.
inline NaturalCoords from_canonical(const CanonicalCoords& q) {
    check_coords(q);
    NaturalCoords c{q.n, {}};
    c.levels.resize(q.n - 1);

    const std::size_t packs = q.n - 2;
    std::vector<double> s(q.n - 1, 0.0);
    double carry = q.half_open;
    for (std::size_t l = packs; l >= 1; --l) {
        const auto [prev, sl] = square_unpack(q.closed[l - 1], carry);
        s[l] = sl;
        carry = prev;
    }
    s[0] = carry;

    std::size_t pos = packs;
    for (std::size_t l = 0; l < c.levels.size(); ++l) {
        c.levels[l].s = s[l];
        c.levels[l].u.assign(q.closed.begin() + pos, q.closed.begin() + pos + l);
        pos += l;
    }
    return c;
}

/// Draws every chart coordinate uniformly (s in [0, 1 - 2^-32]) and decodes.
/// With metric_only, redraws until the result is a metric; deterministic for
/// a fixed seed. Throws sampling_error if 10^4 draws all get rejected.
inline DistanceMatrix sample_pseudometric(std::size_t n, std::uint64_t seed,
                                          bool metric_only = false) {
    if (n < 1) throw domain_error("sample_pseudometric: n must be at least 1");
    std::mt19937_64 gen(seed);
    const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    constexpr int max_attempts = 10000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        NaturalCoords c{n, {}};
        c.levels.resize(n - 1);
        for (std::size_t l = 0; l < c.levels.size(); ++l) {
            c.levels[l].s = unit() * (1.0 - detail::half_open_gap);
            c.levels[l].u.resize(l);
            for (double& u : c.levels[l].u) u = unit();
        }
        DistanceMatrix m = decode_natural(c);
        if (!metric_only || validate(m).is_metric) return m;
    }
    throw sampling_error("sample_pseudometric: rejection sampling stalled");
}

}  // namespace pmspace
