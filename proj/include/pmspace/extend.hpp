#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "distance_matrix.hpp"
#include "errors.hpp"
#include "validation.hpp"

namespace pmspace {

// Bounded extension of a metric from a subset to the whole finite set.
//
// The single primitive is the one-point lift: given candidate distances g
// from a new point to an existing metric space (S, rho), produce admissible
// distances t, i.e. |t_a - t_b| <= rho(a,b) <= t_a + t_b for all a, b in S.
// The lift first raises g to meet the one-sided constraints, then takes the
// min-plus convolution with rho, which restores the Lipschitz side without
// breaking the other. It never raises values above a common bound C shared
// by rho and the raised profile, which is what keeps the extension capped.

/// Candidate distances from a new point to each point of an existing space.
struct Profile {
    std::vector<double> values;
};

/// Distances from a new point that are admissible against the ambient
/// metric rho: |t_a - t_b| <= rho(a,b) <= t_a + t_b for all a, b.
struct KatetovProfile {
    std::vector<double> values;
};

/// Brute-force check of the admissibility inequalities, with slack.
inline bool is_katetov(const std::vector<double>& t, const DistanceMatrix& rho, double slack = 0.0) {
    for (std::size_t a = 0; a < rho.size(); ++a)
        for (std::size_t b = 0; b < rho.size(); ++b) {
            if (std::abs(t[a] - t[b]) > rho(a, b) + slack) return false;
            if (rho(a, b) > t[a] + t[b] + slack) return false;
        }
    return true;
}

namespace detail {

inline std::vector<double> lift_core(const std::vector<double>& g, const DistanceMatrix& rho,
                                     double floor_value) {
    const std::size_t n = rho.size();
    std::vector<double> g0(n), ghat(n), t(n);
    for (std::size_t a = 0; a < n; ++a) g0[a] = std::max(g[a], floor_value);
    for (std::size_t a = 0; a < n; ++a) {
        double v = g0[a];
        for (std::size_t b = 0; b < n; ++b) v = std::max(v, rho(a, b) - g0[b]);
        ghat[a] = v;
    }
    for (std::size_t a = 0; a < n; ++a) {
        double v = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < n; ++b) v = std::min(v, ghat[b] + rho(a, b));
        t[a] = v;
    }
    return t;
}

// Rounding in the lift can only miss the admissibility inequalities by a few
// ulp of the working scale.
inline double lift_slack(double scale) {
    return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

}  // namespace detail

/// One-point lift: returns admissible distances t with t >= max(g, floor)
/// pulled down as little as possible. If every rho entry and every raised
/// profile value is at most C, then t <= C. Applying the lift to its own
/// output returns it unchanged.
inline KatetovProfile katetov_lift(const Profile& g, const DistanceMatrix& rho,
                                   double floor_value, Tolerance tol = {}) {
    if (g.values.size() != rho.size()) throw dimension_error("katetov_lift: profile size mismatch");
    if (!(floor_value >= 0.0) || !std::isfinite(floor_value))
        throw domain_error("katetov_lift: floor must be nonnegative and finite");
    for (double v : g.values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw domain_error("katetov_lift: profile values must be nonnegative and finite");
    if (rho.size() > 0 && !validate(rho, tol).is_metric)
        throw domain_error("katetov_lift: rho is not a metric");
    return {detail::lift_core(g.values, rho, floor_value)};
}

/// Extends the metric `e`, sitting on the points listed in indices_of_A, to
/// a metric on all of 0..full_n-1. The restriction to A is left untouched
/// (bit-for-bit equal to e) and no entry ever exceeds `cap`. Points outside
/// A are added one at a time in ascending index order; each gets the
/// corresponding column of `target` clamped to [floor, cap], lifted against
/// the space built so far, and capped.
inline DistanceMatrix extend_metric(const DistanceMatrix& e, std::size_t full_n,
                                    const std::vector<std::size_t>& indices_of_A,
                                    const DistanceMatrix& target, double cap, double floor_value,
                                    Tolerance tol = {}) {
    const std::size_t k = indices_of_A.size();
    if (e.size() != k) throw dimension_error("extend_metric: subset metric size must match index list");
    if (target.size() != full_n) throw dimension_error("extend_metric: target size must be full_n");
    if (k > full_n) throw dimension_error("extend_metric: subset larger than full set");
    if (!(cap > 0.0) || !std::isfinite(cap)) throw domain_error("extend_metric: cap must be positive");
    if (!(floor_value > 0.0) || !std::isfinite(floor_value))
        throw domain_error("extend_metric: floor must be positive");
    if (floor_value > cap) throw domain_error("extend_metric: floor exceeds cap");

    std::vector<bool> in_subset(full_n, false);
    for (std::size_t idx : indices_of_A) {
        if (idx >= full_n) throw domain_error("extend_metric: subset index out of range");
        if (in_subset[idx]) throw domain_error("extend_metric: duplicate subset index");
        in_subset[idx] = true;
    }

    if (k > 0 && !validate(e, tol).is_metric)
        throw domain_error("extend_metric: e is not a metric");
    if (e.max_entry() > cap) throw domain_error("extend_metric: e has an entry above cap");
    if (target.max_entry() > cap) throw domain_error("extend_metric: target has an entry above cap");
    if (k >= 2 && floor_value > e.min_off_diagonal())
        throw domain_error("extend_metric: floor exceeds the smallest positive entry of e");

    std::vector<std::size_t> order = indices_of_A;
    DistanceMatrix rho = e;
    const double slack = detail::lift_slack(cap);
    for (std::size_t idx = 0; idx < full_n; ++idx) {
        if (in_subset[idx]) continue;
        const std::size_t cur = order.size();
        std::vector<double> g(cur);
        for (std::size_t q = 0; q < cur; ++q)
            g[q] = std::clamp(target(idx, order[q]), floor_value, cap);

        std::vector<double> t = detail::lift_core(g, rho, floor_value);
        for (double& v : t) v = std::min(v, cap);
        // The cap clamp must leave the profile admissible while every
        // existing entry is at most cap.
        if (!is_katetov(t, rho, slack))
            throw internal_error("extend_metric: capped profile lost admissibility");

        DistanceMatrix next(cur + 1);
        for (std::size_t q1 = 0; q1 < cur; ++q1)
            for (std::size_t q2 = 0; q2 < cur; ++q2) next(q1, q2) = rho(q1, q2);
        for (std::size_t q = 0; q < cur; ++q) next.set(q, cur, t[q]);
        rho = std::move(next);
        order.push_back(idx);
    }

    DistanceMatrix out(full_n);
    for (std::size_t q1 = 0; q1 < full_n; ++q1)
        for (std::size_t q2 = q1 + 1; q2 < full_n; ++q2) out.set(order[q1], order[q2], rho(q1, q2));
    return out;
}

/// Adds to the pseudometric d a small metric that is exactly epsilon across
/// the designated pair: rho = d + e~, where e~ extends the two-point metric
/// e(x_i,x_j) = epsilon with every entry capped at epsilon. The result is a
/// metric with rho(i,j) >= epsilon and sup_distance(d, rho) <= epsilon, both
/// as computed in binary64: entries are nudged down by at most a couple of
/// ulp when the rounded sum would overshoot the sup budget.
inline DistanceMatrix perturb(const DistanceMatrix& d, std::size_t i, std::size_t j,
                              double epsilon, Tolerance tol = {}) {
    const std::size_t n = d.size();
    if (i == j) throw domain_error("perturb: the designated pair must be two distinct points");
    if (i >= n || j >= n) throw domain_error("perturb: index out of range");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw domain_error("perturb: epsilon must be a positive finite value");
    if (!validate(d, tol).is_pseudometric)
        throw domain_error("perturb: input is not a pseudometric");

    DistanceMatrix e(2);
    e.set(0, 1, epsilon);
    const DistanceMatrix bump =
        extend_metric(e, n, {i, j}, discrete_metric(n, epsilon), epsilon, epsilon * 1e-3, tol);

    DistanceMatrix rho(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            double v = d(a, b) + bump(a, b);
            for (int step = 0; step < 64 && v - d(a, b) > epsilon; ++step)
                v = std::nextafter(v, d(a, b));
            if ((a == i && b == j) || (a == j && b == i)) v = std::max(v, epsilon);
            rho.set(a, b, v);
        }
    return rho;
}

}  // namespace pmspace
