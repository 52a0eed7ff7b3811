#pragma once

#include <cmath>
#include <optional>

#include "distance_matrix.hpp"
#include "errors.hpp"
#include "validation.hpp"

namespace pmspace {

/// Inputs for densify(): a pseudometric to repair, the allowed sup-distance
/// budget, and optionally the metric to max against (all entries <= epsilon).
struct DensifyRequest {
    DistanceMatrix d;
    double epsilon = 0.0;
    std::optional<DistanceMatrix> base;
};

/// Turns a pseudometric into a metric at sup-distance at most epsilon by
/// taking the entrywise maximum with a small metric. The default base is the
/// discrete metric scaled by epsilon. The result rho satisfies, exactly:
/// rho >= d entrywise, rho = d wherever d >= epsilon, and
/// sup_distance(d, rho) <= epsilon.
inline DistanceMatrix densify(const DistanceMatrix& d, double epsilon,
                              const std::optional<DistanceMatrix>& base = std::nullopt,
                              Tolerance tol = {}) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw domain_error("densify: epsilon must be a positive finite value");
    if (!validate(d, tol).is_pseudometric)
        throw domain_error("densify: input is not a pseudometric");

    DistanceMatrix b = base ? *base : discrete_metric(d.size(), epsilon);
    if (b.size() != d.size()) throw dimension_error("densify: base size mismatch");
    if (base) {
        if (!validate(b, tol).is_metric) throw domain_error("densify: base is not a metric");
        if (b.max_entry() > epsilon)
            throw domain_error("densify: base has an entry above epsilon");
    }
    return entrywise_max(d, b);
}

inline DistanceMatrix densify(const DensifyRequest& req, Tolerance tol = {}) {
    return densify(req.d, req.epsilon, req.base, tol);
}

}  // namespace pmspace
