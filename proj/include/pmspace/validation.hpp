#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "distance_matrix.hpp"
#include "errors.hpp"

namespace pmspace {

/// Absolute slack allowed when checking triangle inequalities. Symmetry,
/// diagonal and sign checks are always exact.
struct Tolerance {
    double eps_abs = 1e-12;
};

enum class ViolationKind { symmetry, diagonal, negativity, triangle, positivity };

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::symmetry: return "symmetry";
        case ViolationKind::diagonal: return "diagonal";
        case ViolationKind::negativity: return "negativity";
        case ViolationKind::triangle: return "triangle";
        case ViolationKind::positivity: return "positivity";
    }
    return "?";
}

/// One failed axiom constraint. Indices are 0-based:
///   diagonal   (i,i)    |d(i,i)|
///   symmetry   (i,j)    |d(i,j) - d(j,i)|
///   negativity (i,j)    -min(d(i,j), d(j,i))
///   triangle   (i,j,k)  d(i,k) - d(i,j) - d(j,k), beyond the slack
///   positivity (i,j)    -min(d(i,j), d(j,i)), entries that are not > 0
struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> indices;
    double magnitude;
};

struct ValidationReport {
    bool is_pseudometric = false;
    bool is_metric = false;
    std::vector<Violation> violations;
};

/// Checks the pseudometric and metric axioms, listing every failing
/// constraint (not just the first). Non-finite entries are a structural
/// error, distinct from a negative verdict.
inline ValidationReport validate(const DistanceMatrix& m, Tolerance tol = {}) {
    if (!(tol.eps_abs >= 0.0)) throw domain_error("validate: tolerance must be nonnegative");
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(m(i, j)))
                throw structural_error("validate: matrix has a non-finite entry");

    ValidationReport r;
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i) != 0.0)
            r.violations.push_back({ViolationKind::diagonal, {i, i}, std::abs(m(i, i))});

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m(i, j) != m(j, i))
                r.violations.push_back({ViolationKind::symmetry, {i, j}, std::abs(m(i, j) - m(j, i))});
            const double lo = m(i, j) < m(j, i) ? m(i, j) : m(j, i);
            if (lo < 0.0)
                r.violations.push_back({ViolationKind::negativity, {i, j}, -lo});
        }

    // One triangle constraint per unordered pair {i,k} and witness j.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double excess = m(i, k) - (m(i, j) + m(j, k));
                if (excess > tol.eps_abs)
                    r.violations.push_back({ViolationKind::triangle, {i, j, k}, excess});
            }

    r.is_pseudometric = r.violations.empty();

    bool positive = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double lo = m(i, j) < m(j, i) ? m(i, j) : m(j, i);
            if (!(lo > 0.0)) {
                r.violations.push_back({ViolationKind::positivity, {i, j}, -lo});
                positive = false;
            }
        }
    r.is_metric = r.is_pseudometric && positive;
    return r;
}

/// Largest absolute entrywise difference: the sup-metric (Chebyshev
/// distance) on same-size distance matrices.
inline double sup_distance(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.size() != b.size()) throw dimension_error("sup_distance: size mismatch");
    double sup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double d = std::abs(a(i, j) - b(i, j));
            if (d > sup) sup = d;
        }
    return sup;
}

}  // namespace pmspace
