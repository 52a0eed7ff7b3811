#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace pmspace {

/// Square array of distances between n ordered points, indexed 0..n-1.
///
/// The carrier stores arbitrary doubles so that broken inputs (asymmetric,
/// negative, nonzero diagonal) can be represented and then reported by
/// validate(). Whether the entries actually form a pseudometric or a metric
/// is always a verdict, never a construction-time guarantee.
///
/// Zero-size and one-point matrices are valid values.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    /// Builds from row-major rows; throws structural_error unless the rows
    /// form a square array.
    static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        DistanceMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw structural_error("distance matrix rows do not form a square array");
            for (std::size_t j = 0; j < rows.size(); ++j) m.data_[i * m.n_ + j] = rows[i][j];
        }
        return m;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    /// Sets d(i,j) and d(j,i) together.
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    double max_entry() const {
        double m = 0.0;
        for (double v : data_) m = v > m ? v : m;
        return m;
    }

    /// Smallest off-diagonal entry; +infinity when n < 2.
    double min_off_diagonal() const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && data_[i * n_ + j] < m) m = data_[i * n_ + j];
        return m;
    }

    bool operator==(const DistanceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// All off-diagonal distances equal to `scale`.
inline DistanceMatrix discrete_metric(std::size_t n, double scale = 1.0) {
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, scale);
    return m;
}

/// Entrywise maximum of two same-size matrices.
inline DistanceMatrix entrywise_max(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.size() != b.size()) throw dimension_error("entrywise_max: size mismatch");
    DistanceMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j) > b(i, j) ? a(i, j) : b(i, j);
    return out;
}

}  // namespace pmspace
