#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "distance_matrix.hpp"
#include "errors.hpp"
#include "validation.hpp"

namespace pmspace {

/// A bit sequence a_1..a_k selecting one member of the binary pseudometric
/// family on the points x_0, x_1..x_k.
struct FamilySelector {
    std::vector<int> bits;
};

/// The pseudometric with d(x_0, x_g) = a_g and d(x_g, x_l) = |a_g - a_l|.
/// Distinct selectors give members at sup-distance exactly 1.
inline DistanceMatrix family_member(const FamilySelector& a) {
    for (int bit : a.bits)
        if (bit != 0 && bit != 1) throw domain_error("family_member: bits must be 0 or 1");
    const std::size_t k = a.bits.size();
    DistanceMatrix m(k + 1);
    for (std::size_t g = 1; g <= k; ++g) m.set(0, g, static_cast<double>(a.bits[g - 1]));
    for (std::size_t g = 1; g <= k; ++g)
        for (std::size_t l = g + 1; l <= k; ++l)
            m.set(g, l, static_cast<double>(std::abs(a.bits[g - 1] - a.bits[l - 1])));
    return m;
}

/// Smallest pairwise sup-distance among the members selected by the list.
/// A single-element list returns +infinity.
inline double family_separation(const std::vector<FamilySelector>& selectors) {
    if (selectors.empty()) throw domain_error("family_separation: selector list is empty");
    for (const FamilySelector& s : selectors)
        if (s.bits.size() != selectors.front().bits.size())
            throw domain_error("family_separation: selectors have mixed lengths");
    if (selectors.size() == 1) return std::numeric_limits<double>::infinity();

    std::vector<DistanceMatrix> members;
    members.reserve(selectors.size());
    for (const FamilySelector& s : selectors) members.push_back(family_member(s));

    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            sep = std::min(sep, sup_distance(members[i], members[j]));
    return sep;
}

}  // namespace pmspace
