#pragma once

#include <optional>
#include <vector>

#include "metricgeo/distance_matrix.hpp"

namespace metricgeo {

/// Distance-preserving map between index subsets of one space.
struct PartialMap {
    std::vector<int> domain;
    std::vector<int> image;
};

struct HomogeneityReport {
    bool verdict = true;
    std::optional<PartialMap> witness;  // non-extendable map when verdict is false
    int checked_k = 0;
    long long isometry_group_size = 0;
};

/// All distance-preserving permutations, lexicographically sorted.
std::vector<std::vector<int>> isometry_group(const DistanceMatrix& m,
                                             const ToleranceConfig& cfg = {});

/// Lexicographically least global permutation restricting to p, if any.
std::optional<std::vector<int>> extends_to_global(const DistanceMatrix& m, const PartialMap& p,
                                                  const ToleranceConfig& cfg = {});

/// Every partial isometry on at most k points extends globally?
HomogeneityReport is_k_homogeneous(const DistanceMatrix& m, int k, const ToleranceConfig& cfg = {});

/// Decided via the one-point extension property (back-and-forth).
HomogeneityReport is_all_set_homogeneous(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

/// Direct definition: enumerate every partial isometry and test global
/// extension. Cross-validation route for the one-point criterion.
HomogeneityReport is_all_set_homogeneous_direct(const DistanceMatrix& m,
                                                const ToleranceConfig& cfg = {});

} // namespace metricgeo
