#pragma once

#include <optional>
#include <vector>

#include "metricgeo/distance_matrix.hpp"

namespace metricgeo {

/// Pair coloring of a point set by distance bins.
struct EdgeColoring {
    int n = 0;
    std::vector<std::vector<int>> color;  // lower triangle: color[i][j] for j < i
    struct Bin {
        double lo = 0.0;
        double hi = 0.0;
    };
    std::vector<Bin> bins;  // one interval per color id

    int at(int i, int j) const {
        if (i == j) return -1;
        return i > j ? color[i][j] : color[j][i];
    }
};

/// Color pairs by floor(d / delta); half-open bins [c*delta, (c+1)*delta),
/// distances nudged up by rel_tol before flooring.
EdgeColoring bin_distances(const DistanceMatrix& m, double delta, const ToleranceConfig& cfg = {});

struct CliqueResult {
    int color = -1;
    std::vector<int> subset;
};

/// Maximum monochromatic clique (or the first color admitting size_target).
/// Deterministic: lowest color first, then the lexicographically least
/// subset. Absent when size_target is unachievable.
std::optional<CliqueResult> monochromatic_clique(const EdgeColoring& c,
                                                 std::optional<int> size_target = std::nullopt);

/// Maximum subset with all pairwise distances in [r - tol, r + tol].
std::vector<int> equilateral_subset(const DistanceMatrix& m, double r, double tol,
                                    const ToleranceConfig& cfg = {});

/// Greedily grow a pairwise-r seed to an inclusion-maximal set.
std::vector<int> maximal_equilateral_extend(const DistanceMatrix& m, double r,
                                            const std::vector<int>& seed, double tol,
                                            const ToleranceConfig& cfg = {});

} // namespace metricgeo
