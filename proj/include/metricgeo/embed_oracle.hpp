#pragma once

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/tolerance.hpp"

namespace metricgeo {

/// Brute-force / numerical embedding decisions, independent of the
/// spectral criteria in embed.cpp. The residual is the worst absolute
/// distance error achieved by the best fit found.
struct OracleResult {
    bool embeddable = false;
    double residual = 0.0;
};

OracleResult oracle_euclidean(const DistanceMatrix& m, int dim, const ToleranceConfig& cfg = {});
OracleResult oracle_sphere(const DistanceMatrix& m, int dim, double radius,
                           const ToleranceConfig& cfg = {});
/// Hyperboloid fitting: Minkowski coordinates with the time component
/// renormalized onto the upper sheet at every evaluation.
OracleResult oracle_hyperbolic(const DistanceMatrix& m, int dim, double scale,
                               const ToleranceConfig& cfg = {});
OracleResult oracle_circle(const DistanceMatrix& m, double length, const ToleranceConfig& cfg = {});
/// Neighbor-joining reconstruction; embeddable iff the joined tree
/// reproduces the metric and its contracted degrees stay within valence.
OracleResult oracle_tree(const DistanceMatrix& m, int valence, const ToleranceConfig& cfg = {});

} // namespace metricgeo
