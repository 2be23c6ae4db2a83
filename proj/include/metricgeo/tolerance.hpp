#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metricgeo {

/// Shared comparison tolerances. rel_tol drives scalar comparisons,
/// eig_tol the eigenvalue-significance cutoff as a fraction of the
/// spectral radius.
struct ToleranceConfig {
    double rel_tol = 1e-9;
    double eig_tol = 1e-8;

    void check() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(eig_tol > 0.0 && eig_tol < 1.0))
            throw std::invalid_argument("tolerances must lie in (0, 1)");
    }

    // |a - b| against rel_tol scaled by the larger magnitude (never below 1).
    bool close(double a, double b) const {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= rel_tol * scale;
    }

    bool close(double a, double b, double scale) const {
        return std::fabs(a - b) <= rel_tol * std::max(1.0, scale);
    }

    bool is_zero(double a, double scale = 1.0) const { return close(a, 0.0, scale); }
};

} // namespace metricgeo
