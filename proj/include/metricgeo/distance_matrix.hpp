#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "metricgeo/tolerance.hpp"

namespace metricgeo {

enum class MetricKind { Metric, Pseudometric };

/// Finite (pseudo)metric space as a symmetric nonnegative matrix.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(Eigen::MatrixXd d, MetricKind kind = MetricKind::Metric);

    /// Build from the fixed pair order (0,1),(0,2),...,(0,n-1),(1,2),...
    static DistanceMatrix from_pairs(int n, const std::vector<double>& entries,
                                     MetricKind kind = MetricKind::Metric);

    int size() const { return static_cast<int>(d_.rows()); }
    double operator()(int i, int j) const { return d_(i, j); }
    const Eigen::MatrixXd& matrix() const { return d_; }
    MetricKind kind() const { return kind_; }

    /// Largest entry; comparison scale for the whole space.
    double scale() const;

    /// Entries in fixed pair order.
    std::vector<double> pair_entries() const;

    bool operator==(const DistanceMatrix& o) const {
        return kind_ == o.kind_ && d_.rows() == o.d_.rows() && d_ == o.d_;
    }

private:
    Eigen::MatrixXd d_;
    MetricKind kind_ = MetricKind::Metric;
};

struct ValidationReport {
    bool ok = true;
    std::string axiom;             // violated axiom name when !ok
    std::array<int, 3> witness{};  // indices involved (unused slots -1)
};

ValidationReport validate_metric(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

/// d -> d^theta, 0 < theta <= 1.
DistanceMatrix snowflake(const DistanceMatrix& m, double theta);

/// k^h points; distance = level_dists[l] at the first differing base-k digit.
DistanceMatrix make_ultrametric(int branching, int depth, const std::vector<double>& level_dists);

/// Induced submatrix on the given (distinct, in-range) indices.
DistanceMatrix restrict(const DistanceMatrix& m, const std::vector<int>& subset);

/// Lexicographically least distance-preserving bijection a -> b, if any.
std::optional<std::vector<int>> is_isometric(const DistanceMatrix& a, const DistanceMatrix& b,
                                             const ToleranceConfig& cfg = {});

/// Metric quotient of a pseudometric: collapse zero-distance classes.
/// class_of[i] gives the quotient index of original point i.
struct MetricQuotient {
    DistanceMatrix metric;
    std::vector<int> class_of;
};
MetricQuotient metric_quotient(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

/// Snap all pairwise distances to equivalence-class ids (clustered within
/// rel_tol * scale). class id 0 is reserved for distance zero; classes are
/// ordered by increasing representative distance.
Eigen::MatrixXi distance_classes(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

} // namespace metricgeo
