#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metricgeo/tree.hpp"

namespace metricgeo {

/// One extension step: either a sprout (new edge of length t at the gate's
/// image, direction = sprout index at that vertex) or a hull insertion
/// (t == 0, the point mapped onto an existing hull location).
struct TraceStep {
    TreeLocation point;  // source location added
    TreeLocation gate;   // gate c in the source
    double t = 0.0;      // |c - b|
    int direction = -1;  // sprout direction index at the gate image; -1 for hull insertions
    double offset = 0.0; // offset of the gate along its defining domain pair
};

struct ExtensionTrace {
    std::vector<TraceStep> steps;
};

/// Distance-preserving map from locations of a source tree into a lazily
/// grown target tree of the same valence budget. The target never carries
/// structure outside the path-closure of the image set; every image is
/// materialized as a target vertex.
class PartialIsometry {
public:
    /// Empty map into a fresh (empty) target.
    PartialIsometry(FiniteTree source, int valence, ToleranceConfig cfg = {});

    /// Self-map seed: images are locations of the source itself; the target
    /// is built as a fresh realization of the image set's metric.
    static PartialIsometry from_self_map(const FiniteTree& source,
                                         const std::vector<TreeLocation>& domain,
                                         const std::vector<TreeLocation>& images,
                                         int valence, ToleranceConfig cfg = {});

    const FiniteTree& source() const { return source_; }
    const FiniteTree& target() const { return target_; }
    const std::vector<TreeLocation>& domain() const { return domain_; }
    const std::vector<int>& image_vertices() const { return images_; }
    int valence() const { return valence_; }

    /// Extend the domain to the median closure of itself (hull branch
    /// points), mapping each added point along the corresponding target
    /// geodesic.
    void convex_closure();

    /// Add one point outside the hull: gate, sprout, map. Returns the step.
    TraceStep extend_point(const TreeLocation& b);

    /// Closure, then one-at-a-time extension over the given points.
    ExtensionTrace extend_all(const std::vector<TreeLocation>& points);

    struct VerifyResult {
        bool ok = true;
        double worst = 0.0;
        int worst_i = -1, worst_j = -1;
    };
    VerifyResult verify() const;

    /// Hull discipline: every target leaf is an image, degrees within budget.
    bool hull_discipline_ok() const;

    /// Distance matrix over the domain points, and over their images.
    DistanceMatrix domain_distances() const;
    DistanceMatrix image_distances() const;

private:
    FiniteTree source_;
    FiniteTree target_;
    std::vector<TreeLocation> domain_;
    std::vector<int> images_;  // target vertex ids, parallel to domain_
    int valence_;
    ToleranceConfig cfg_;

    int materialize_on_target(int i, int j, double offset);
    std::optional<int> find_domain_location(const TreeLocation& loc) const;
};

PartialIsometry::VerifyResult verify_isometry(const PartialIsometry& p);

/// Re-run the recorded steps on a fresh seed; throws if any step disagrees
/// with the recording.
PartialIsometry replay(PartialIsometry seed, const ExtensionTrace& trace);

} // namespace metricgeo
