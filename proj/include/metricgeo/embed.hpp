#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/tree.hpp"

namespace metricgeo {

struct Euclidean { int dim = 1; };
struct Sphere { int dim = 1; double radius = 1.0; };
struct Hyperbolic { int dim = 1; double scale = 1.0; };
struct Circle { double length = 1.0; };
struct TreeValence { int valence = 2; };

using ModelSpace = std::variant<Euclidean, Sphere, Hyperbolic, Circle, TreeValence>;

std::string space_name(const ModelSpace& s);

struct EmbedResult {
    bool embeddable = false;
    bool marginal = false;  // decision rested on eigenvalues inside the tolerance band
    std::optional<std::vector<std::vector<double>>> coordinates;  // model-specific witness
    std::optional<FiniteTree> tree_witness;
    std::optional<std::string> certificate;  // violated criterion when not embeddable
};

/// Basepoint-Gram PSD + rank test.
EmbedResult embed_euclidean(const DistanceMatrix& m, int dim, const ToleranceConfig& cfg = {});

/// cos-Gram PSD + rank <= dim+1; distances capped at pi*radius.
EmbedResult embed_sphere(const DistanceMatrix& m, int dim, double radius,
                         const ToleranceConfig& cfg = {});

/// cosh-Gram Minkowski signature test (one positive, <= dim negative).
EmbedResult embed_hyperbolic(const DistanceMatrix& m, int dim, double scale,
                             const ToleranceConfig& cfg = {});

/// Exact sign enumeration of arc positions, capped at n <= 24.
EmbedResult embed_circle(const DistanceMatrix& m, double length, const ToleranceConfig& cfg = {});

/// Four-point condition + realization max degree <= valence.
EmbedResult embed_tree(const DistanceMatrix& m, int valence, const ToleranceConfig& cfg = {});

EmbedResult embed(const DistanceMatrix& m, const ModelSpace& space, const ToleranceConfig& cfg = {});

/// Model-space distance between two witness coordinate rows.
double model_distance(const ModelSpace& space, const std::vector<double>& a,
                      const std::vector<double>& b);

} // namespace metricgeo
