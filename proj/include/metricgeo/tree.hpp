#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/tolerance.hpp"

namespace metricgeo {

/// A point of a finite tree: either a vertex or a strictly interior
/// position on an edge, measured from the edge's u endpoint.
struct TreeLocation {
    int vertex = -1;
    int edge = -1;
    double offset = 0.0;

    static TreeLocation at_vertex(int id) { return {id, -1, 0.0}; }
    static TreeLocation on_edge(int edge_id, double off) { return {-1, edge_id, off}; }
    bool is_vertex() const { return vertex >= 0; }
};

struct TreeVertex {
    std::optional<std::string> label;  // absent for Steiner vertices
};

struct TreeEdge {
    int u = -1;
    int v = -1;
    double len = 0.0;
};

/// Finite edge-weighted tree with labeled sample vertices and Steiner
/// vertices. Mutation is confined to the add/split operations used by the
/// realization and extension builders.
class FiniteTree {
public:
    FiniteTree() = default;

    int add_vertex(std::optional<std::string> label = std::nullopt);
    void add_edge(int u, int v, double len);
    /// Split edge e at the given interior offset; the prefix keeps id e,
    /// the suffix gets a fresh id. Returns the new vertex.
    int split_edge(int e, double offset, std::optional<std::string> label = std::nullopt);
    void set_label(int vertex, std::string label);
    void set_valence_budget(std::optional<int> m) { valence_budget_ = m; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const TreeVertex& vertex(int id) const { return vertices_.at(id); }
    const TreeEdge& edge(int id) const { return edges_.at(id); }
    const std::vector<TreeVertex>& vertices() const { return vertices_; }
    const std::vector<TreeEdge>& edges() const { return edges_; }
    std::optional<int> valence_budget() const { return valence_budget_; }

    int degree(int vertex) const;
    std::optional<int> find_label(const std::string& label) const;

    /// Path length between two vertices.
    double vertex_distance(int u, int v) const;
    /// Sum of edge lengths; comparison scale.
    double scale() const;

    /// Connected, acyclic, positive lengths, ids in range.
    bool structurally_valid() const;

    /// Normalize a location: snap offsets within rel_tol of an endpoint to
    /// the endpoint vertex; validate ids and ranges.
    TreeLocation normalize(const TreeLocation& loc, const ToleranceConfig& cfg = {}) const;

    /// Merge away unlabeled degree-2 vertices (canonical form).
    void suppress_degree_two_steiner();

private:
    std::vector<TreeVertex> vertices_;
    std::vector<TreeEdge> edges_;
    std::optional<int> valence_budget_;
    mutable std::vector<double> dist_cache_;  // n*n, empty when stale
    void invalidate_cache() { dist_cache_.clear(); }
    void fill_cache() const;
    friend class TreePath;
};

int max_degree(const FiniteTree& t);

double gromov_product(const DistanceMatrix& m, int x, int y, int z);

struct FourPointReport {
    bool ok = true;
    std::array<int, 4> witness{-1, -1, -1, -1};  // first failing quadruple
};
FourPointReport four_point_check(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

/// Canonical minimal tree realization of a tree metric (four-point must
/// hold; kind must be metric). Sample point i becomes the vertex labeled
/// std::to_string(i).
FiniteTree build_realization(const DistanceMatrix& m, const ToleranceConfig& cfg = {});

/// Distance matrix between the sample vertices labeled "0".."n-1".
DistanceMatrix realization_distances(const FiniteTree& t, int n);

/// Distance matrix over all labeled vertices, in the given label order.
DistanceMatrix labeled_distances(const FiniteTree& t, const std::vector<std::string>& labels);

double tree_distance(const FiniteTree& t, const TreeLocation& a, const TreeLocation& b,
                     const ToleranceConfig& cfg = {});

/// Point s on the geodesic [y z] with tree_distance(y, s) = t0.
TreeLocation geodesic_point(const FiniteTree& t, const TreeLocation& y, const TreeLocation& z,
                            double t0, const ToleranceConfig& cfg = {});

/// Distance from x to the point at offset t0 on [y z], from the four values
/// alone (valid in any tree containing the triple).
double dist_to_geodesic_point(double d_xy, double d_xz, double d_yz, double t0,
                              const ToleranceConfig& cfg = {});

/// Gate of b into the convex hull of the given subtree generators. The
/// generator set must contain the median of every triple of its members
/// (path-closed in the finite sense).
TreeLocation project(const FiniteTree& t, const std::vector<TreeLocation>& subtree,
                     const TreeLocation& b, const ToleranceConfig& cfg = {});

/// Same gate computation without the path-closure precondition check; for
/// callers whose generator set is closed by construction.
TreeLocation project_unchecked(const FiniteTree& t, const std::vector<TreeLocation>& subtree,
                               const TreeLocation& b, const ToleranceConfig& cfg = {});

/// Median (Steiner point) of three locations.
TreeLocation tree_median(const FiniteTree& t, const TreeLocation& x, const TreeLocation& y,
                         const TreeLocation& z, const ToleranceConfig& cfg = {});

bool same_location(const FiniteTree& t, const TreeLocation& a, const TreeLocation& b,
                   const ToleranceConfig& cfg = {});

} // namespace metricgeo
