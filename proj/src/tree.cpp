#include "metricgeo/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace metricgeo {

int FiniteTree::add_vertex(std::optional<std::string> label) {
    invalidate_cache();
    vertices_.push_back(TreeVertex{std::move(label)});
    return static_cast<int>(vertices_.size()) - 1;
}

void FiniteTree::add_edge(int u, int v, double len) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count() || u == v)
        throw std::invalid_argument("bad edge endpoints");
    if (!(len > 0.0)) throw std::invalid_argument("edge length must be positive");
    invalidate_cache();
    edges_.push_back(TreeEdge{u, v, len});
}

int FiniteTree::split_edge(int e, double offset, std::optional<std::string> label) {
    if (e < 0 || e >= edge_count()) throw std::invalid_argument("bad edge id");
    TreeEdge& ed = edges_[e];
    if (!(offset > 0.0 && offset < ed.len))
        throw std::invalid_argument("split offset must be strictly interior");
    invalidate_cache();
    const int w = add_vertex(std::move(label));
    const int old_v = ed.v;
    const double tail = ed.len - offset;
    edges_[e].v = w;
    edges_[e].len = offset;
    edges_.push_back(TreeEdge{w, old_v, tail});
    return w;
}

void FiniteTree::set_label(int vertex, std::string label) {
    vertices_.at(vertex).label = std::move(label);
}

int FiniteTree::degree(int vertex) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.u == vertex || e.v == vertex) ++d;
    return d;
}

std::optional<int> FiniteTree::find_label(const std::string& label) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[i].label && *vertices_[i].label == label) return i;
    return std::nullopt;
}

void FiniteTree::fill_cache() const {
    const int n = vertex_count();
    dist_cache_.assign(static_cast<std::size_t>(n) * n, -1.0);
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : edges_) {
        adj[e.u].push_back({e.v, e.len});
        adj[e.v].push_back({e.u, e.len});
    }
    for (int s = 0; s < n; ++s) {
        auto* row = &dist_cache_[static_cast<std::size_t>(s) * n];
        row[s] = 0.0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (auto [v, len] : adj[u])
                if (row[v] < 0.0) {
                    row[v] = row[u] + len;
                    q.push_back(v);
                }
        }
    }
}

double FiniteTree::vertex_distance(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw std::invalid_argument("vertex id out of range");
    if (dist_cache_.empty()) fill_cache();
    double d = dist_cache_[static_cast<std::size_t>(u) * vertex_count() + v];
    if (d < 0.0) throw std::invalid_argument("tree is not connected");
    return d;
}

double FiniteTree::scale() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.len;
    return std::max(1.0, s);
}

bool FiniteTree::structurally_valid() const {
    const int n = vertex_count();
    if (n == 0) return true;
    if (edge_count() != n - 1) return false;
    for (const auto& e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) return false;
        if (!(e.len > 0.0)) return false;
    }
    // connectivity (acyclicity follows from the edge count)
    std::vector<bool> seen(n, false);
    std::deque<int> q{0};
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (const auto& e : edges_) {
            int other = (e.u == u) ? e.v : (e.v == u) ? e.u : -1;
            if (other >= 0 && !seen[other]) {
                seen[other] = true;
                ++reached;
                q.push_back(other);
            }
        }
    }
    return reached == n;
}

TreeLocation FiniteTree::normalize(const TreeLocation& loc, const ToleranceConfig& cfg) const {
    if (loc.is_vertex()) {
        if (loc.vertex >= vertex_count()) throw std::invalid_argument("vertex id out of range");
        return loc;
    }
    if (loc.edge < 0 || loc.edge >= edge_count()) throw std::invalid_argument("edge id out of range");
    const TreeEdge& e = edges_[loc.edge];
    const double tol = cfg.rel_tol * std::max(1.0, e.len);
    if (loc.offset < -tol || loc.offset > e.len + tol)
        throw std::invalid_argument("edge offset out of range");
    if (loc.offset <= tol) return TreeLocation::at_vertex(e.u);
    if (loc.offset >= e.len - tol) return TreeLocation::at_vertex(e.v);
    return loc;
}

void FiniteTree::suppress_degree_two_steiner() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < vertex_count(); ++v) {
            if (vertices_[v].label) continue;
            std::vector<int> inc;
            for (int e = 0; e < edge_count(); ++e)
                if (edges_[e].u == v || edges_[e].v == v) inc.push_back(e);
            if (inc.size() == 2) {
                const TreeEdge a = edges_[inc[0]], b = edges_[inc[1]];
                int x = (a.u == v) ? a.v : a.u;
                int y = (b.u == v) ? b.v : b.u;
                edges_[inc[0]] = TreeEdge{x, y, a.len + b.len};
                edges_.erase(edges_.begin() + inc[1]);
            } else if (inc.size() == 1 && vertex_count() > 1) {
                edges_.erase(edges_.begin() + inc[0]);
            } else {
                continue;
            }
            // drop vertex v and remap indices
            vertices_.erase(vertices_.begin() + v);
            for (auto& e : edges_) {
                if (e.u > v) --e.u;
                if (e.v > v) --e.v;
            }
            invalidate_cache();
            changed = true;
            break;
        }
    }
}

int max_degree(const FiniteTree& t) {
    int best = 0;
    for (int v = 0; v < t.vertex_count(); ++v) best = std::max(best, t.degree(v));
    return best;
}

double gromov_product(const DistanceMatrix& m, int x, int y, int z) {
    const int n = m.size();
    if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n || x == y || x == z || y == z)
        throw std::invalid_argument("gromov_product needs three distinct in-range indices");
    return (m(x, y) + m(x, z) - m(y, z)) / 2.0;
}

FourPointReport four_point_check(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    const int n = m.size();
    const double tol = cfg.rel_tol * std::max(1.0, m.scale());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    double s1 = m(i, j) + m(k, l);
                    double s2 = m(i, k) + m(j, l);
                    double s3 = m(i, l) + m(j, k);
                    double hi = std::max({s1, s2, s3});
                    double lo = std::min({s1, s2, s3});
                    double mid = s1 + s2 + s3 - hi - lo;
                    if (hi - mid > tol) return {false, {i, j, k, l}};
                }
    return {};
}

double tree_distance(const FiniteTree& t, const TreeLocation& a_in, const TreeLocation& b_in,
                     const ToleranceConfig& cfg) {
    const TreeLocation a = t.normalize(a_in, cfg);
    const TreeLocation b = t.normalize(b_in, cfg);
    if (a.is_vertex() && b.is_vertex()) return t.vertex_distance(a.vertex, b.vertex);
    if (a.is_vertex()) return tree_distance(t, b, a, cfg);
    const TreeEdge& ea = t.edge(a.edge);
    if (b.is_vertex()) {
        return std::min(a.offset + t.vertex_distance(ea.u, b.vertex),
                        (ea.len - a.offset) + t.vertex_distance(ea.v, b.vertex));
    }
    if (a.edge == b.edge) return std::fabs(a.offset - b.offset);
    const TreeEdge& eb = t.edge(b.edge);
    double best = a.offset + t.vertex_distance(ea.u, eb.u) + b.offset;
    best = std::min(best, a.offset + t.vertex_distance(ea.u, eb.v) + (eb.len - b.offset));
    best = std::min(best, (ea.len - a.offset) + t.vertex_distance(ea.v, eb.u) + b.offset);
    best = std::min(best, (ea.len - a.offset) + t.vertex_distance(ea.v, eb.v) + (eb.len - b.offset));
    return best;
}

TreeLocation geodesic_point(const FiniteTree& t, const TreeLocation& y_in, const TreeLocation& z_in,
                            double t0, const ToleranceConfig& cfg) {
    const TreeLocation y = t.normalize(y_in, cfg);
    const TreeLocation z = t.normalize(z_in, cfg);
    const double total = tree_distance(t, y, z, cfg);
    const double tol = cfg.rel_tol * std::max(1.0, t.scale());
    if (t0 < -tol || t0 > total + tol) throw std::invalid_argument("geodesic offset out of range");
    t0 = std::clamp(t0, 0.0, total);
    if (t0 <= tol) return y;
    if (total - t0 <= tol) return z;

    TreeLocation cur = y;
    double remaining = t0;
    for (int guard = 0; guard < 4 * (t.vertex_count() + t.edge_count()) + 8; ++guard) {
        if (!cur.is_vertex()) {
            const TreeEdge& e = t.edge(cur.edge);
            const double dz = tree_distance(t, cur, z, cfg);
            if (!z.is_vertex() && z.edge == cur.edge &&
                cfg.close(std::fabs(cur.offset - z.offset), dz, t.scale())) {
                double dir = (z.offset > cur.offset) ? 1.0 : -1.0;
                return t.normalize(TreeLocation::on_edge(cur.edge, cur.offset + dir * remaining), cfg);
            }
            double part_u = cur.offset;
            double part_v = e.len - cur.offset;
            bool via_u = cfg.close(part_u + tree_distance(t, TreeLocation::at_vertex(e.u), z, cfg),
                                   dz, t.scale());
            double part = via_u ? part_u : part_v;
            int w = via_u ? e.u : e.v;
            if (remaining <= part + tol) {
                double off = via_u ? cur.offset - remaining : cur.offset + remaining;
                return t.normalize(TreeLocation::on_edge(cur.edge, off), cfg);
            }
            remaining -= part;
            cur = TreeLocation::at_vertex(w);
            continue;
        }
        const int a = cur.vertex;
        const double dz = tree_distance(t, cur, z, cfg);
        // path may end inside an edge incident to a
        if (!z.is_vertex()) {
            const TreeEdge& e = t.edge(z.edge);
            if (e.u == a && cfg.close(z.offset, dz, t.scale()))
                return t.normalize(TreeLocation::on_edge(z.edge, remaining), cfg);
            if (e.v == a && cfg.close(e.len - z.offset, dz, t.scale()))
                return t.normalize(TreeLocation::on_edge(z.edge, e.len - remaining), cfg);
        }
        bool stepped = false;
        for (int ei = 0; ei < t.edge_count() && !stepped; ++ei) {
            const TreeEdge& e = t.edge(ei);
            int b = (e.u == a) ? e.v : (e.v == a) ? e.u : -1;
            if (b < 0) continue;
            double db = tree_distance(t, TreeLocation::at_vertex(b), z, cfg);
            if (!cfg.close(e.len + db, dz, t.scale())) continue;
            if (remaining <= e.len + tol) {
                double off = (e.u == a) ? remaining : e.len - remaining;
                return t.normalize(TreeLocation::on_edge(ei, off), cfg);
            }
            remaining -= e.len;
            cur = TreeLocation::at_vertex(b);
            stepped = true;
        }
        if (!stepped) throw std::logic_error("geodesic walk failed to advance");
    }
    throw std::logic_error("geodesic walk did not terminate");
}

double dist_to_geodesic_point(double d_xy, double d_xz, double d_yz, double t0,
                              const ToleranceConfig& cfg) {
    const double scale = std::max({d_xy, d_xz, d_yz, 1.0});
    const double tol = cfg.rel_tol * scale;
    if (d_xy + d_xz < d_yz - tol || d_xy + d_yz < d_xz - tol || d_xz + d_yz < d_xy - tol)
        throw std::invalid_argument("triple violates the triangle inequality");
    if (t0 < -tol || t0 > d_yz + tol) throw std::invalid_argument("offset outside [0, d_yz]");
    t0 = std::clamp(t0, 0.0, d_yz);
    const double gp_x = (d_xy + d_xz - d_yz) / 2.0;  // x to the branch point
    const double gp_y = (d_xy + d_yz - d_xz) / 2.0;  // y to the branch point
    return gp_x + std::fabs(t0 - gp_y);
}

TreeLocation tree_median(const FiniteTree& t, const TreeLocation& x, const TreeLocation& y,
                         const TreeLocation& z, const ToleranceConfig& cfg) {
    double d_xy = tree_distance(t, x, y, cfg);
    double d_xz = tree_distance(t, x, z, cfg);
    double d_yz = tree_distance(t, y, z, cfg);
    double off = (d_xy + d_xz - d_yz) / 2.0;
    return geodesic_point(t, x, y, std::min(off, d_xy), cfg);
}

bool same_location(const FiniteTree& t, const TreeLocation& a, const TreeLocation& b,
                   const ToleranceConfig& cfg) {
    return cfg.is_zero(tree_distance(t, a, b, cfg), t.scale());
}

TreeLocation project(const FiniteTree& t, const std::vector<TreeLocation>& subtree,
                     const TreeLocation& b, const ToleranceConfig& cfg) {
    if (subtree.empty()) throw std::invalid_argument("subtree must be nonempty");
    if (subtree.size() >= 3) {
        for (std::size_t i = 0; i < subtree.size(); ++i)
            for (std::size_t j = i + 1; j < subtree.size(); ++j)
                for (std::size_t k = j + 1; k < subtree.size(); ++k) {
                    TreeLocation med = tree_median(t, subtree[i], subtree[j], subtree[k], cfg);
                    bool found = false;
                    for (const auto& s : subtree)
                        if (same_location(t, med, s, cfg)) { found = true; break; }
                    if (!found) throw std::invalid_argument("subtree is not path-closed");
                }
    }
    return project_unchecked(t, subtree, b, cfg);
}

TreeLocation project_unchecked(const FiniteTree& t, const std::vector<TreeLocation>& subtree,
                               const TreeLocation& b, const ToleranceConfig& cfg) {
    const TreeLocation& s0 = subtree[0];
    const double d0b = tree_distance(t, s0, b, cfg);
    double best = 0.0;
    for (const auto& s : subtree) {
        double g = (d0b + tree_distance(t, s0, s, cfg) - tree_distance(t, s, b, cfg)) / 2.0;
        best = std::max(best, g);
    }
    return geodesic_point(t, s0, b, std::min(best, d0b), cfg);
}

FiniteTree build_realization(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    if (m.kind() != MetricKind::Metric)
        throw std::invalid_argument("realization needs a metric (collapse pseudometrics first)");
    auto vr = validate_metric(m, cfg);
    if (!vr.ok) throw std::invalid_argument("realization input is not a valid metric: " + vr.axiom);
    auto fp = four_point_check(m, cfg);
    if (!fp.ok)
        throw std::invalid_argument("four-point condition fails at quadruple (" +
                                    std::to_string(fp.witness[0]) + "," + std::to_string(fp.witness[1]) +
                                    "," + std::to_string(fp.witness[2]) + "," +
                                    std::to_string(fp.witness[3]) + ")");
    const int n = m.size();
    const double tol = cfg.rel_tol * std::max(1.0, m.scale());
    FiniteTree t;
    t.add_vertex("0");
    if (n == 1) return t;
    t.add_vertex("1");
    t.add_edge(0, 1, m(0, 1));
    for (int x = 2; x < n; ++x) {
        // gate of x onto the hull of the inserted samples, seen from sample 0
        double best = 0.0;
        int jstar = 1;
        for (int j = 1; j < x; ++j) {
            double g = (m(0, x) + m(0, j) - m(j, x)) / 2.0;
            if (g > best + tol) { best = g; jstar = j; }
        }
        const int v0 = *t.find_label("0");
        const int vj = *t.find_label(std::to_string(jstar));
        TreeLocation c = geodesic_point(t, TreeLocation::at_vertex(v0),
                                        TreeLocation::at_vertex(vj), best, cfg);
        int cv = c.is_vertex() ? c.vertex : t.split_edge(c.edge, c.offset);
        double leg = m(0, x) - best;
        if (leg <= tol) {
            if (t.vertex(cv).label)
                throw std::invalid_argument("coincident labeled points in realization input");
            t.set_label(cv, std::to_string(x));
        } else {
            int xv = t.add_vertex(std::to_string(x));
            t.add_edge(cv, xv, leg);
        }
    }
    t.suppress_degree_two_steiner();
    return t;
}

DistanceMatrix realization_distances(const FiniteTree& t, int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labeled_distances(t, labels);
}

DistanceMatrix labeled_distances(const FiniteTree& t, const std::vector<std::string>& labels) {
    const int n = static_cast<int>(labels.size());
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) {
        auto v = t.find_label(labels[i]);
        if (!v) throw std::invalid_argument("label not found in tree: " + labels[i]);
        ids[i] = *v;
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            d(i, j) = d(j, i) = t.vertex_distance(ids[i], ids[j]);
    return DistanceMatrix(std::move(d), MetricKind::Metric);
}

} // namespace metricgeo
