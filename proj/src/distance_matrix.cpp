#include "metricgeo/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace metricgeo {

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d, MetricKind kind)
    : d_(std::move(d)), kind_(kind) {
    if (d_.rows() != d_.cols() || d_.rows() < 1)
        throw std::invalid_argument("distance matrix must be square and nonempty");
    if (!d_.allFinite())
        throw std::invalid_argument("distance matrix entries must be finite");
}

DistanceMatrix DistanceMatrix::from_pairs(int n, const std::vector<double>& entries,
                                          MetricKind kind) {
    if (n < 1) throw std::invalid_argument("point count must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (entries.size() != expected)
        throw std::invalid_argument("expected n(n-1)/2 pair entries");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            d(i, j) = d(j, i) = entries[k++];
        }
    return DistanceMatrix(std::move(d), kind);
}

double DistanceMatrix::scale() const {
    return d_.size() ? d_.maxCoeff() : 0.0;
}

std::vector<double> DistanceMatrix::pair_entries() const {
    std::vector<double> out;
    const int n = size();
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back(d_(i, j));
    return out;
}

ValidationReport validate_metric(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    cfg.check();
    const int n = m.size();
    const double scale = m.scale();
    ValidationReport r;
    for (int i = 0; i < n; ++i) {
        if (!cfg.is_zero(m(i, i), scale))
            return {false, "zero diagonal", {i, i, -1}};
        for (int j = 0; j < n; ++j) {
            if (m(i, j) < 0.0)
                return {false, "nonnegativity", {i, j, -1}};
            if (!cfg.close(m(i, j), m(j, i), scale))
                return {false, "symmetry", {i, j, -1}};
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (m.kind() == MetricKind::Metric && cfg.is_zero(m(i, j), scale))
                return {false, "positivity", {i, j, -1}};
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (m(i, k) > m(i, j) + m(j, k) + cfg.rel_tol * std::max(1.0, scale))
                    return {false, "triangle inequality", {i, j, k}};
            }
        }
    return r;
}

DistanceMatrix snowflake(const DistanceMatrix& m, double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("snowflake exponent must lie in (0, 1]");
    Eigen::MatrixXd d = m.matrix().array().pow(theta);
    d.diagonal().setZero();
    return DistanceMatrix(std::move(d), m.kind());
}

DistanceMatrix make_ultrametric(int branching, int depth,
                                const std::vector<double>& level_dists) {
    if (branching < 2) throw std::invalid_argument("branching must be >= 2");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (level_dists.size() != static_cast<std::size_t>(depth))
        throw std::invalid_argument("need one level distance per level");
    for (int l = 0; l < depth; ++l) {
        if (!(level_dists[l] > 0.0))
            throw std::invalid_argument("level distances must be positive");
        if (l > 0 && !(level_dists[l] < level_dists[l - 1]))
            throw std::invalid_argument("level distances must be strictly decreasing");
    }
    long long count = 1;
    for (int l = 0; l < depth; ++l) {
        count *= branching;
        if (count > 100000) throw std::invalid_argument("ultrametric too large");
    }
    const int n = static_cast<int>(count);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // first level (most significant digit) at which addresses differ
            int a = i, b = j;
            long long block = count / branching;
            int level = -1;
            for (int l = 0; l < depth; ++l) {
                if (a / block != b / block) { level = l; break; }
                a = static_cast<int>(a % block);
                b = static_cast<int>(b % block);
                block /= branching;
            }
            d(i, j) = d(j, i) = level_dists[level];
        }
    return DistanceMatrix(std::move(d), MetricKind::Metric);
}

DistanceMatrix restrict(const DistanceMatrix& m, const std::vector<int>& subset) {
    const int n = m.size();
    std::vector<bool> seen(n, false);
    for (int idx : subset) {
        if (idx < 0 || idx >= n) throw std::invalid_argument("restrict index out of range");
        if (seen[idx]) throw std::invalid_argument("restrict indices must be distinct");
        seen[idx] = true;
    }
    const int k = static_cast<int>(subset.size());
    if (k < 1) throw std::invalid_argument("restrict subset must be nonempty");
    Eigen::MatrixXd d(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) d(i, j) = m(subset[i], subset[j]);
    return DistanceMatrix(std::move(d), m.kind());
}

namespace {

// Sorted row multiset per point; rows with different profiles cannot match.
std::vector<std::vector<double>> row_profiles(const DistanceMatrix& m) {
    const int n = m.size();
    std::vector<std::vector<double>> p(n);
    for (int i = 0; i < n; ++i) {
        p[i].reserve(n);
        for (int j = 0; j < n; ++j) p[i].push_back(m(i, j));
        std::sort(p[i].begin(), p[i].end());
    }
    return p;
}

bool profiles_match(const std::vector<double>& a, const std::vector<double>& b,
                    const ToleranceConfig& cfg, double scale) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!cfg.close(a[k], b[k], scale)) return false;
    return true;
}

bool extend_bijection(const DistanceMatrix& a, const DistanceMatrix& b, int pos,
                      std::vector<int>& pi, std::vector<bool>& used,
                      const std::vector<std::vector<double>>& pa,
                      const std::vector<std::vector<double>>& pb,
                      const ToleranceConfig& cfg, double scale) {
    const int n = a.size();
    if (pos == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        if (!profiles_match(pa[pos], pb[cand], cfg, scale)) continue;
        bool ok = true;
        for (int j = 0; j < pos; ++j)
            if (!cfg.close(a(pos, j), b(cand, pi[j]), scale)) { ok = false; break; }
        if (!ok) continue;
        pi[pos] = cand;
        used[cand] = true;
        if (extend_bijection(a, b, pos + 1, pi, used, pa, pb, cfg, scale)) return true;
        used[cand] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> is_isometric(const DistanceMatrix& a, const DistanceMatrix& b,
                                             const ToleranceConfig& cfg) {
    if (a.size() != b.size()) return std::nullopt;
    const int n = a.size();
    const double scale = std::max(a.scale(), b.scale());
    auto pa = row_profiles(a);
    auto pb = row_profiles(b);
    std::vector<int> pi(n, -1);
    std::vector<bool> used(n, false);
    // candidates tried in ascending order, so the first hit is lex least
    if (extend_bijection(a, b, 0, pi, used, pa, pb, cfg, scale)) return pi;
    return std::nullopt;
}

MetricQuotient metric_quotient(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    const int n = m.size();
    const double scale = m.scale();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cfg.is_zero(m(i, j), scale)) {
                int a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<int> class_of(n, -1);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (class_of[r] < 0) {
            class_of[r] = static_cast<int>(reps.size());
            reps.push_back(r);
        }
        class_of[i] = class_of[r];
    }
    const int k = static_cast<int>(reps.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) d(i, j) = m.matrix()(reps[i], reps[j]);
    return {DistanceMatrix(std::move(d), MetricKind::Metric), std::move(class_of)};
}

Eigen::MatrixXi distance_classes(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    const int n = m.size();
    const double scale = m.scale();
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vals.push_back(m(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    // cluster sorted values; gaps below tolerance merge
    std::vector<double> rep;
    for (double v : vals) {
        if (rep.empty() || !cfg.close(rep.back(), v, scale)) rep.push_back(v);
    }
    auto class_id = [&](double v) {
        auto it = std::upper_bound(rep.begin(), rep.end(), v);
        // nearest representative; ties impossible since reps are separated
        int hi = static_cast<int>(it - rep.begin());
        if (hi == 0) return 0;
        if (hi == static_cast<int>(rep.size())) return hi - 1;
        return (v - rep[hi - 1] <= rep[hi] - v) ? hi - 1 : hi;
    };
    Eigen::MatrixXi c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = class_id(m(i, j));
    return c;
}

} // namespace metricgeo
