#include "metricgeo/embed_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace metricgeo {

namespace {

constexpr double kFitTol = 1e-6;  // worst distance error accepted as "realized"

// Dense Levenberg-Marquardt with numeric Jacobian; problems here have at
// most a few dozen parameters.
double levenberg_marquardt(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residuals,
                           Eigen::VectorXd& x, int max_iter = 200) {
    const double h = 1e-7;
    double lambda = 1e-3;
    Eigen::VectorXd r = residuals(x);
    double cost = r.squaredNorm();
    for (int iter = 0; iter < max_iter; ++iter) {
        const int np = static_cast<int>(x.size());
        const int nr = static_cast<int>(r.size());
        Eigen::MatrixXd jac(nr, np);
        for (int p = 0; p < np; ++p) {
            Eigen::VectorXd xp = x;
            xp(p) += h;
            jac.col(p) = (residuals(xp) - r) / h;
        }
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd jtr = jac.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 8; ++tries) {
            Eigen::MatrixXd a = jtj;
            a.diagonal().array() += lambda * (jtj.diagonal().array().abs() + 1e-12);
            Eigen::VectorXd step = a.ldlt().solve(jtr);
            Eigen::VectorXd xn = x - step;
            Eigen::VectorXd rn = residuals(xn);
            double cn = rn.squaredNorm();
            if (cn < cost) {
                x = xn;
                r = rn;
                cost = cn;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved || cost < 1e-24) break;
    }
    return cost;
}

struct PairList {
    std::vector<std::array<int, 2>> idx;
    std::vector<double> d;
};

PairList pairs_of(const DistanceMatrix& m) {
    PairList p;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) {
            p.idx.push_back({i, j});
            p.d.push_back(m(i, j));
        }
    return p;
}

DistanceMatrix quotient_of(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    return metric_quotient(m, cfg).metric;
}

} // namespace

OracleResult oracle_euclidean(const DistanceMatrix& m_in, int dim, const ToleranceConfig& cfg) {
    DistanceMatrix m = quotient_of(m_in, cfg);
    const int n = m.size();
    if (n <= 1) return {true, 0.0};
    auto pl = pairs_of(m);
    const double scale = m.scale();
    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto residuals = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(pl.idx.size());
        for (std::size_t k = 0; k < pl.idx.size(); ++k) {
            auto [i, j] = pl.idx[k];
            double s = 0.0;
            for (int c = 0; c < dim; ++c) {
                double diff = x(i * dim + c) - x(j * dim + c);
                s += diff * diff;
            }
            r(k) = std::sqrt(s) - pl.d[k];
        }
        return r;
    };
    double best = 1e300;
    for (int start = 0; start < 20; ++start) {
        Eigen::VectorXd x(n * dim);
        for (int i = 0; i < x.size(); ++i) x(i) = gauss(rng) * scale;
        levenberg_marquardt(residuals, x);
        double worst = residuals(x).cwiseAbs().maxCoeff();
        best = std::min(best, worst);
        if (best < kFitTol * std::max(1.0, scale) * 1e-3) break;
    }
    return {best <= kFitTol * std::max(1.0, scale), best};
}

OracleResult oracle_sphere(const DistanceMatrix& m_in, int dim, double radius,
                           const ToleranceConfig& cfg) {
    DistanceMatrix m = quotient_of(m_in, cfg);
    const int n = m.size();
    if (n <= 1) return {true, 0.0};
    constexpr double kPi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m(i, j) > kPi * radius * (1.0 + cfg.rel_tol)) return {false, m(i, j) - kPi * radius};
    auto pl = pairs_of(m);
    const int amb = dim + 1;  // ambient coordinates of the embedded sphere
    // fit chord lengths: arc d corresponds to chord 2 r sin(d / 2r)
    std::vector<double> chord(pl.d.size());
    for (std::size_t k = 0; k < pl.d.size(); ++k)
        chord[k] = 2.0 * radius * std::sin(std::min(pl.d[k] / (2.0 * radius), kPi / 2.0));
    auto normalize = [&](Eigen::VectorXd x) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int c = 0; c < amb; ++c) s += x(i * amb + c) * x(i * amb + c);
            s = std::sqrt(s);
            if (s < 1e-12) {
                x(i * amb) = radius;
                continue;
            }
            for (int c = 0; c < amb; ++c) x(i * amb + c) *= radius / s;
        }
        return x;
    };
    auto residuals = [&](const Eigen::VectorXd& raw) {
        Eigen::VectorXd x = normalize(raw);
        Eigen::VectorXd r(pl.idx.size());
        for (std::size_t k = 0; k < pl.idx.size(); ++k) {
            auto [i, j] = pl.idx[k];
            double s = 0.0;
            for (int c = 0; c < amb; ++c) {
                double diff = x(i * amb + c) - x(j * amb + c);
                s += diff * diff;
            }
            r(k) = std::sqrt(s) - chord[k];
        }
        return r;
    };
    std::mt19937 rng(54321);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best_arc = 1e300;
    for (int start = 0; start < 20; ++start) {
        Eigen::VectorXd x(n * amb);
        for (int i = 0; i < x.size(); ++i) x(i) = gauss(rng);
        levenberg_marquardt(residuals, x);
        // report the worst arc-distance error of the fitted configuration
        Eigen::VectorXd xs = normalize(x);
        double worst = 0.0;
        for (std::size_t k = 0; k < pl.idx.size(); ++k) {
            auto [i, j] = pl.idx[k];
            double dot = 0.0;
            for (int c = 0; c < amb; ++c) dot += xs(i * amb + c) * xs(j * amb + c);
            double arc = radius * std::acos(std::clamp(dot / (radius * radius), -1.0, 1.0));
            worst = std::max(worst, std::fabs(arc - pl.d[k]));
        }
        best_arc = std::min(best_arc, worst);
        if (best_arc < kFitTol * 1e-2) break;
    }
    return {best_arc <= kFitTol * std::max(1.0, radius), best_arc};
}

OracleResult oracle_hyperbolic(const DistanceMatrix& m_in, int dim, double scale,
                               const ToleranceConfig& cfg) {
    DistanceMatrix m = quotient_of(m_in, cfg);
    const int n = m.size();
    if (n <= 1) return {true, 0.0};
    auto pl = pairs_of(m);
    std::vector<double> target(pl.d.size());
    for (std::size_t k = 0; k < pl.d.size(); ++k) target[k] = std::cosh(pl.d[k] / scale);
    // spatial coordinates are free; the time component is the hyperboloid
    // projection sqrt(1 + |s|^2)
    auto time_of = [&](const Eigen::VectorXd& x, int i) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += x(i * dim + c) * x(i * dim + c);
        return std::sqrt(1.0 + s);
    };
    auto residuals = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(pl.idx.size());
        for (std::size_t k = 0; k < pl.idx.size(); ++k) {
            auto [i, j] = pl.idx[k];
            double mink = time_of(x, i) * time_of(x, j);
            for (int c = 0; c < dim; ++c) mink -= x(i * dim + c) * x(j * dim + c);
            r(k) = mink - target[k];
        }
        return r;
    };
    std::mt19937 rng(98765);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 1e300;
    for (int start = 0; start < 20; ++start) {
        Eigen::VectorXd x(n * dim);
        for (int i = 0; i < x.size(); ++i) x(i) = gauss(rng);
        levenberg_marquardt(residuals, x);
        // worst error in distance units
        double worst = 0.0;
        Eigen::VectorXd r = residuals(x);
        for (std::size_t k = 0; k < pl.idx.size(); ++k) {
            double mink = std::max(1.0, r(k) + target[k]);
            worst = std::max(worst, std::fabs(scale * std::acosh(mink) - pl.d[k]));
        }
        best = std::min(best, worst);
        if (best < kFitTol * 1e-2) break;
    }
    return {best <= kFitTol * std::max(1.0, m.scale()), best};
}

OracleResult oracle_circle(const DistanceMatrix& m_in, double length, const ToleranceConfig& cfg) {
    DistanceMatrix m = quotient_of(m_in, cfg);
    const int n = m.size();
    if (n <= 1) return {true, 0.0};
    if (n > 24) throw std::invalid_argument("circle oracle capped at 24 points");
    auto arc = [&](double a, double b) {
        double d = std::fmod(std::fabs(a - b), length);
        return std::min(d, length - d);
    };
    double best = 1e300;
    std::vector<double> pos(n, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        for (int i = 1; i < n; ++i) {
            double p = ((mask >> (i - 1)) & 1) ? length - std::fmod(m(0, i), length)
                                               : std::fmod(m(0, i), length);
            pos[i] = std::fmod(p + length, length);
        }
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                worst = std::max(worst, std::fabs(arc(pos[i], pos[j]) - m(i, j)));
        best = std::min(best, worst);
    }
    return {best <= cfg.rel_tol * 10.0 * std::max(1.0, length), best};
}

namespace {

// minimal neighbor-joining over an explicit node list; edges may come out
// with (near-)zero length and are contracted before the degree check
struct NjGraph {
    int nodes = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<double> lens;
};

NjGraph neighbor_join(const DistanceMatrix& m) {
    const int n = m.size();
    NjGraph g;
    g.nodes = n;
    std::vector<int> active;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = m(i, j);
    for (int i = 0; i < n; ++i) active.push_back(i);
    auto dist = [&](int a, int b) { return d[a][b]; };
    while (active.size() > 3) {
        const int r = static_cast<int>(active.size());
        std::vector<double> rowsum(active.size(), 0.0);
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = 0; j < active.size(); ++j)
                rowsum[i] += dist(active[i], active[j]);
        double bestq = 1e300;
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double q = (r - 2) * dist(active[i], active[j]) - rowsum[i] - rowsum[j];
                if (q < bestq - 1e-12) {
                    bestq = q;
                    bi = i;
                    bj = j;
                }
            }
        int u = active[bi], v = active[bj];
        double lu = dist(u, v) / 2.0 + (rowsum[bi] - rowsum[bj]) / (2.0 * (r - 2));
        double lv = dist(u, v) - lu;
        lu = std::max(0.0, lu);
        lv = std::max(0.0, lv);
        int w = g.nodes++;
        for (auto& row : d) row.push_back(0.0);
        d.push_back(std::vector<double>(g.nodes, 0.0));
        for (int k : active) {
            if (k == u || k == v) continue;
            double dw = (dist(u, k) + dist(v, k) - dist(u, v)) / 2.0;
            d[w][k] = d[k][w] = std::max(0.0, dw);
        }
        g.edges.push_back({u, w});
        g.lens.push_back(lu);
        g.edges.push_back({v, w});
        g.lens.push_back(lv);
        active.erase(active.begin() + bj);
        active.erase(active.begin() + bi);
        active.push_back(w);
    }
    if (active.size() == 3) {
        int a = active[0], b = active[1], c = active[2];
        int w = g.nodes++;
        double la = (dist(a, b) + dist(a, c) - dist(b, c)) / 2.0;
        double lb = (dist(a, b) + dist(b, c) - dist(a, c)) / 2.0;
        double lc = (dist(a, c) + dist(b, c) - dist(a, b)) / 2.0;
        g.edges.push_back({a, w});
        g.lens.push_back(std::max(0.0, la));
        g.edges.push_back({b, w});
        g.lens.push_back(std::max(0.0, lb));
        g.edges.push_back({c, w});
        g.lens.push_back(std::max(0.0, lc));
    } else if (active.size() == 2) {
        g.edges.push_back({active[0], active[1]});
        g.lens.push_back(dist(active[0], active[1]));
    }
    return g;
}

} // namespace

OracleResult oracle_tree(const DistanceMatrix& m_in, int valence, const ToleranceConfig& cfg) {
    DistanceMatrix m = quotient_of(m_in, cfg);
    const int n = m.size();
    if (n <= 1) return {true, 0.0};
    NjGraph g = neighbor_join(m);
    // path distances over the joined graph
    std::vector<std::vector<std::pair<int, double>>> adj(g.nodes);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e][0]].push_back({g.edges[e][1], g.lens[e]});
        adj[g.edges[e][1]].push_back({g.edges[e][0], g.lens[e]});
    }
    auto dists_from = [&](int s) {
        std::vector<double> out(g.nodes, -1.0);
        std::vector<int> stack{s};
        out[s] = 0.0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, len] : adj[u])
                if (out[v] < 0.0) {
                    out[v] = out[u] + len;
                    stack.push_back(v);
                }
        }
        return out;
    };
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        auto row = dists_from(i);
        for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::fabs(row[j] - m(i, j)));
    }
    const double tol = 1e-7 * std::max(1.0, m.scale());
    if (worst > tol) return {false, worst};
    // contract near-zero edges, then check degrees
    std::vector<int> rep(g.nodes);
    for (int i = 0; i < g.nodes; ++i) rep[i] = i;
    auto find = [&](int x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.lens[e] <= tol) {
            int a = find(g.edges[e][0]), b = find(g.edges[e][1]);
            if (a != b) rep[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> deg(g.nodes, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.lens[e] <= tol) continue;
        ++deg[find(g.edges[e][0])];
        ++deg[find(g.edges[e][1])];
    }
    int maxdeg = 0;
    for (int v = 0; v < g.nodes; ++v)
        if (find(v) == v) maxdeg = std::max(maxdeg, deg[v]);
    return {maxdeg <= valence, worst};
}

} // namespace metricgeo
