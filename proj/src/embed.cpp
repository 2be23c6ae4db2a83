#include "metricgeo/embed.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace metricgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_valid(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    auto r = validate_metric(m, cfg);
    if (!r.ok) throw std::invalid_argument("invalid distance matrix: " + r.axiom);
}

struct Collapsed {
    DistanceMatrix metric;
    std::vector<int> class_of;
};

Collapsed collapse(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    auto q = metric_quotient(m, cfg);
    return {std::move(q.metric), std::move(q.class_of)};
}

// replicate quotient-class coordinates back onto the original points
std::vector<std::vector<double>> expand(const std::vector<std::vector<double>>& rows,
                                        const std::vector<int>& class_of) {
    std::vector<std::vector<double>> out;
    out.reserve(class_of.size());
    for (int c : class_of) out.push_back(rows[c]);
    return out;
}

struct Spectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors;
    double radius;  // spectral radius
    double band;
};

Spectrum decompose(const Eigen::MatrixXd& g, const ToleranceConfig& cfg) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    Spectrum s;
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    s.radius = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    s.band = cfg.eig_tol * s.radius;
    return s;
}

bool marginal_spectrum(const Spectrum& s) {
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        double l = s.eigenvalues(i);
        if (l != 0.0 && std::fabs(l) <= s.band) return true;
    }
    return false;
}

} // namespace

std::string space_name(const ModelSpace& s) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Euclidean>) return "euclidean";
            else if constexpr (std::is_same_v<T, Sphere>) return "sphere";
            else if constexpr (std::is_same_v<T, Hyperbolic>) return "hyperbolic";
            else if constexpr (std::is_same_v<T, Circle>) return "circle";
            else return "tree";
        },
        s);
}

EmbedResult embed_euclidean(const DistanceMatrix& m, int dim, const ToleranceConfig& cfg) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    require_valid(m, cfg);
    auto [q, class_of] = collapse(m, cfg);
    const int k = q.size();
    EmbedResult res;
    if (k == 1) {
        res.embeddable = true;
        res.coordinates = expand({std::vector<double>(dim, 0.0)}, class_of);
        return res;
    }
    Eigen::MatrixXd g(k - 1, k - 1);
    for (int i = 1; i < k; ++i)
        for (int j = 1; j < k; ++j)
            g(i - 1, j - 1) = (q(0, i) * q(0, i) + q(0, j) * q(0, j) - q(i, j) * q(i, j)) / 2.0;
    auto s = decompose(g, cfg);
    res.marginal = marginal_spectrum(s);
    double min_eig = s.eigenvalues(0);
    if (min_eig < -s.band) {
        res.certificate = "Gram matrix has negative eigenvalue " + std::to_string(min_eig);
        return res;
    }
    int rank = 0;
    for (int i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues(i) > s.band) ++rank;
    if (rank > dim) {
        res.certificate = "Gram rank " + std::to_string(rank) + " exceeds dimension " +
                          std::to_string(dim);
        return res;
    }
    res.embeddable = true;
    std::vector<std::vector<double>> rows(k, std::vector<double>(dim, 0.0));
    // top eigenpairs are at the back (ascending order)
    for (int c = 0; c < rank; ++c) {
        int idx = static_cast<int>(s.eigenvalues.size()) - 1 - c;
        double f = std::sqrt(std::max(0.0, s.eigenvalues(idx)));
        for (int i = 1; i < k; ++i) rows[i][c] = f * s.eigenvectors(i - 1, idx);
    }
    res.coordinates = expand(rows, class_of);
    return res;
}

EmbedResult embed_sphere(const DistanceMatrix& m, int dim, double radius,
                         const ToleranceConfig& cfg) {
    if (dim < 1 || !(radius > 0.0)) throw std::invalid_argument("bad sphere parameters");
    require_valid(m, cfg);
    auto [q, class_of] = collapse(m, cfg);
    const int k = q.size();
    EmbedResult res;
    const double cap = kPi * radius;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (q(i, j) > cap + cfg.rel_tol * std::max(1.0, cap)) {
                res.certificate = "diameter exceeded: distance " + std::to_string(q(i, j)) +
                                  " > pi*radius";
                return res;
            }
    Eigen::MatrixXd c(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c(i, j) = std::cos(q(i, j) / radius);
    auto s = decompose(c, cfg);
    res.marginal = marginal_spectrum(s);
    if (s.eigenvalues(0) < -s.band) {
        res.certificate = "cosine Gram matrix has negative eigenvalue " +
                          std::to_string(s.eigenvalues(0));
        return res;
    }
    int rank = 0;
    for (int i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues(i) > s.band) ++rank;
    if (rank > dim + 1) {
        res.certificate = "cosine Gram rank " + std::to_string(rank) + " exceeds " +
                          std::to_string(dim + 1);
        return res;
    }
    res.embeddable = true;
    std::vector<std::vector<double>> rows(k, std::vector<double>(dim + 1, 0.0));
    for (int col = 0; col < rank; ++col) {
        int idx = static_cast<int>(s.eigenvalues.size()) - 1 - col;
        double f = std::sqrt(std::max(0.0, s.eigenvalues(idx)));
        for (int i = 0; i < k; ++i) rows[i][col] = f * s.eigenvectors(i, idx);
    }
    // rows lie on the unit sphere up to rounding; renormalize and scale
    for (auto& r : rows) {
        double norm = 0.0;
        for (double v : r) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& v : r) v *= radius / norm;
        else
            r[0] = radius;
    }
    res.coordinates = expand(rows, class_of);
    return res;
}

EmbedResult embed_hyperbolic(const DistanceMatrix& m, int dim, double scale,
                             const ToleranceConfig& cfg) {
    if (dim < 1 || !(scale > 0.0)) throw std::invalid_argument("bad hyperbolic parameters");
    require_valid(m, cfg);
    auto [q, class_of] = collapse(m, cfg);
    const int k = q.size();
    EmbedResult res;
    Eigen::MatrixXd h(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) h(i, j) = std::cosh(q(i, j) / scale);
    auto s = decompose(h, cfg);
    res.marginal = marginal_spectrum(s);
    int pos = 0, neg = 0;
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        if (s.eigenvalues(i) > s.band) ++pos;
        if (s.eigenvalues(i) < -s.band) ++neg;
    }
    if (pos != 1) {
        res.certificate = "cosh Gram matrix has " + std::to_string(pos) +
                          " positive eigenvalues (need exactly 1)";
        return res;
    }
    if (neg > dim) {
        res.certificate = "cosh Gram matrix has " + std::to_string(neg) +
                          " negative eigenvalues, exceeding dimension " + std::to_string(dim);
        return res;
    }
    res.embeddable = true;
    std::vector<std::vector<double>> rows(k, std::vector<double>(dim + 1, 0.0));
    int top = static_cast<int>(s.eigenvalues.size()) - 1;
    Eigen::VectorXd vplus = s.eigenvectors.col(top);
    if (vplus.sum() < 0.0) vplus = -vplus;  // time components on the upper sheet
    double fplus = std::sqrt(std::max(0.0, s.eigenvalues(top)));
    for (int i = 0; i < k; ++i) rows[i][0] = fplus * vplus(i);
    int col = 1;
    for (int idx = 0; idx < s.eigenvalues.size() && col <= dim; ++idx) {
        if (s.eigenvalues(idx) < -s.band) {
            double f = std::sqrt(-s.eigenvalues(idx));
            for (int i = 0; i < k; ++i) rows[i][col] = f * s.eigenvectors(i, idx);
            ++col;
        }
    }
    res.coordinates = expand(rows, class_of);
    return res;
}

EmbedResult embed_circle(const DistanceMatrix& m, double length, const ToleranceConfig& cfg) {
    if (!(length > 0.0)) throw std::invalid_argument("circle length must be positive");
    require_valid(m, cfg);
    auto [q, class_of] = collapse(m, cfg);
    const int k = q.size();
    if (k > 24) throw std::invalid_argument("circle decision capped at 24 distinct points");
    EmbedResult res;
    const double tol = cfg.rel_tol * std::max(1.0, length);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (q(i, j) > length / 2.0 + tol) {
                res.certificate = "exceeds half circumference: distance " + std::to_string(q(i, j));
                return res;
            }
    auto arc = [&](double a, double b) {
        double d = std::fmod(std::fabs(a - b), length);
        return std::min(d, length - d);
    };
    std::vector<double> pos(k, 0.0);
    if (k == 1) {
        res.embeddable = true;
        res.coordinates = expand({{0.0}}, class_of);
        return res;
    }
    const std::uint64_t total = std::uint64_t{1} << (k - 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        // bit i-1 clear means +d[0][i]; clear-first enumeration gives the
        // lexicographically least sign vector
        for (int i = 1; i < k; ++i) {
            double sgn = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
            double p = std::fmod(sgn * q(0, i), length);
            if (p < 0.0) p += length;
            pos[i] = p;
        }
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = i + 1; j < k && ok; ++j)
                if (!cfg.close(arc(pos[i], pos[j]), q(i, j), length)) ok = false;
        if (ok) {
            res.embeddable = true;
            std::vector<std::vector<double>> rows(k);
            for (int i = 0; i < k; ++i) rows[i] = {pos[i]};
            res.coordinates = expand(rows, class_of);
            return res;
        }
    }
    res.certificate = "no arc-position assignment realizes the distances";
    return res;
}

EmbedResult embed_tree(const DistanceMatrix& m, int valence, const ToleranceConfig& cfg) {
    if (valence < 2) throw std::invalid_argument("tree valence must be >= 2");
    require_valid(m, cfg);
    auto [q, class_of] = collapse(m, cfg);
    EmbedResult res;
    auto fp = four_point_check(q, cfg);
    if (!fp.ok) {
        res.certificate = "four-point condition fails at quadruple (" +
                          std::to_string(fp.witness[0]) + "," + std::to_string(fp.witness[1]) + "," +
                          std::to_string(fp.witness[2]) + "," + std::to_string(fp.witness[3]) + ")";
        return res;
    }
    FiniteTree t = build_realization(q, cfg);
    int deg = max_degree(t);
    if (deg > valence) {
        res.certificate = "degree " + std::to_string(deg) + " branch point required";
        return res;
    }
    t.set_valence_budget(valence);
    res.embeddable = true;
    res.tree_witness = std::move(t);
    return res;
}

EmbedResult embed(const DistanceMatrix& m, const ModelSpace& space, const ToleranceConfig& cfg) {
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Euclidean>) return embed_euclidean(m, s.dim, cfg);
            else if constexpr (std::is_same_v<T, Sphere>) return embed_sphere(m, s.dim, s.radius, cfg);
            else if constexpr (std::is_same_v<T, Hyperbolic>)
                return embed_hyperbolic(m, s.dim, s.scale, cfg);
            else if constexpr (std::is_same_v<T, Circle>) return embed_circle(m, s.length, cfg);
            else return embed_tree(m, s.valence, cfg);
        },
        space);
}

double model_distance(const ModelSpace& space, const std::vector<double>& a,
                      const std::vector<double>& b) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Euclidean>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
                return std::sqrt(acc);
            } else if constexpr (std::is_same_v<T, Sphere>) {
                double dot = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
                double c = std::clamp(dot / (s.radius * s.radius), -1.0, 1.0);
                return s.radius * std::acos(c);
            } else if constexpr (std::is_same_v<T, Hyperbolic>) {
                double mink = a[0] * b[0];
                for (std::size_t i = 1; i < a.size(); ++i) mink -= a[i] * b[i];
                return s.scale * std::acosh(std::max(1.0, mink));
            } else if constexpr (std::is_same_v<T, Circle>) {
                double d = std::fmod(std::fabs(a[0] - b[0]), s.length);
                return std::min(d, s.length - d);
            } else {
                throw std::invalid_argument("tree witnesses carry no coordinate rows");
            }
        },
        space);
}

} // namespace metricgeo
