#include "metricgeo/extend.hpp"

#include <cmath>
#include <stdexcept>

namespace metricgeo {

PartialIsometry::PartialIsometry(FiniteTree source, int valence, ToleranceConfig cfg)
    : source_(std::move(source)), valence_(valence), cfg_(cfg) {
    if (valence_ < 2) throw std::invalid_argument("valence budget must be >= 2");
    if (max_degree(source_) > valence_)
        throw std::invalid_argument("source tree exceeds the valence budget");
    source_.set_valence_budget(valence_);
    target_.set_valence_budget(valence_);
}

PartialIsometry PartialIsometry::from_self_map(const FiniteTree& source,
                                               const std::vector<TreeLocation>& domain,
                                               const std::vector<TreeLocation>& images,
                                               int valence, ToleranceConfig cfg) {
    if (domain.size() != images.size())
        throw std::invalid_argument("domain and image lists must have equal length");
    PartialIsometry p(source, valence, cfg);
    const int k = static_cast<int>(domain.size());
    if (k == 0) return p;
    const double scale = p.source_.scale();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double ds = tree_distance(p.source_, domain[i], domain[j], cfg);
            double di = tree_distance(p.source_, images[i], images[j], cfg);
            if (!cfg.close(ds, di, scale))
                throw std::invalid_argument("seed map is not distance-preserving");
        }
    if (k == 1) {
        int v = p.target_.add_vertex("0");
        p.domain_ = {p.source_.normalize(domain[0], cfg)};
        p.images_ = {v};
        return p;
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            d(i, j) = d(j, i) = tree_distance(p.source_, images[i], images[j], cfg);
    DistanceMatrix dm(std::move(d), MetricKind::Metric);
    p.target_ = build_realization(dm, cfg);
    p.target_.set_valence_budget(valence);
    for (int i = 0; i < k; ++i) {
        p.domain_.push_back(p.source_.normalize(domain[i], cfg));
        p.images_.push_back(*p.target_.find_label(std::to_string(i)));
    }
    return p;
}

std::optional<int> PartialIsometry::find_domain_location(const TreeLocation& loc) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (same_location(source_, domain_[i], loc, cfg_)) return static_cast<int>(i);
    return std::nullopt;
}

int PartialIsometry::materialize_on_target(int i, int j, double offset) {
    TreeLocation loc = geodesic_point(target_, TreeLocation::at_vertex(images_[i]),
                                      TreeLocation::at_vertex(images_[j]), offset, cfg_);
    if (loc.is_vertex()) return loc.vertex;
    return target_.split_edge(loc.edge, loc.offset);
}

void PartialIsometry::convex_closure() {
    bool changed = true;
    while (changed) {
        changed = false;
        const int k = static_cast<int>(domain_.size());
        for (int i = 0; i < k && !changed; ++i)
            for (int j = i + 1; j < k && !changed; ++j)
                for (int l = j + 1; l < k && !changed; ++l) {
                    TreeLocation med = tree_median(source_, domain_[i], domain_[j], domain_[l], cfg_);
                    if (find_domain_location(med)) continue;
                    double off = tree_distance(source_, domain_[i], med, cfg_);
                    int v = materialize_on_target(i, j, off);
                    domain_.push_back(med);
                    images_.push_back(v);
                    changed = true;
                }
    }
}

TraceStep PartialIsometry::extend_point(const TreeLocation& b_in) {
    const TreeLocation b = source_.normalize(b_in, cfg_);
    const double tol = cfg_.rel_tol * source_.scale();
    if (domain_.empty()) {
        if (target_.vertex_count() != 0)
            throw std::logic_error("empty domain with nonempty target");
        int v = target_.add_vertex("0");
        domain_.push_back(b);
        images_.push_back(v);
        return TraceStep{b, b, 0.0, -1, 0.0};
    }
    TreeLocation c = project_unchecked(source_, domain_, b, cfg_);
    double t = tree_distance(source_, c, b, cfg_);
    if (t <= tol) throw std::invalid_argument("point already lies in the domain hull");
    int cimg;
    double off = 0.0;
    if (auto idx = find_domain_location(c)) {
        cimg = images_[*idx];
        c = domain_[*idx];
    } else {
        // c is interior to some domain geodesic; map it by offset
        const int k = static_cast<int>(domain_.size());
        int pi = -1, pj = -1;
        for (int i = 0; i < k && pi < 0; ++i)
            for (int j = i + 1; j < k && pi < 0; ++j) {
                double dij = tree_distance(source_, domain_[i], domain_[j], cfg_);
                double dic = tree_distance(source_, domain_[i], c, cfg_);
                double dcj = tree_distance(source_, c, domain_[j], cfg_);
                if (cfg_.close(dic + dcj, dij, source_.scale())) {
                    pi = i;
                    pj = j;
                    off = dic;
                }
            }
        if (pi < 0) throw std::logic_error("gate is not on any domain geodesic");
        cimg = materialize_on_target(pi, pj, off);
        domain_.push_back(c);
        images_.push_back(cimg);
    }
    int deg = target_.degree(cimg);
    if (deg + 1 > valence_)
        throw std::runtime_error("valence exhausted at target vertex " + std::to_string(cimg) +
                                 " (invariant violation)");
    int direction = deg;  // lowest unused sprout direction
    int nb = target_.add_vertex();
    target_.add_edge(cimg, nb, t);
    domain_.push_back(b);
    images_.push_back(nb);
    return TraceStep{b, c, t, direction, off};
}

ExtensionTrace PartialIsometry::extend_all(const std::vector<TreeLocation>& points) {
    convex_closure();
    ExtensionTrace trace;
    const double tol = cfg_.rel_tol * source_.scale();
    for (const auto& raw : points) {
        TreeLocation q = source_.normalize(raw, cfg_);
        if (find_domain_location(q)) continue;
        if (domain_.empty()) {
            trace.steps.push_back(extend_point(q));
            continue;
        }
        TreeLocation c = project_unchecked(source_, domain_, q, cfg_);
        double t = tree_distance(source_, c, q, cfg_);
        if (t <= tol) {
            // inside the hull: map by geodesic offset, no sprout
            const int k = static_cast<int>(domain_.size());
            int pi = -1, pj = -1;
            double off = 0.0;
            for (int i = 0; i < k && pi < 0; ++i)
                for (int j = i + 1; j < k && pi < 0; ++j) {
                    double dij = tree_distance(source_, domain_[i], domain_[j], cfg_);
                    double diq = tree_distance(source_, domain_[i], q, cfg_);
                    double dqj = tree_distance(source_, q, domain_[j], cfg_);
                    if (cfg_.close(diq + dqj, dij, source_.scale())) {
                        pi = i;
                        pj = j;
                        off = diq;
                    }
                }
            if (pi < 0) throw std::logic_error("hull point not on any domain geodesic");
            int v = materialize_on_target(pi, pj, off);
            domain_.push_back(q);
            images_.push_back(v);
            trace.steps.push_back(TraceStep{q, q, 0.0, -1, off});
        } else {
            trace.steps.push_back(extend_point(q));
        }
    }
    return trace;
}

PartialIsometry::VerifyResult PartialIsometry::verify() const {
    VerifyResult r;
    const int k = static_cast<int>(domain_.size());
    double maxd = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double ds = tree_distance(source_, domain_[i], domain_[j], cfg_);
            maxd = std::max(maxd, ds);
            double dt = target_.vertex_distance(images_[i], images_[j]);
            double dev = std::fabs(ds - dt);
            if (dev > r.worst) {
                r.worst = dev;
                r.worst_i = i;
                r.worst_j = j;
            }
        }
    r.ok = r.worst <= 10.0 * cfg_.rel_tol * maxd;
    return r;
}

bool PartialIsometry::hull_discipline_ok() const {
    if (max_degree(target_) > valence_) return false;
    for (int v = 0; v < target_.vertex_count(); ++v) {
        if (target_.degree(v) <= 1) {
            bool is_image = false;
            for (int img : images_)
                if (img == v) { is_image = true; break; }
            if (!is_image) return false;
        }
    }
    return true;
}

DistanceMatrix PartialIsometry::domain_distances() const {
    const int k = static_cast<int>(domain_.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            d(i, j) = d(j, i) = tree_distance(source_, domain_[i], domain_[j], cfg_);
    return DistanceMatrix(std::move(d), MetricKind::Metric);
}

DistanceMatrix PartialIsometry::image_distances() const {
    const int k = static_cast<int>(images_.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) d(i, j) = d(j, i) = target_.vertex_distance(images_[i], images_[j]);
    return DistanceMatrix(std::move(d), MetricKind::Metric);
}

PartialIsometry::VerifyResult verify_isometry(const PartialIsometry& p) { return p.verify(); }

PartialIsometry replay(PartialIsometry seed, const ExtensionTrace& trace) {
    std::vector<TreeLocation> points;
    points.reserve(trace.steps.size());
    for (const auto& s : trace.steps) points.push_back(s.point);
    ExtensionTrace again = seed.extend_all(points);
    if (again.steps.size() != trace.steps.size())
        throw std::runtime_error("trace replay diverged: step count differs");
    ToleranceConfig cfg;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& a = trace.steps[i];
        const auto& b = again.steps[i];
        if (a.direction != b.direction || !cfg.close(a.t, b.t) ||
            !same_location(seed.source(), a.gate, b.gate, cfg))
            throw std::runtime_error("trace replay diverged at step " + std::to_string(i));
    }
    return seed;
}

} // namespace metricgeo
