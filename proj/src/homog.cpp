#include "metricgeo/homog.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace metricgeo {

namespace {

// all comparisons below run on snapped distance-class ids, which keeps
// group closure transitive
struct ClassView {
    Eigen::MatrixXi c;
    int n = 0;
};

ClassView classes_of(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    return {distance_classes(m, cfg), m.size()};
}

bool map_consistent(const ClassView& cv, const std::vector<int>& dom, const std::vector<int>& img) {
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = 0; j < dom.size(); ++j)
            if (cv.c(dom[i], dom[j]) != cv.c(img[i], img[j])) return false;
    return true;
}

void search_perms(const ClassView& cv, int pos, std::vector<int>& pi, std::vector<bool>& used,
                  const std::vector<int>& fixed_at,  // -1 or forced image per position
                  bool first_only, std::vector<std::vector<int>>& out) {
    const int n = cv.n;
    if (pos == n) {
        out.push_back(pi);
        return;
    }
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        if (fixed_at[pos] >= 0 && fixed_at[pos] != cand) continue;
        bool ok = true;
        for (int j = 0; j < pos && ok; ++j)
            if (cv.c(pos, j) != cv.c(cand, pi[j]) || cv.c(j, pos) != cv.c(pi[j], cand)) ok = false;
        if (!ok) continue;
        pi[pos] = cand;
        used[cand] = true;
        search_perms(cv, pos + 1, pi, used, fixed_at, first_only, out);
        used[cand] = false;
        if (first_only && !out.empty()) return;
    }
}

void check_partial_map(const DistanceMatrix& m, const PartialMap& p) {
    const int n = m.size();
    auto check_side = [&](const std::vector<int>& v) {
        std::vector<bool> seen(n, false);
        for (int x : v) {
            if (x < 0 || x >= n) throw std::invalid_argument("partial map index out of range");
            if (seen[x]) throw std::invalid_argument("partial map indices must be distinct");
            seen[x] = true;
        }
    };
    if (p.domain.size() != p.image.size())
        throw std::invalid_argument("partial map sides must have equal length");
    check_side(p.domain);
    check_side(p.image);
}

} // namespace

std::vector<std::vector<int>> isometry_group(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    auto cv = classes_of(m, cfg);
    std::vector<int> pi(cv.n, -1);
    std::vector<bool> used(cv.n, false);
    std::vector<int> fixed(cv.n, -1);
    std::vector<std::vector<int>> out;
    search_perms(cv, 0, pi, used, fixed, false, out);
    return out;  // generated in lexicographic order
}

std::optional<std::vector<int>> extends_to_global(const DistanceMatrix& m, const PartialMap& p,
                                                  const ToleranceConfig& cfg) {
    check_partial_map(m, p);
    auto cv = classes_of(m, cfg);
    if (!map_consistent(cv, p.domain, p.image))
        throw std::invalid_argument("partial map is not distance-preserving");
    std::vector<int> fixed(cv.n, -1);
    for (std::size_t i = 0; i < p.domain.size(); ++i) fixed[p.domain[i]] = p.image[i];
    std::vector<int> pi(cv.n, -1);
    std::vector<bool> used(cv.n, false);
    std::vector<std::vector<int>> out;
    search_perms(cv, 0, pi, used, fixed, true, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

namespace {

// subsets in colexicographic order
std::vector<std::vector<int>> subsets_of_size(int n, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // colex: recurse on the largest element
    std::function<void(int, int)> rec = [&](int max_elt, int remaining) {
        if (remaining == 0) {
            std::vector<int> sub(cur.rbegin(), cur.rend());
            out.push_back(sub);
            return;
        }
        for (int e = remaining - 1; e <= max_elt; ++e) {
            cur.push_back(e);
            rec(e - 1, remaining - 1);
            cur.pop_back();
        }
    };
    rec(n - 1, s);
    return out;
}

bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// enumerate distance-preserving injective images of dom; calls f with each,
// stopping early when f returns false
bool for_each_iso_image(const ClassView& cv, const std::vector<int>& dom,
                        const std::function<bool(const std::vector<int>&)>& f) {
    std::vector<int> img;
    std::vector<bool> used(cv.n, false);
    std::function<bool()> rec = [&]() -> bool {
        if (img.size() == dom.size()) return f(img);
        std::size_t pos = img.size();
        for (int cand = 0; cand < cv.n; ++cand) {
            if (used[cand]) continue;
            bool ok = cv.c(dom[pos], dom[pos]) == cv.c(cand, cand);
            for (std::size_t j = 0; j < pos && ok; ++j)
                if (cv.c(dom[pos], dom[j]) != cv.c(cand, img[j])) ok = false;
            if (!ok) continue;
            img.push_back(cand);
            used[cand] = true;
            bool cont = rec();
            img.pop_back();
            used[cand] = false;
            if (!cont) return false;
        }
        return true;
    };
    return rec();
}

} // namespace

HomogeneityReport is_k_homogeneous(const DistanceMatrix& m, int k, const ToleranceConfig& cfg) {
    const int n = m.size();
    if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
    auto cv = classes_of(m, cfg);
    auto group = isometry_group(m, cfg);
    HomogeneityReport rep;
    rep.isometry_group_size = static_cast<long long>(group.size());
    for (int s = 1; s <= k; ++s) {
        for (const auto& dom : subsets_of_size(n, s)) {
            // orbit pruning: only colex-least domain representatives
            bool representative = true;
            for (const auto& g : group) {
                std::vector<int> mapped;
                mapped.reserve(dom.size());
                for (int x : dom) mapped.push_back(g[x]);
                std::sort(mapped.begin(), mapped.end());
                if (colex_less(mapped, dom)) { representative = false; break; }
            }
            if (!representative) continue;
            std::optional<PartialMap> bad;
            for_each_iso_image(cv, dom, [&](const std::vector<int>& img) {
                PartialMap p{dom, img};
                if (!extends_to_global(m, p, cfg)) {
                    bad = p;
                    return false;
                }
                return true;
            });
            if (bad) {
                rep.verdict = false;
                rep.witness = bad;
                rep.checked_k = s - 1;
                return rep;
            }
        }
        rep.checked_k = s;
    }
    return rep;
}

HomogeneityReport is_all_set_homogeneous(const DistanceMatrix& m, const ToleranceConfig& cfg) {
    const int n = m.size();
    auto cv = classes_of(m, cfg);
    auto group = isometry_group(m, cfg);
    HomogeneityReport rep;
    rep.isometry_group_size = static_cast<long long>(group.size());
    rep.checked_k = n;
    // one-point extension property: every partial isometry on < n points
    // admits an image for every missing point
    std::vector<int> dom, img;
    std::vector<bool> dused(n, false), iused(n, false);
    std::function<bool()> rec = [&]() -> bool {
        if (static_cast<int>(dom.size()) < n) {
            for (int b = 0; b < n; ++b) {
                if (dused[b]) continue;
                bool extendable = false;
                for (int c = 0; c < n && !extendable; ++c) {
                    if (iused[c]) continue;
                    bool ok = true;
                    for (std::size_t j = 0; j < dom.size() && ok; ++j)
                        if (cv.c(b, dom[j]) != cv.c(c, img[j])) ok = false;
                    extendable = ok;
                }
                if (!extendable) {
                    rep.verdict = false;
                    rep.witness = PartialMap{dom, img};
                    rep.checked_k = static_cast<int>(dom.size());
                    return false;
                }
            }
        }
        // recurse over canonical growth: next domain point above the last
        int start = dom.empty() ? 0 : dom.back() + 1;
        for (int b = start; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (iused[c]) continue;
                bool ok = true;
                for (std::size_t j = 0; j < dom.size() && ok; ++j)
                    if (cv.c(b, dom[j]) != cv.c(c, img[j])) ok = false;
                if (!ok) continue;
                dom.push_back(b);
                img.push_back(c);
                dused[b] = iused[c] = true;
                bool cont = rec();
                dused[b] = iused[c] = false;
                dom.pop_back();
                img.pop_back();
                if (!cont) return false;
            }
        }
        return true;
    };
    rec();
    return rep;
}

HomogeneityReport is_all_set_homogeneous_direct(const DistanceMatrix& m,
                                                const ToleranceConfig& cfg) {
    const int n = m.size();
    auto cv = classes_of(m, cfg);
    auto group = isometry_group(m, cfg);
    HomogeneityReport rep;
    rep.isometry_group_size = static_cast<long long>(group.size());
    rep.checked_k = n;
    for (int s = 1; s <= n; ++s)
        for (const auto& dom : subsets_of_size(n, s)) {
            std::optional<PartialMap> bad;
            for_each_iso_image(cv, dom, [&](const std::vector<int>& img) {
                PartialMap p{dom, img};
                if (!extends_to_global(m, p, cfg)) {
                    bad = p;
                    return false;
                }
                return true;
            });
            if (bad) {
                rep.verdict = false;
                rep.witness = bad;
                rep.checked_k = s - 1;
                return rep;
            }
        }
    return rep;
}

} // namespace metricgeo
