// Acceptance gate: eight pinned criteria, one pass/fail line each.
// Exits nonzero iff any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/embed.hpp"
#include "metricgeo/embed_oracle.hpp"
#include "metricgeo/extend.hpp"
#include "metricgeo/fingerprint.hpp"
#include "metricgeo/homog.hpp"
#include "metricgeo/json_io.hpp"
#include "metricgeo/ramsey.hpp"
#include "metricgeo/tree.hpp"
#include "support/generators.hpp"

using namespace metricgeo;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, double seconds, const std::string& detail = "") {
    std::printf("criterion %d (%s): %s  [%.2fs]%s%s\n", idx, what, ok ? "PASS" : "FAIL", seconds,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++g_failures;
}

double now() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// ---- grid enumeration helpers (criteria 5 and 6) ----

// all valid metrics with n points and entries drawn from `values`, reduced to
// canonical (lexicographically least under relabeling) pair vectors
std::vector<std::vector<double>> canonical_grid(int n, const std::vector<double>& values) {
    const int pairs = n * (n - 1) / 2;
    std::vector<std::array<int, 2>> pr;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pr.push_back({i, j});
    std::vector<int> pidx(n * n);
    for (int k = 0; k < pairs; ++k) {
        pidx[pr[k][0] * n + pr[k][1]] = k;
        pidx[pr[k][1] * n + pr[k][0]] = k;
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<std::vector<double>> out;
    std::map<std::vector<double>, bool> seen;
    std::vector<int> idx(pairs, 0);
    std::vector<double> d(pairs);
    const int base = static_cast<int>(values.size());
    while (true) {
        for (int k = 0; k < pairs; ++k) d[k] = values[idx[k]];
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                for (int k = j + 1; k < n && ok; ++k) {
                    double a = d[pidx[i * n + j]], b = d[pidx[i * n + k]], c = d[pidx[j * n + k]];
                    if (a > b + c || b > a + c || c > a + b) ok = false;
                }
        if (ok) {
            std::vector<double> best = d, cand(pairs);
            for (const auto& q : perms) {
                for (int k = 0; k < pairs; ++k)
                    cand[k] = d[pidx[q[pr[k][0]] * n + q[pr[k][1]]]];
                if (cand < best) best = cand;
            }
            if (seen.emplace(best, true).second) out.push_back(best);
        }
        int pos = pairs - 1;
        while (pos >= 0 && ++idx[pos] == base) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

// ---- criteria ----

void criterion1() {
    double t0 = now();
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 5 && ok; ++m) {
        for (int k = 2; k <= m; ++k)
            if (!embed_tree(testsupport::equilateral(k, 1.0), m).embeddable) {
                ok = false;
                detail = "k=" + std::to_string(k) + " should fit valence " + std::to_string(m);
            }
        if (embed_tree(testsupport::equilateral(m + 1, 1.0), m).embeddable) {
            ok = false;
            detail = "k=" + std::to_string(m + 1) + " must not fit valence " + std::to_string(m);
        }
    }
    report(1, "equilateral bound in trees", ok, now() - t0, detail);
}

void criterion2() {
    double t0 = now();
    auto r = nonclosed_demo(3, 4, {0.1, 0.01, 0.001});
    bool ok = r.members.size() == 3 && r.members[0] && r.members[1] && r.members[2] &&
              !r.limit_member && r.gap_exhibited && r.gaps.size() == 3 &&
              std::fabs(r.gaps[0] - 0.6) <= 1e-9 && std::fabs(r.gaps[1] - 0.06) <= 1e-9 &&
              std::fabs(r.gaps[2] - 0.006) <= 1e-9;
    report(2, "non-closed configuration set", ok, now() - t0);
}

void criterion3() {
    double t0 = now();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> nsz(4, 12);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const int n = nsz(rng);
        auto src = testsupport::random_tree(rng, n, 3);
        auto m = testsupport::tree_metric(src, n);
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<int> sub(idx.begin(), idx.begin() + 3);
        auto group = isometry_group(restrict(m, sub));
        const auto& perm = group[rng() % group.size()];
        auto loc = [&](const std::vector<int>& s) {
            std::vector<TreeLocation> out;
            for (int x : s) out.push_back(TreeLocation::at_vertex(*src.find_label(std::to_string(x))));
            return out;
        };
        std::vector<int> img = {sub[perm[0]], sub[perm[1]], sub[perm[2]]};
        try {
            auto p = PartialIsometry::from_self_map(src, loc(sub), loc(img), 3);
            std::vector<int> rest(idx.begin() + 3, idx.end());
            p.extend_all(loc(rest));
            auto check = p.verify();
            if (!check.ok || check.worst > 1e-8) {
                ok = false;
                detail = "trial " + std::to_string(trial) + " deviation " + std::to_string(check.worst);
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("trial ") + std::to_string(trial) + ": " + e.what();
        }
    }
    report(3, "extension algorithm at desk scale", ok, now() - t0, detail);
}

void criterion4() {
    double t0 = now();
    std::mt19937 rng(77);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        auto t = testsupport::random_tree(rng, 6, 3);
        auto m = testsupport::tree_metric(t, 6);
        std::vector<TreeLocation> loc;
        for (int i = 0; i < 6; ++i)
            loc.push_back(TreeLocation::at_vertex(*t.find_label(std::to_string(i))));
        for (int x = 0; x < 6 && ok; ++x)
            for (int y = 0; y < 6 && ok; ++y)
                for (int z = 0; z < 6 && ok; ++z) {
                    if (x == y || y == z || x == z) continue;
                    for (int step = 0; step < 10; ++step) {
                        double off = m(y, z) * step / 9.0;
                        auto s = geodesic_point(t, loc[y], loc[z], off);
                        double direct = tree_distance(t, loc[x], s);
                        double formula = dist_to_geodesic_point(m(x, y), m(x, z), m(y, z), off);
                        if (std::fabs(direct - formula) > 1e-9 * std::max(1.0, m.scale())) ok = false;
                    }
                }
    }
    report(4, "four-values distance formula", ok, now() - t0);
}

void criterion5() {
    double t0 = now();
    bool ok = true;
    std::string detail;
    long long checked = 0;
    for (int n = 2; n <= 5 && ok; ++n) {
        auto grid = canonical_grid(n, {0.5, 1.0, 1.5, 2.0});
        for (const auto& entries : grid) {
            DistanceMatrix m = DistanceMatrix::from_pairs(n, entries);
            auto mismatch = [&](const std::string& space, bool crit, bool oracle) {
                if (crit == oracle) return false;
                ok = false;
                detail = space + " disagrees on n=" + std::to_string(n) + " [";
                for (double e : entries) detail += std::to_string(e) + " ";
                detail += "] criterion=" + std::to_string(crit);
                return true;
            };
            // Euclidean, highest dim first: a dim-3 failure settles lower dims
            {
                bool c3 = embed_euclidean(m, 3).embeddable;
                bool o3 = oracle_euclidean(m, 3).embeddable;
                ++checked;
                if (mismatch("euclidean dim 3", c3, o3)) break;
                bool prev_o = o3;
                for (int dim = 2; dim >= 1; --dim) {
                    bool c = embed_euclidean(m, dim).embeddable;
                    bool o = prev_o ? oracle_euclidean(m, dim).embeddable : false;
                    ++checked;
                    if (mismatch("euclidean dim " + std::to_string(dim), c, o)) break;
                    prev_o = o;
                }
                if (!ok) break;
            }
            {
                bool c2 = embed_sphere(m, 2, 1.0).embeddable;
                bool o2 = oracle_sphere(m, 2, 1.0).embeddable;
                ++checked;
                if (mismatch("sphere dim 2", c2, o2)) break;
                bool c1 = embed_sphere(m, 1, 1.0).embeddable;
                bool o1 = o2 ? oracle_sphere(m, 1, 1.0).embeddable : false;
                ++checked;
                if (mismatch("sphere dim 1", c1, o1)) break;
            }
            {
                bool c2 = embed_hyperbolic(m, 2, 1.0).embeddable;
                bool o2 = oracle_hyperbolic(m, 2, 1.0).embeddable;
                ++checked;
                if (mismatch("hyperbolic dim 2", c2, o2)) break;
                bool c1 = embed_hyperbolic(m, 1, 1.0).embeddable;
                bool o1 = o2 ? oracle_hyperbolic(m, 1, 1.0).embeddable : false;
                ++checked;
                if (mismatch("hyperbolic dim 1", c1, o1)) break;
            }
            for (double L : {3.0, 4.0}) {
                ++checked;
                if (mismatch("circle L=" + std::to_string(L), embed_circle(m, L).embeddable,
                             oracle_circle(m, L).embeddable))
                    break;
            }
            if (!ok) break;
            for (int v : {3, 4}) {
                ++checked;
                if (mismatch("tree valence " + std::to_string(v), embed_tree(m, v).embeddable,
                             oracle_tree(m, v).embeddable))
                    break;
            }
            if (!ok) break;
        }
    }
    report(5, "embedding criteria agree with oracles", ok, now() - t0,
           ok ? std::to_string(checked) + " decisions" : detail);
}

void criterion6() {
    double t0 = now();
    bool ok = true;
    std::string detail;
    long long classes = 0;
    for (int n = 2; n <= 5 && ok; ++n) {
        auto grid = canonical_grid(n, {1.0, 2.0, 3.0, 4.0});
        for (const auto& entries : grid) {
            DistanceMatrix m = DistanceMatrix::from_pairs(n, entries);
            ++classes;
            auto one = is_all_set_homogeneous(m);
            auto direct = is_all_set_homogeneous_direct(m);
            if (one.verdict != direct.verdict) {
                ok = false;
                detail = "one-point vs direct mismatch at n=" + std::to_string(n);
                break;
            }
            for (double theta : {0.25, 0.5, 0.75}) {
                if (is_all_set_homogeneous(snowflake(m, theta)).verdict != one.verdict) {
                    ok = false;
                    detail = "snowflake variance at theta=" + std::to_string(theta);
                    break;
                }
            }
            if (!ok) break;
        }
    }
    // pinned single cases
    auto check_case = [&](const DistanceMatrix& m, bool want, const char* name) {
        if (is_all_set_homogeneous(m).verdict != want) {
            ok = false;
            detail = std::string("case failed: ") + name;
        }
    };
    check_case(testsupport::from_pairs(3, {1, 2, 1}), false, "path (1,2,1)");
    for (int k = 2; k <= 5; ++k)
        check_case(testsupport::equilateral(k, 1.0), true, "equilateral simplex");
    {
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                int a = std::abs(i - j);
                d(i, j) = std::min(a, 5 - a);
            }
        check_case(DistanceMatrix(std::move(d)), true, "5-cycle arc metric");
    }
    check_case(make_ultrametric(2, 2, {1.0, 0.5}), true, "uniform ultrametric (2,2,(1,0.5))");
    report(6, "homogeneity one-point vs direct", ok, now() - t0,
           ok ? std::to_string(classes) + " classes" : detail);
}

void criterion7() {
    double t0 = now();
    bool ok = true;
    // all 2-colorings of the 15 pairs of K6
    std::vector<std::array<int, 2>> pr;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) pr.push_back({i, j});
    for (int mask = 0; mask < (1 << 15) && ok; ++mask) {
        EdgeColoring c;
        c.n = 6;
        c.color.assign(6, {});
        for (int i = 0; i < 6; ++i) c.color[i].resize(i);
        for (int k = 0; k < 15; ++k) {
            int col = (mask >> k) & 1;
            c.color[pr[k][1]][pr[k][0]] = col;
        }
        c.bins = {{0.0, 1.0}, {1.0, 2.0}};
        auto r = monochromatic_clique(c, 3);
        if (!r || r->subset.size() != 3) ok = false;
        else {
            for (std::size_t i = 0; i < 3 && ok; ++i)
                for (std::size_t j = i + 1; j < 3; ++j)
                    if (c.at(r->subset[i], r->subset[j]) != r->color) ok = false;
        }
    }
    // C5 on K5: no monochromatic triangle
    if (ok) {
        EdgeColoring c;
        c.n = 5;
        c.color.assign(5, {});
        for (int i = 0; i < 5; ++i) {
            c.color[i].resize(i);
            for (int j = 0; j < i; ++j) {
                int a = (i - j + 5) % 5;
                c.color[i][j] = std::min(a, 5 - a) == 1 ? 0 : 1;
            }
        }
        c.bins = {{0.0, 1.0}, {1.0, 2.0}};
        if (monochromatic_clique(c, 3).has_value()) ok = false;
    }
    report(7, "Ramsey triangle extraction", ok, now() - t0);
}

void criterion8() {
    double t0 = now();
    bool ok = true;
    std::string detail;
    try {
        DistanceMatrix m = load_matrix(std::string(DATA_DIR) + "/rpn_triples.json");
        const double third = std::acos(0.5);  // pi/3
        std::vector<int> a = {0, 1, 2}, b = {3, 4, 5};
        for (const auto& tr : {a, b})
            for (std::size_t i = 0; i < tr.size(); ++i)
                for (std::size_t j = i + 1; j < tr.size(); ++j)
                    if (std::fabs(m(tr[i], tr[j]) - third) > 1e-9) {
                        ok = false;
                        detail = "triple distances are not pi/3";
                    }
        auto pi = is_isometric(restrict(m, a), restrict(m, b));
        if (!pi) {
            ok = false;
            detail = "triples not isometric";
        } else {
            PartialMap p{a, {b[(*pi)[0]], b[(*pi)[1]], b[(*pi)[2]]}};
            if (extends_to_global(m, p).has_value()) {
                ok = false;
                detail = "triple map unexpectedly extends";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "projective-plane non-example", ok, now() - t0, detail);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all 8 criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
