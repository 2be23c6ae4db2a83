#include "metricgeo/ramsey.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace metricgeo {

namespace {

using Mask = std::uint64_t;

constexpr int kCliqueCap = 40;

Mask bit(int v) { return Mask{1} << v; }

// Tomita-style branch and bound with a greedy coloring bound.
void expand_clique(const std::vector<Mask>& adj, Mask p, int size, int& best) {
    if (p == 0) {
        best = std::max(best, size);
        return;
    }
    std::vector<int> order;
    std::vector<int> bound;
    Mask q = p;
    int colors = 0;
    while (q) {
        ++colors;
        Mask cand = q;
        while (cand) {
            int v = std::countr_zero(cand);
            cand &= ~(bit(v) | adj[v]);
            q &= ~bit(v);
            order.push_back(v);
            bound.push_back(colors);
        }
    }
    Mask rest = p;
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
        if (size + bound[i] <= best) return;
        int v = order[i];
        expand_clique(adj, rest & adj[v], size + 1, best);
        rest &= ~bit(v);
    }
}

int max_clique_size(const std::vector<Mask>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 0) return 0;
    int best = 0;
    expand_clique(adj, (n == 64 ? ~Mask{0} : (bit(n) - 1)), 0, best);
    return best;
}

// lexicographically least clique of exactly the given size
bool lex_clique(const std::vector<Mask>& adj, int want, int from, Mask allowed,
                std::vector<int>& cur) {
    if (static_cast<int>(cur.size()) == want) return true;
    const int n = static_cast<int>(adj.size());
    for (int v = from; v < n; ++v) {
        if (!(allowed & bit(v))) continue;
        if (static_cast<int>(cur.size()) + std::popcount(allowed >> v) < want) return false;
        cur.push_back(v);
        if (lex_clique(adj, want, v + 1, allowed & adj[v], cur)) return true;
        cur.pop_back();
    }
    return false;
}

} // namespace

EdgeColoring bin_distances(const DistanceMatrix& m, double delta, const ToleranceConfig& cfg) {
    if (!(delta > 0.0)) throw std::invalid_argument("bin width must be positive");
    const int n = m.size();
    EdgeColoring out;
    out.n = n;
    out.color.resize(n);
    std::vector<long long> raw_ids;
    std::vector<std::vector<long long>> raw(n);
    for (int i = 0; i < n; ++i) {
        raw[i].resize(i);
        for (int j = 0; j < i; ++j) {
            double d = m(i, j);
            long long c = static_cast<long long>(
                std::floor((d + cfg.rel_tol * std::max(1.0, d)) / delta));
            raw[i][j] = c;
            raw_ids.push_back(c);
        }
    }
    std::sort(raw_ids.begin(), raw_ids.end());
    raw_ids.erase(std::unique(raw_ids.begin(), raw_ids.end()), raw_ids.end());
    for (long long c : raw_ids)
        out.bins.push_back({static_cast<double>(c) * delta, static_cast<double>(c + 1) * delta});
    for (int i = 0; i < n; ++i) {
        out.color[i].resize(i);
        for (int j = 0; j < i; ++j) {
            auto it = std::lower_bound(raw_ids.begin(), raw_ids.end(), raw[i][j]);
            out.color[i][j] = static_cast<int>(it - raw_ids.begin());
        }
    }
    return out;
}

std::optional<CliqueResult> monochromatic_clique(const EdgeColoring& c,
                                                 std::optional<int> size_target) {
    const int n = c.n;
    if (n > kCliqueCap) throw std::invalid_argument("clique search capped at 40 points");
    if (n == 0) return std::nullopt;
    const int ncolors = static_cast<int>(c.bins.size());
    if (n == 1 || ncolors == 0) {
        if (size_target && *size_target > 1) return std::nullopt;
        return CliqueResult{-1, {0}};
    }
    auto adjacency = [&](int col) {
        std::vector<Mask> adj(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && c.at(i, j) == col) adj[i] |= bit(j);
        return adj;
    };
    int best_size = 0, best_color = -1;
    for (int col = 0; col < ncolors; ++col) {
        auto adj = adjacency(col);
        int sz = std::max(1, max_clique_size(adj));
        if (size_target) {
            if (sz >= *size_target) {
                std::vector<int> cur;
                Mask all = (n == 64 ? ~Mask{0} : (bit(n) - 1));
                lex_clique(adj, *size_target, 0, all, cur);
                return CliqueResult{col, cur};
            }
            continue;
        }
        if (sz > best_size) {
            best_size = sz;
            best_color = col;
        }
    }
    if (size_target) return std::nullopt;
    auto adj = adjacency(best_color);
    std::vector<int> cur;
    Mask all = (static_cast<int>(adj.size()) == 64 ? ~Mask{0} : (bit(n) - 1));
    if (!lex_clique(adj, best_size, 0, all, cur)) cur = {0};
    return CliqueResult{best_color, cur};
}

std::vector<int> equilateral_subset(const DistanceMatrix& m, double r, double tol,
                                    const ToleranceConfig& cfg) {
    if (!(r > 0.0) || tol < 0.0) throw std::invalid_argument("need r > 0 and tol >= 0");
    const int n = m.size();
    if (n > kCliqueCap) throw std::invalid_argument("clique search capped at 40 points");
    const double slack = tol + cfg.rel_tol * std::max(1.0, m.scale());
    std::vector<Mask> adj(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && std::fabs(m(i, j) - r) <= slack) adj[i] |= bit(j);
    int best = std::max(1, max_clique_size(adj));
    std::vector<int> cur;
    Mask all = (n == 64 ? ~Mask{0} : (bit(n) - 1));
    if (!lex_clique(adj, best, 0, all, cur)) cur = {0};
    return cur;
}

std::vector<int> maximal_equilateral_extend(const DistanceMatrix& m, double r,
                                            const std::vector<int>& seed, double tol,
                                            const ToleranceConfig& cfg) {
    const int n = m.size();
    const double slack = tol + cfg.rel_tol * std::max(1.0, m.scale());
    std::vector<bool> in(n, false);
    for (int x : seed) {
        if (x < 0 || x >= n) throw std::invalid_argument("seed index out of range");
        if (in[x]) throw std::invalid_argument("seed indices must be distinct");
        in[x] = true;
    }
    for (std::size_t i = 0; i < seed.size(); ++i)
        for (std::size_t j = i + 1; j < seed.size(); ++j)
            if (std::fabs(m(seed[i], seed[j]) - r) > slack)
                throw std::invalid_argument("seed is not pairwise at distance r");
    std::vector<int> out = seed;
    bool grown = true;
    while (grown) {
        grown = false;
        for (int cand = 0; cand < n; ++cand) {
            if (in[cand]) continue;
            bool ok = true;
            for (int x : out)
                if (std::fabs(m(cand, x) - r) > slack) { ok = false; break; }
            if (ok) {
                out.push_back(cand);
                in[cand] = true;
                grown = true;
                break;  // restart from the lowest index
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace metricgeo
