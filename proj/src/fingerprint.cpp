#include "metricgeo/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace metricgeo {

namespace {

std::vector<double> tuple_vector(const DistanceMatrix& m, const std::vector<int>& tuple) {
    std::vector<double> out;
    const int k = static_cast<int>(tuple.size());
    out.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) out.push_back(m(tuple[i], tuple[j]));
    return out;
}

} // namespace

FingerprintSet fingerprint_finite(const DistanceMatrix& m, int n, FingerprintMode mode,
                                  const ToleranceConfig& cfg) {
    if (n < 2) throw std::invalid_argument("fingerprint order must be >= 2");
    const int sz = m.size();
    if (mode == FingerprintMode::Injective && n > sz)
        throw std::invalid_argument("injective mode needs n <= point count");
    double work = 1.0;
    for (int i = 0; i < n; ++i) work *= sz;
    if (work > 2e6) throw std::invalid_argument("fingerprint enumeration too large");

    FingerprintSet out;
    out.n = n;
    std::vector<int> tuple(n, 0);
    const bool injective = (mode == FingerprintMode::Injective);
    while (true) {
        bool use = true;
        if (injective) {
            for (int i = 0; i < n && use; ++i)
                for (int j = i + 1; j < n && use; ++j)
                    if (tuple[i] == tuple[j]) use = false;
        }
        if (use) out.vectors.push_back(tuple_vector(m, tuple));
        int pos = n - 1;
        while (pos >= 0 && ++tuple[pos] == sz) tuple[pos--] = 0;
        if (pos < 0) break;
    }
    std::sort(out.vectors.begin(), out.vectors.end());
    const double dedup_tol = cfg.rel_tol * std::max(1.0, m.scale());
    std::vector<std::vector<double>> dedup;
    for (auto& v : out.vectors) {
        if (!dedup.empty()) {
            bool same = dedup.back().size() == v.size();
            for (std::size_t i = 0; same && i < v.size(); ++i)
                if (std::fabs(dedup.back()[i] - v[i]) > dedup_tol) same = false;
            if (same) continue;
        }
        dedup.push_back(std::move(v));
    }
    out.vectors = std::move(dedup);
    return out;
}

DistanceMatrix vector_to_matrix(const FingerprintVector& v, MetricKind kind) {
    return DistanceMatrix::from_pairs(v.n, v.entries, kind);
}

MemberResult member(const FingerprintVector& v, const ModelSpace& space,
                    const ToleranceConfig& cfg) {
    DistanceMatrix m = vector_to_matrix(v, MetricKind::Pseudometric);
    auto report = validate_metric(m, cfg);
    if (!report.ok) return {false, "not a pseudometric: " + report.axiom};
    auto res = embed(m, space, cfg);
    MemberResult out;
    out.member = res.embeddable;
    if (res.certificate) out.certificate = *res.certificate;
    return out;
}

FingerprintVector comb_vector(int m_valence, int k, double eps) {
    if (m_valence < 3) throw std::invalid_argument("comb family needs valence >= 3");
    if (k < 2) throw std::invalid_argument("comb family needs k >= 2");
    if (!(eps > 0.0 && eps < 1.0 / (2.0 * k)))
        throw std::invalid_argument("eps must lie in (0, 1/(2k))");
    FingerprintVector v;
    v.n = k;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) v.entries.push_back(1.0 - 2.0 * eps * i);
    return v;
}

FingerprintVector canonicalize(const FingerprintVector& v) {
    if (v.n > 8) throw std::invalid_argument("canonicalization capped at 8 points");
    DistanceMatrix m = vector_to_matrix(v, MetricKind::Pseudometric);
    std::vector<int> perm(v.n);
    std::iota(perm.begin(), perm.end(), 0);
    FingerprintVector best = v;
    bool first = true;
    do {
        std::vector<double> cand;
        cand.reserve(v.entries.size());
        for (int i = 0; i < v.n; ++i)
            for (int j = i + 1; j < v.n; ++j) cand.push_back(m(perm[i], perm[j]));
        if (first || cand < best.entries) {
            best.entries = cand;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

NonclosedReport nonclosed_demo(int m_valence, int k, const std::vector<double>& eps_list,
                               const ToleranceConfig& cfg) {
    NonclosedReport rep;
    rep.valence = m_valence;
    rep.k = k;
    rep.eps_list = eps_list;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0 / (2.0 * k)))
            throw std::invalid_argument("eps values must lie in (0, 1/(2k))");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("eps values must be strictly decreasing");
    }
    const ModelSpace space = TreeValence{m_valence};
    for (double eps : eps_list) {
        FingerprintVector v = comb_vector(std::max(3, m_valence), k, eps);
        rep.members.push_back(member(v, space, cfg).member);
        // sup-norm distance to the all-ones limit: max 2*eps*min(i,j) = 2*eps*(k-1)
        rep.gaps.push_back(2.0 * eps * (k - 1));
    }
    FingerprintVector limit;
    limit.n = k;
    limit.entries.assign(static_cast<std::size_t>(k) * (k - 1) / 2, 1.0);
    rep.limit_member = member(limit, space, cfg).member;
    bool all_members = std::all_of(rep.members.begin(), rep.members.end(), [](bool b) { return b; });
    rep.gap_exhibited = all_members && !rep.limit_member;
    rep.note = rep.gap_exhibited
                   ? "limit point of member vectors lies outside the fingerprint"
                   : "no gap exhibited";
    return rep;
}

} // namespace metricgeo
