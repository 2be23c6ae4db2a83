#pragma once

#include <string>
#include <vector>

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/embed.hpp"

namespace metricgeo {

/// n-point configuration distances in fixed pair order
/// (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n).
struct FingerprintVector {
    int n = 0;
    std::vector<double> entries;
};

struct FingerprintSet {
    int n = 0;
    std::vector<std::vector<double>> vectors;  // sorted, deduplicated
};

enum class FingerprintMode { Tuples, Injective };

/// All n-point configuration vectors realized in m. Tuples mode allows
/// repeated points (pseudometric vectors); injective mode does not.
FingerprintSet fingerprint_finite(const DistanceMatrix& m, int n, FingerprintMode mode,
                                  const ToleranceConfig& cfg = {});

DistanceMatrix vector_to_matrix(const FingerprintVector& v, MetricKind kind);

struct MemberResult {
    bool member = false;
    std::string certificate;
};

/// Does the configuration occur in the given model space?
MemberResult member(const FingerprintVector& v, const ModelSpace& space,
                    const ToleranceConfig& cfg = {});

/// Near-equilateral comb family: d(x_i, x_j) = 1 - 2*eps*min(i,j) (1-based),
/// realizable in any tree of valence >= 3.
FingerprintVector comb_vector(int m_valence, int k, double eps);

/// Lexicographically least entry vector over all point relabelings.
FingerprintVector canonicalize(const FingerprintVector& v);

struct NonclosedReport {
    int valence = 0;
    int k = 0;
    std::vector<double> eps_list;
    std::vector<bool> members;        // per-eps membership of the comb vector
    bool limit_member = false;        // membership of the all-ones limit
    std::vector<double> gaps;         // sup-norm distance of each comb vector to the limit
    bool gap_exhibited = false;       // a limit point outside the set was shown
    std::string note;
};

/// Exhibit (or fail to exhibit) a fingerprint limit point outside the set.
NonclosedReport nonclosed_demo(int m_valence, int k, const std::vector<double>& eps_list,
                               const ToleranceConfig& cfg = {});

} // namespace metricgeo
