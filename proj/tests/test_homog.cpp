#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "metricgeo/homog.hpp"
#include "support/generators.hpp"

using namespace metricgeo;
using testsupport::equilateral;
using testsupport::from_pairs;

namespace {

// arc metric of the n-cycle with unit steps
DistanceMatrix cycle_metric(int n) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int a = std::abs(i - j);
            d(i, j) = std::min(a, n - a);
        }
    return DistanceMatrix(std::move(d));
}

} // namespace

TEST_CASE("isometry_group sizes") {
    CHECK(isometry_group(equilateral(3, 1.0)).size() == 6);

    auto path = from_pairs(3, {1, 2, 1});
    auto g = isometry_group(path);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == std::vector<int>{0, 1, 2});
    CHECK(g[1] == std::vector<int>{2, 1, 0});

    CHECK(isometry_group(cycle_metric(4)).size() == 8);  // dihedral
}

TEST_CASE("isometry_group satisfies the group axioms") {
    auto g = isometry_group(cycle_metric(5));
    CHECK(g.size() == 10);
    // identity present
    std::vector<int> id = {0, 1, 2, 3, 4};
    CHECK(std::find(g.begin(), g.end(), id) != g.end());
    // closed under composition and inverse
    for (const auto& a : g) {
        std::vector<int> inv(5);
        for (int i = 0; i < 5; ++i) inv[a[i]] = i;
        CHECK(std::find(g.begin(), g.end(), inv) != g.end());
        for (const auto& b : g) {
            std::vector<int> ab(5);
            for (int i = 0; i < 5; ++i) ab[i] = a[b[i]];
            CHECK(std::find(g.begin(), g.end(), ab) != g.end());
        }
    }
}

TEST_CASE("extends_to_global") {
    auto path = from_pairs(3, {1, 2, 1});
    auto id = extends_to_global(path, {{0, 1}, {0, 1}});
    REQUIRE(id.has_value());
    CHECK(*id == std::vector<int>{0, 1, 2});

    // end -> middle cannot extend
    CHECK_FALSE(extends_to_global(path, {{0}, {1}}).has_value());

    // any injective pair map on the equilateral 4 extends
    auto e4 = equilateral(4, 1.0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            CHECK(extends_to_global(e4, {{0, 1}, {a, b}}).has_value());
        }

    // non-preserving map is an input error
    CHECK_THROWS_AS(extends_to_global(path, {{0, 1}, {0, 2}}), std::invalid_argument);
}

TEST_CASE("is_k_homogeneous") {
    for (int k = 1; k <= 4; ++k) CHECK(is_k_homogeneous(equilateral(4, 1.0), k).verdict);

    auto path = from_pairs(3, {1, 2, 1});
    auto r = is_k_homogeneous(path, 1);
    CHECK_FALSE(r.verdict);
    REQUIRE(r.witness.has_value());
    CHECK_FALSE(extends_to_global(path, *r.witness).has_value());

    CHECK(is_k_homogeneous(cycle_metric(5), 5).verdict);
}

TEST_CASE("k-homogeneity is monotone in k") {
    auto m = from_pairs(4, {1, 2, 3, 1, 2, 1});  // path 0-1-2-3
    bool failed = false;
    for (int k = 1; k <= 4; ++k) {
        auto r = is_k_homogeneous(m, k);
        if (failed) CHECK_FALSE(r.verdict);
        if (!r.verdict) failed = true;
    }
    CHECK(failed);
}

TEST_CASE("is_all_set_homogeneous examples") {
    CHECK(is_all_set_homogeneous(make_ultrametric(2, 2, {1.0, 0.5})).verdict);
    CHECK_FALSE(is_all_set_homogeneous(from_pairs(3, {1, 2, 1})).verdict);
    CHECK(is_all_set_homogeneous(equilateral(5, 1.0)).verdict);
    CHECK(is_all_set_homogeneous(cycle_metric(5)).verdict);
}

TEST_CASE("snowflaking preserves the verdict") {
    std::vector<DistanceMatrix> spaces = {
        make_ultrametric(2, 2, {1.0, 0.5}), from_pairs(3, {1, 2, 1}), equilateral(4, 1.0),
        cycle_metric(5), from_pairs(4, {1, 2, 3, 1, 2, 1})};
    for (const auto& m : spaces) {
        bool base = is_all_set_homogeneous(m).verdict;
        for (double theta : {0.25, 0.5, 0.75})
            CHECK(is_all_set_homogeneous(snowflake(m, theta)).verdict == base);
    }
}

TEST_CASE("one-point extension equals the direct definition (sampled)") {
    std::mt19937 rng(83);
    std::uniform_int_distribution<int> val(1, 4);
    int done = 0;
    while (done < 120) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int pairs = n * (n - 1) / 2;
        std::vector<double> e(pairs);
        for (auto& x : e) x = val(rng);
        DistanceMatrix m = DistanceMatrix::from_pairs(n, e);
        if (!validate_metric(m).ok) continue;
        ++done;
        auto a = is_all_set_homogeneous(m);
        auto b = is_all_set_homogeneous_direct(m);
        CAPTURE(done);
        REQUIRE(a.verdict == b.verdict);
        if (!a.verdict) {
            REQUIRE(a.witness.has_value());
            CHECK_FALSE(extends_to_global(m, *a.witness).has_value());
        }
    }
}

TEST_CASE("failure witnesses are genuinely non-extendable") {
    auto m = from_pairs(4, {1, 2, 3, 1, 2, 1});
    auto r = is_all_set_homogeneous(m);
    CHECK_FALSE(r.verdict);
    REQUIRE(r.witness.has_value());
    CHECK_FALSE(extends_to_global(m, *r.witness).has_value());
}
