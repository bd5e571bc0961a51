#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "tnet/clustering.hpp"
#include "tnet/linalg.hpp"
#include "tnet/rng.hpp"

using namespace tnet;

namespace {

DistanceCache scalar_cache(const std::vector<double>& xs) {
    const int n = static_cast<int>(xs.size());
    std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = std::abs(xs[i] - xs[j]);
    return DistanceCache(std::move(d), n);
}

// exhaustive 2-medoid search: minimum over all medoid pairs of the squared
// assignment cost
double best_two_medoid_cost(const DistanceCache& d) {
    double best = 1e300;
    for (int a = 0; a < d.size(); ++a)
        for (int b = a + 1; b < d.size(); ++b) {
            double cost = 0.0;
            for (int i = 0; i < d.size(); ++i) {
                const double da = d.at(i, a) * d.at(i, a);
                const double db = d.at(i, b) * d.at(i, b);
                cost += std::min(da, db);
            }
            best = std::min(best, cost);
        }
    return best;
}

}  // namespace

TEST_CASE("k_medoids with k equal to the item count") {
    const DistanceCache cache = scalar_cache({0.0, 1.0, 5.0, 9.0});
    const Partition p = k_medoids(cache, 4, 1);
    CHECK(p.objective == 0.0);
    std::vector<int> sorted = p.assignments;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("k_medoids splits well-separated blobs") {
    const DistanceCache cache = scalar_cache({0.0, 0.1, 10.0, 10.1});
    const Partition p = k_medoids(cache, 2, 7);
    CHECK(p.assignments[0] == p.assignments[1]);
    CHECK(p.assignments[2] == p.assignments[3]);
    CHECK(p.assignments[0] != p.assignments[2]);
    CHECK(p.objective == doctest::Approx(best_two_medoid_cost(cache)));
    // one medoid per blob
    REQUIRE(p.medoids.size() == 2);
    CHECK(((p.medoids[0] < 2) != (p.medoids[1] < 2)));
}

TEST_CASE("k_medoids matches exhaustive search on separated scalar sets") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> xs;
        for (int i = 0; i < 4; ++i) xs.push_back(rng.uniform(0.0, 1.0));
        for (int i = 0; i < 4; ++i) xs.push_back(rng.uniform(50.0, 51.0));
        const DistanceCache cache = scalar_cache(xs);
        const Partition p = k_medoids(cache, 2, trial);
        CHECK(p.objective == doctest::Approx(best_two_medoid_cost(cache)));
    }
    CHECK_THROWS_AS(k_medoids(scalar_cache({0.0, 1.0}), 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(k_medoids(scalar_cache({0.0, 1.0}), 0, 0), std::invalid_argument);
}

TEST_CASE("k_groups leaves a separated start unchanged") {
    const DistanceCache cache = scalar_cache({0.0, 0.2, 0.1, 10.0, 10.2, 10.1});
    const Partition p = k_groups(cache, 2, 1.0, 3);
    CHECK(p.assignments[0] == p.assignments[1]);
    CHECK(p.assignments[1] == p.assignments[2]);
    CHECK(p.assignments[3] == p.assignments[4]);
    CHECK(p.assignments[0] != p.assignments[3]);
}

TEST_CASE("within dispersion at rho=2 equals within-cluster sum of squares") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6 + static_cast<int>(rng.uniform_int(10));
        const int k = 2 + static_cast<int>(rng.uniform_int(3));
        std::vector<double> xs(n);
        for (auto& x : xs) x = rng.normal() * 3.0;
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[i] = i < k ? i : static_cast<int>(rng.uniform_int(k));
        const double w2 = within_dispersion(scalar_cache(xs), assign, k, 2.0);
        const double wcss = oracle::wcss(xs, assign, k);
        CHECK(w2 == doctest::Approx(wcss).epsilon(1e-9));
    }
}

TEST_CASE("k_groups never increases the dispersion of its start") {
    Rng rng(14);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<double> xs(12);
        for (auto& x : xs) x = rng.normal();
        const DistanceCache cache = scalar_cache(xs);
        const Partition init = k_medoids(cache, 3, trial);
        const double w0 = within_dispersion(cache, init.assignments, 3, 1.0);
        const Partition p = k_groups(cache, 3, 1.0, trial);
        CHECK(p.objective <= w0 + 1e-12);
        CHECK(p.objective ==
              doctest::Approx(within_dispersion(cache, p.assignments, 3, 1.0)).epsilon(1e-12));
        // every cluster stays non-empty
        std::vector<int> count(3, 0);
        for (const int c : p.assignments) ++count[c];
        for (const int c : count) CHECK(c > 0);
    }
    CHECK_THROWS_AS(k_groups(scalar_cache({0.0, 1.0, 2.0}), 2, 2.5, 0), std::invalid_argument);
}

TEST_CASE("affinity matrix basics") {
    // two items at distance d with tau=1: sigma_1 = sigma_2 = d
    const DistanceCache cache2 = scalar_cache({0.0, 3.0});
    const Affinity a2 = build_affinity(cache2, 1);
    CHECK(a2.at(0, 0) == 1.0);
    CHECK(a2.at(1, 1) == 1.0);
    CHECK(a2.at(0, 1) == doctest::Approx(std::exp(-1.0)));

    // scalars {0,1,3}: sigma = (1,1,2)
    const Affinity a3 = build_affinity(scalar_cache({0.0, 1.0, 3.0}), 1);
    CHECK(a3.at(0, 1) == doctest::Approx(std::exp(-1.0)));
    CHECK(a3.at(1, 2) == doctest::Approx(std::exp(-4.0 / 2.0)));
    CHECK(a3.at(0, 2) == doctest::Approx(std::exp(-9.0 / 2.0)));
    CHECK(a3.floored_bandwidths == 0);

    // duplicates force the bandwidth floor
    const Affinity dup = build_affinity(scalar_cache({1.0, 1.0, 5.0}), 1);
    CHECK(dup.floored_bandwidths == 2);
    CHECK(dup.at(0, 1) == 1.0);  // zero distance stays full affinity

    CHECK_THROWS_AS(build_affinity(cache2, 2), std::invalid_argument);
}

TEST_CASE("affinity is exactly invariant to distance scaling") {
    Rng rng(15);
    std::vector<double> xs(10);
    for (auto& x : xs) x = rng.uniform(0.0, 4.0);
    const DistanceCache cache = scalar_cache(xs);
    const Affinity base = build_affinity(cache, 3);
    for (const double c : {2.0, 0.5, 8.0}) {
        const Affinity scaled = build_affinity(cache.scaled(c), 3);
        for (int i = 0; i < base.n; ++i)
            for (int j = 0; j < base.n; ++j) CHECK(scaled.at(i, j) == base.at(i, j));
    }
}

TEST_CASE("spectral clustering recovers disconnected affinity blocks") {
    const DistanceCache cache = scalar_cache({0.0, 0.1, 0.2, 30.0, 30.1, 30.2});
    const Affinity aff = build_affinity(cache, 2);
    const Partition p = spectral_cluster(aff, 2, 9);
    CHECK(rand_index(p.assignments, {0, 0, 0, 1, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("normalized Laplacian eigenvalues lie in [0, 2]") {
    Rng rng(16);
    std::vector<double> xs(12);
    for (auto& x : xs) x = rng.normal() * 2.0;
    const Affinity aff = build_affinity(scalar_cache(xs), 3);
    SymMatrix lap(aff.n);
    std::vector<double> deg(aff.n, 0.0);
    for (int i = 0; i < aff.n; ++i)
        for (int j = 0; j < aff.n; ++j) deg[i] += aff.at(i, j);
    for (int i = 0; i < aff.n; ++i)
        for (int j = 0; j < aff.n; ++j)
            lap.at(i, j) = (i == j ? 1.0 : 0.0) - aff.at(i, j) / std::sqrt(deg[i] * deg[j]);
    const auto eig = sym_eigen(lap);
    for (const double v : eig.values) {
        CHECK(v >= -1e-10);
        CHECK(v <= 2.0 + 1e-10);
    }
}

TEST_CASE("clustering methods are deterministic per seed") {
    Rng rng(17);
    std::vector<double> xs(14);
    for (auto& x : xs) x = rng.normal();
    const DistanceCache cache = scalar_cache(xs);
    for (const uint64_t seed : {0ULL, 5ULL}) {
        const Partition m1 = k_medoids(cache, 3, seed), m2 = k_medoids(cache, 3, seed);
        CHECK(m1.assignments == m2.assignments);
        const Partition g1 = k_groups(cache, 3, 1.0, seed), g2 = k_groups(cache, 3, 1.0, seed);
        CHECK(g1.assignments == g2.assignments);
        const Affinity aff = build_affinity(cache, 4);
        const Partition s1 = spectral_cluster(aff, 3, seed), s2 = spectral_cluster(aff, 3, seed);
        CHECK(s1.assignments == s2.assignments);
    }
}

TEST_CASE("rand index") {
    CHECK(rand_index({0, 1, 2, 0}, {0, 1, 2, 0}) == 1.0);
    CHECK(rand_index({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);  // label permutation
    CHECK(rand_index({0, 0, 1, 1}, {0, 1, 1, 1}) == doctest::Approx(0.5));
    CHECK(rand_index({0, 0, 1, 1}, {0, 1, 1, 1}) ==
          rand_index({0, 1, 1, 1}, {0, 0, 1, 1}));
    CHECK_THROWS_AS(rand_index({0, 1}, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("kmeans on plain points") {
    std::vector<std::vector<double>> pts = {{0.0, 0.0}, {0.1, 0.0}, {5.0, 5.0}, {5.1, 5.0}};
    const Partition p = kmeans(pts, 2, 3);
    CHECK(p.assignments[0] == p.assignments[1]);
    CHECK(p.assignments[2] == p.assignments[3]);
    CHECK(p.assignments[0] != p.assignments[2]);
}
