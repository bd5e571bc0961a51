#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tnet/graph.hpp"
#include "tnet/netgen.hpp"
#include "tnet/rng.hpp"

using namespace tnet;

namespace {

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

}  // namespace

TEST_CASE("gen_er endpoints") {
    const Graph full = gen_er(4, 1.0, 7);
    CHECK(full.edge_count() == 6);
    const Graph empty = gen_er(10, 0.0, 7);
    CHECK(empty.edge_count() == 0);
    CHECK_THROWS_AS(gen_er(10, 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_er(10, -0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_er(0, 0.5, 0), std::invalid_argument);
}

TEST_CASE("gen_er seeded reproducibility and binomial sanity") {
    const Graph a = gen_er(100, 0.1, 42);
    const Graph b = gen_er(100, 0.1, 42);
    CHECK(a == b);
    const Graph c = gen_er(100, 0.1, 43);
    CHECK_FALSE(a == c);

    // 4950 pairs at p = 0.1: mean 495, sd ~ 21.1
    const double sd = std::sqrt(4950 * 0.1 * 0.9);
    CHECK(std::abs(a.edge_count() - 495.0) < 4.0 * sd);
}

TEST_CASE("gen_sbm structure") {
    const Graph g = gen_sbm({2, 2}, 1.0, 0.0, 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 3));

    CHECK_THROWS_AS(gen_sbm({}, 0.5, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_sbm({0, 2}, 0.5, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_sbm({2, 2}, 1.5, 0.5, 0), std::invalid_argument);
}

TEST_CASE("gen_sbm with one block equals gen_er") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(gen_sbm({3}, 0.4, 0.9, seed) == gen_er(3, 0.4, seed));
        CHECK(gen_sbm({12}, 0.25, 0.0, seed) == gen_er(12, 0.25, seed));
    }
}

TEST_CASE("gen_sbm block-wise edge fractions") {
    const Graph g = gen_sbm({50, 50}, 0.8, 0.1, 11);
    int within = 0, cross = 0;
    for (const auto& [i, j] : g.edges()) {
        const bool same = (i < 50) == (j < 50);
        (same ? within : cross) += 1;
    }
    const double within_pairs = 2.0 * 50 * 49 / 2.0;
    const double cross_pairs = 50.0 * 50.0;
    CHECK(std::abs(within - 0.8 * within_pairs) < 4.0 * std::sqrt(within_pairs * 0.8 * 0.2));
    CHECK(std::abs(cross - 0.1 * cross_pairs) < 4.0 * std::sqrt(cross_pairs * 0.1 * 0.9));
}

TEST_CASE("gen_sbm with p_high == p_low matches ER in distribution") {
    // two-sample chi-square on edge counts over repeated draws
    const int draws = 300, n = 30;
    const double p = 0.3;
    const double pairs = n * (n - 1) / 2.0;
    const double mean = pairs * p, sd = std::sqrt(pairs * p * (1 - p));
    const double cuts[5] = {mean - 1.5 * sd, mean - 0.5 * sd, mean, mean + 0.5 * sd,
                            mean + 1.5 * sd};
    auto bin_of = [&](int count) {
        int b = 0;
        while (b < 5 && count > cuts[b]) ++b;
        return b;
    };
    double o1[6] = {0}, o2[6] = {0};
    for (int t = 0; t < draws; ++t) {
        o1[bin_of(gen_er(n, p, Rng::derive(1000, t)).edge_count())] += 1;
        o2[bin_of(gen_sbm({10, 10, 10}, p, p, Rng::derive(2000, t)).edge_count())] += 1;
    }
    double chi2 = 0.0;
    for (int b = 0; b < 6; ++b)
        if (o1[b] + o2[b] > 0) chi2 += (o1[b] - o2[b]) * (o1[b] - o2[b]) / (o1[b] + o2[b]);
    CHECK(chi2 < 20.5);  // chi-square_5 0.999 quantile
}

TEST_CASE("descriptors on K4") {
    const auto r = descriptors(complete_graph(4));
    CHECK(r.density == doctest::Approx(1.0));
    CHECK(r.diameter == doctest::Approx(1.0));
    CHECK(r.average_degree == doctest::Approx(3.0));
    CHECK(r.transitivity == doctest::Approx(1.0));
    CHECK(r.degree_centrality == doctest::Approx(1.0));
}

TEST_CASE("descriptors on the 3-path") {
    const auto r = descriptors(path_graph(3));
    CHECK(r.diameter == doctest::Approx(2.0));
    CHECK(r.avg_shortest_path == doctest::Approx(4.0 / 3.0));
    CHECK(r.transitivity == doctest::Approx(0.0));
}

TEST_CASE("descriptors on two disjoint triangles") {
    Graph g(6);
    for (int base : {0, 3}) {
        g.add_edge(base, base + 1);
        g.add_edge(base, base + 2);
        g.add_edge(base + 1, base + 2);
    }
    const auto r = descriptors(g);
    CHECK(r.transitivity == doctest::Approx(1.0));
    CHECK(r.density == doctest::Approx(6.0 / 15.0));
    CHECK(r.diameter == doctest::Approx(1.0));  // largest component
}

TEST_CASE("descriptors on the empty graph") {
    const auto r = descriptors(Graph(5));
    CHECK(r.density == 0.0);
    CHECK(r.diameter == 0.0);
    CHECK(r.average_degree == 0.0);
}

TEST_CASE("density times pair count recovers the edge count exactly") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = gen_er(40, 0.23, seed);
        const double pairs = 40.0 * 39.0 / 2.0;
        CHECK(descriptors(g).density * pairs == doctest::Approx(g.edge_count()).epsilon(1e-12));
    }
}

TEST_CASE("shortest paths") {
    const auto k3 = complete_graph(3).shortest_paths();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(k3[i][j] == (i == j ? 0 : 1));

    const auto path = path_graph(3).shortest_paths();
    CHECK(path[0][2] == 2);
    CHECK(path[2][0] == 2);

    Graph two(4);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    const auto d = two.shortest_paths();
    CHECK(d[0][2] == -1);
    CHECK(d[1][3] == -1);
    CHECK(d[0][1] == 1);
}

TEST_CASE("shortest paths satisfy the triangle inequality") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = gen_er(25, 0.15, seed + 50);
        const auto d = g.shortest_paths();
        for (int i = 0; i < 25; ++i)
            for (int j = 0; j < 25; ++j)
                for (int k = 0; k < 25; ++k) {
                    if (d[i][j] < 0 || d[j][k] < 0 || d[i][k] < 0) continue;
                    CHECK(d[i][k] <= d[i][j] + d[j][k]);
                }
    }
}

TEST_CASE("graph edge-list IO round trip") {
    const Graph g = gen_er(15, 0.4, 9);
    std::stringstream buf;
    g.write(buf);
    const Graph back = Graph::read(buf);
    CHECK(g == back);

    std::stringstream bad("m=3\n");
    CHECK_THROWS(Graph::read(bad));
}

TEST_CASE("graph invariants") {
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
    g.add_edge(2, 0);  // stored once, undirected
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    g.add_edge(0, 2);
    CHECK(g.edge_count() == 1);
}
