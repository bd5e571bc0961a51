#include "tnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "tnet/rng.hpp"

namespace tnet {

const char* DescriptorRecord::csv_header() {
    return "average_degree,avg_shortest_path,betweenness,closeness,degree_centrality,"
           "density,diameter,modularity,transitivity";
}

void DescriptorRecord::write_csv_row(std::ostream& out) const {
    const double vals[] = {average_degree, avg_shortest_path, betweenness,  closeness,
                           degree_centrality, density,         diameter,    modularity,
                           transitivity};
    for (size_t i = 0; i < 9; ++i) {
        if (i) out << ',';
        out << vals[i];
    }
    out << '\n';
}

Graph gen_er(int n, double p, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_er: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_er: p must be in [0,1]");
    Rng rng(seed);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) g.add_edge(i, j);
    return g;
}

std::vector<int> even_blocks(int n, int k) {
    std::vector<int> sizes(k, n / k);
    for (int i = 0; i < n % k; ++i) ++sizes[i];
    return sizes;
}

Graph gen_sbm(const std::vector<int>& block_sizes, double p_high, double p_low, uint64_t seed) {
    if (block_sizes.empty()) throw std::invalid_argument("gen_sbm: block list must be non-empty");
    for (const int b : block_sizes)
        if (b < 1) throw std::invalid_argument("gen_sbm: block sizes must be >= 1");
    if (p_high < 0.0 || p_high > 1.0 || p_low < 0.0 || p_low > 1.0)
        throw std::invalid_argument("gen_sbm: probabilities must be in [0,1]");

    const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    std::vector<int> block_of(n);
    int node = 0;
    for (size_t b = 0; b < block_sizes.size(); ++b)
        for (int i = 0; i < block_sizes[b]; ++i) block_of[node++] = static_cast<int>(b);

    Rng rng(seed);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double p = block_of[i] == block_of[j] ? p_high : p_low;
            if (rng.uniform() < p) g.add_edge(i, j);
        }
    return g;
}

namespace {

std::vector<int> component_labels(const Graph& g, int& component_count) {
    const auto adj = g.adjacency_lists();
    std::vector<int> comp(g.n(), -1);
    component_count = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = component_count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = component_count;
                    stack.push_back(w);
                }
        }
        ++component_count;
    }
    return comp;
}

// Brandes betweenness for unweighted graphs; returns per-node scores with
// each unordered pair counted once.
std::vector<double> betweenness_scores(const Graph& g) {
    const int n = g.n();
    const auto adj = g.adjacency_lists();
    std::vector<double> bc(n, 0.0);
    std::vector<int> dist(n), sigma(n), queue(n);
    std::vector<double> delta(n);
    std::vector<std::vector<int>> preds(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        int head = 0, tail = 0;
        dist[s] = 0;
        sigma[s] = 1;
        queue[tail++] = s;
        std::vector<int> order;
        while (head < tail) {
            const int u = queue[head++];
            order.push_back(u);
            for (const int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue[tail++] = w;
                }
                if (dist[w] == dist[u] + 1) {
                    sigma[w] += sigma[u];
                    preds[w].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (const int u : preds[w])
                delta[u] += (sigma[u] / static_cast<double>(sigma[w])) * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    for (auto& v : bc) v *= 0.5;  // each pair (s,t) visited twice
    return bc;
}

// Greedy agglomerative modularity maximization: start with singletons, merge
// the community pair with the largest positive gain until none remains.
double greedy_modularity(const Graph& g) {
    const int m = g.edge_count();
    if (m == 0) return 0.0;
    const int n = g.n();
    std::vector<int> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> deg_sum(n, 0.0);
    const auto adj = g.adjacency_lists();
    for (int i = 0; i < n; ++i) deg_sum[i] = static_cast<double>(adj[i].size());

    // e[c][d]: number of edges between communities c and d (intra counted once)
    std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
    for (const auto& [i, j] : g.edges()) {
        e[i][j] += 1.0;
        e[j][i] += 1.0;
    }
    std::vector<bool> alive(n, true);
    const double m2 = 2.0 * m;

    for (;;) {
        double best_gain = 0.0;
        int best_a = -1, best_b = -1;
        for (int a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!alive[b] || e[a][b] == 0.0) continue;
                // dQ of merging a,b: e_ab/m - 2 (deg_a/2m)(deg_b/2m)
                const double gain = e[a][b] / m - 2.0 * (deg_sum[a] / m2) * (deg_sum[b] / m2);
                if (gain > best_gain + 1e-15) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) break;
        // merge b into a
        deg_sum[best_a] += deg_sum[best_b];
        for (int c = 0; c < n; ++c) {
            if (!alive[c] || c == best_a || c == best_b) continue;
            e[best_a][c] += e[best_b][c];
            e[c][best_a] = e[best_a][c];
        }
        e[best_a][best_a] += e[best_b][best_b] + e[best_a][best_b];
        alive[best_b] = false;
    }

    double q = 0.0;
    for (int c = 0; c < n; ++c) {
        if (!alive[c]) continue;
        q += e[c][c] / m - (deg_sum[c] / m2) * (deg_sum[c] / m2);
    }
    return q;
}

}  // namespace

DescriptorRecord descriptors(const Graph& g) {
    DescriptorRecord r;
    const int n = g.n();
    if (n < 2 || g.edge_count() == 0) {
        return r;  // all zeros, diameter reported as 0
    }
    const auto adj = g.adjacency_lists();
    const int m = g.edge_count();

    r.average_degree = 2.0 * m / n;
    r.density = g.density();

    double dc = 0.0;
    for (int i = 0; i < n; ++i) dc += static_cast<double>(adj[i].size()) / (n - 1);
    r.degree_centrality = dc / n;

    // transitivity = 3 * triangles / connected triples
    long long triangles = 0, triples = 0;
    for (int i = 0; i < n; ++i) {
        const auto& nb = adj[i];
        const long long d = static_cast<long long>(nb.size());
        triples += d * (d - 1) / 2;
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b)
                if (g.has_edge(nb[a], nb[b])) ++triangles;
    }
    triangles /= 3;
    r.transitivity = triples > 0 ? 3.0 * triangles / static_cast<double>(triples) : 0.0;

    const auto dist = g.shortest_paths();

    int comp_count = 0;
    const auto comp = component_labels(g, comp_count);
    std::vector<int> comp_size(comp_count, 0);
    for (int i = 0; i < n; ++i) ++comp_size[comp[i]];
    int lcc = 0;
    for (int c = 1; c < comp_count; ++c)
        if (comp_size[c] > comp_size[lcc]) lcc = c;

    // diameter and mean shortest path over the largest component
    double sum_d = 0.0;
    long long pair_count = 0;
    int diameter = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] != lcc) continue;
        for (int j = i + 1; j < n; ++j) {
            if (comp[j] != lcc) continue;
            const int d = dist[i][j];
            sum_d += d;
            ++pair_count;
            diameter = std::max(diameter, d);
        }
    }
    r.diameter = diameter;
    r.avg_shortest_path = pair_count > 0 ? sum_d / pair_count : 0.0;

    // closeness: per node over its own component, zero for singletons
    double closeness = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        int reach = 0;
        for (int j = 0; j < n; ++j)
            if (j != i && dist[i][j] >= 0) {
                s += dist[i][j];
                ++reach;
            }
        if (reach > 0 && s > 0.0) closeness += reach / s;
    }
    r.closeness = closeness / n;

    const auto bc = betweenness_scores(g);
    double bsum = 0.0;
    for (const double v : bc) bsum += v;
    const double norm = n > 2 ? 0.5 * (n - 1.0) * (n - 2.0) : 1.0;
    r.betweenness = bsum / n / norm;

    r.modularity = greedy_modularity(g);
    return r;
}

}  // namespace tnet
