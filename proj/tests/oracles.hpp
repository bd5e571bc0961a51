// Independent test oracles. Everything here recomputes expected values by a
// route disjoint from the library implementation it checks: Kruskal for H0
// deaths, a GF(2) Betti-number sweep for H1, dense-grid kmax for landscapes,
// naive summation for the LSM likelihood, finite differences for gradients.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tnet/landscape.hpp"
#include "tnet/lsm.hpp"
#include "tnet/persistence.hpp"

namespace oracle {

// ---- Kruskal: minimum-spanning-forest edge weights of a filtration ---------

inline std::vector<double> mst_edge_values(const tnet::Filtration& f) {
    const int m = static_cast<int>(f.points.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<tnet::FiltEdge> edges = f.edges;
    std::sort(edges.begin(), edges.end(),
              [](const tnet::FiltEdge& a, const tnet::FiltEdge& b) { return a.value < b.value; });
    std::vector<double> out;
    for (const auto& e : edges) {
        const int ra = find(e.i), rb = find(e.j);
        if (ra == rb) continue;
        parent[ra] = rb;
        out.push_back(e.value);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- GF(2) linear algebra over edge-index bitmasks (m <= 8 points) ---------

struct Gf2Basis {
    std::vector<uint64_t> rows;  // reduced basis

    // returns true if the vector was independent and inserted
    bool insert(uint64_t v) {
        for (const uint64_t r : rows) v = std::min(v, v ^ r);
        if (v == 0) return false;
        rows.push_back(v);
        std::sort(rows.begin(), rows.end(), std::greater<uint64_t>());
        return true;
    }

    int dim() const { return static_cast<int>(rows.size()); }
};

inline int span_dim(const std::vector<uint64_t>& vecs) {
    Gf2Basis b;
    for (const uint64_t v : vecs) b.insert(v);
    return b.dim();
}

// Brute-force H1 diagram by sweeping Betti numbers of the clique 2-complex
// over all critical values and decomposing the persistent rank function.
inline tnet::PersistenceDiagram betti_sweep_h1(const tnet::Filtration& f) {
    const int m = static_cast<int>(f.points.size());
    const auto& edges = f.edges;
    const int ne = static_cast<int>(edges.size());

    tnet::PersistenceDiagram out;
    out.order = 1;
    out.max_filtration = f.max_filtration;
    if (m < 3) return out;

    std::vector<std::vector<int>> rank_of(m, std::vector<int>(m, -1));
    for (int r = 0; r < ne; ++r) rank_of[edges[r].i][edges[r].j] = r;

    std::vector<double> crit;
    for (const auto& e : edges) crit.push_back(e.value);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    const int L = static_cast<int>(crit.size());

    // triangle boundary masks and values
    struct Tri {
        double value;
        uint64_t mask;
    };
    std::vector<Tri> tris;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                const int e1 = rank_of[a][b], e2 = rank_of[a][c], e3 = rank_of[b][c];
                const double v =
                    std::max({edges[e1].value, edges[e2].value, edges[e3].value});
                tris.push_back({v, (1ULL << e1) | (1ULL << e2) | (1ULL << e3)});
            }

    // cycle-space basis of the complex at each critical level: fundamental
    // cycles of the non-forest edges
    auto cycle_basis = [&](int level) {
        const double r = crit[level];
        std::vector<int> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<std::vector<std::pair<int, int>>> tree(m);  // (neighbour, edge rank)
        std::vector<uint64_t> cycles;
        for (int e = 0; e < ne; ++e) {
            if (edges[e].value > r) continue;
            const int ra = find(edges[e].i), rb = find(edges[e].j);
            if (ra != rb) {
                parent[ra] = rb;
                tree[edges[e].i].push_back({edges[e].j, e});
                tree[edges[e].j].push_back({edges[e].i, e});
            } else {
                // fundamental cycle: forest path i..j plus this edge
                std::vector<int> prev(m, -1), prev_edge(m, -1), stack{edges[e].i};
                std::vector<char> seen(m, 0);
                seen[edges[e].i] = 1;
                while (!stack.empty()) {
                    const int u = stack.back();
                    stack.pop_back();
                    for (const auto& [w, er] : tree[u])
                        if (!seen[w]) {
                            seen[w] = 1;
                            prev[w] = u;
                            prev_edge[w] = er;
                            stack.push_back(w);
                        }
                }
                uint64_t mask = 1ULL << e;
                for (int at = edges[e].j; at != edges[e].i; at = prev[at])
                    mask |= 1ULL << prev_edge[at];
                cycles.push_back(mask);
            }
        }
        return cycles;
    };

    auto boundary_vectors = [&](int level) {
        std::vector<uint64_t> vecs;
        for (const auto& t : tris)
            if (t.value <= crit[level]) vecs.push_back(t.mask);
        return vecs;
    };

    // beta(i, j) = rank of H1(K_i) -> H1(K_j); -1 means the empty complex
    std::vector<std::vector<int>> beta(L, std::vector<int>(L, 0));
    std::vector<std::vector<uint64_t>> zbasis(L), bvecs(L);
    for (int level = 0; level < L; ++level) {
        zbasis[level] = cycle_basis(level);
        bvecs[level] = boundary_vectors(level);
    }
    for (int i = 0; i < L; ++i) {
        const int dim_z = span_dim(zbasis[i]);
        for (int j = i; j < L; ++j) {
            // dim(Z_i ∩ B_j) = dim Z_i + dim B_j - dim(Z_i + B_j)
            const int dim_b = span_dim(bvecs[j]);
            std::vector<uint64_t> uni = zbasis[i];
            uni.insert(uni.end(), bvecs[j].begin(), bvecs[j].end());
            const int dim_sum = span_dim(uni);
            const int dim_int = dim_z + dim_b - dim_sum;
            beta[i][j] = dim_z - dim_int;
        }
    }
    auto B = [&](int i, int j) { return (i < 0 || j < 0) ? 0 : beta[i][j]; };

    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            const int mult = (B(i, j - 1) - B(i, j)) - (B(i - 1, j - 1) - B(i - 1, j));
            for (int t = 0; t < mult; ++t) out.pairs.push_back({crit[i], crit[j]});
        }
        const int essential = B(i, L - 1) - B(i - 1, L - 1);
        for (int t = 0; t < essential; ++t)
            if (f.max_filtration > crit[i]) out.pairs.push_back({crit[i], f.max_filtration});
    }
    out.normalize();
    return out;
}

// ---- dense-grid kmax for landscapes ----------------------------------------

inline double kmax_at(const tnet::PersistenceDiagram& d, int k, double t) {
    std::vector<double> vals;
    for (const auto& p : d.pairs) {
        const double v = std::min(t - p.birth, p.death - t);
        vals.push_back(v > 0.0 ? v : 0.0);
    }
    if (static_cast<int>(vals.size()) < k) return 0.0;
    std::nth_element(vals.begin(), vals.begin() + (k - 1), vals.end(), std::greater<double>());
    return vals[k - 1];
}

// ---- naive LSM log-likelihood (direct summation, no softplus) --------------

inline double naive_log_likelihood(const tnet::Graph& g, const tnet::Embedding& e) {
    double ll = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j) {
            const double dx = e.positions[i][0] - e.positions[j][0];
            const double dy = e.positions[i][1] - e.positions[j][1];
            const double dist = std::max(std::sqrt(dx * dx + dy * dy), 1e-8);
            const double eta = e.alpha - dist;
            const double aij = g.has_edge(i, j) ? 1.0 : 0.0;
            ll += aij * eta - std::log(1.0 + std::exp(eta));
        }
    return ll;
}

// central finite differences of the log-likelihood
inline tnet::LogLikGradient fd_gradient(const tnet::Graph& g, const tnet::Embedding& e,
                                        double h = 1e-5) {
    tnet::LogLikGradient out;
    tnet::Embedding probe = e;
    probe.alpha = e.alpha + h;
    const double up = tnet::log_likelihood(g, probe);
    probe.alpha = e.alpha - h;
    const double dn = tnet::log_likelihood(g, probe);
    probe.alpha = e.alpha;
    out.d_alpha = (up - dn) / (2.0 * h);
    out.d_pos.assign(g.n(), {0.0, 0.0});
    for (int i = 0; i < g.n(); ++i)
        for (int c = 0; c < 2; ++c) {
            probe = e;
            probe.positions[i][c] += h;
            const double u = tnet::log_likelihood(g, probe);
            probe.positions[i][c] -= 2.0 * h;
            const double l = tnet::log_likelihood(g, probe);
            out.d_pos[i][c] = (u - l) / (2.0 * h);
        }
    return out;
}

// ---- trapezoid quadrature of the squared landscape difference --------------

inline double l2_distance_quadrature(const tnet::Landscape& a, const tnet::Landscape& b,
                                     long steps = 200000) {
    double tmin = 0.0, tmax = 0.0;
    bool any = false;
    auto scan = [&](const tnet::Landscape& l) {
        for (const auto& level : l.levels)
            for (const auto& [t, v] : level) {
                if (!any) {
                    tmin = tmax = t;
                    any = true;
                } else {
                    tmin = std::min(tmin, t);
                    tmax = std::max(tmax, t);
                }
            }
    };
    scan(a);
    scan(b);
    if (!any || tmax <= tmin) return 0.0;
    const int levels = std::max(a.level_count(), b.level_count());
    const double h = (tmax - tmin) / static_cast<double>(steps);
    double sum = 0.0;
    for (int k = 1; k <= levels; ++k) {
        for (long s = 0; s <= steps; ++s) {
            const double t = tmin + h * static_cast<double>(s);
            const double g = tnet::eval(a, k, t) - tnet::eval(b, k, t);
            const double w = (s == 0 || s == steps) ? 0.5 : 1.0;
            sum += w * g * g;
        }
    }
    return std::sqrt(sum * h);
}

// ---- Euclidean within-cluster sum of squares --------------------------------

inline double wcss(const std::vector<double>& xs, const std::vector<int>& assign, int k) {
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
        double mean = 0.0;
        int count = 0;
        for (size_t i = 0; i < xs.size(); ++i)
            if (assign[i] == c) {
                mean += xs[i];
                ++count;
            }
        if (count == 0) continue;
        mean /= count;
        for (size_t i = 0; i < xs.size(); ++i)
            if (assign[i] == c) total += (xs[i] - mean) * (xs[i] - mean);
    }
    return total;
}

}  // namespace oracle
