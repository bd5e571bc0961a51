#include "tnet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tnet/linalg.hpp"
#include "tnet/rng.hpp"

namespace tnet {

namespace {

void check_k(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("clustering: k out of range");
}

double sq(double x) { return x * x; }

// objective of a medoid set: sum of squared distances to the nearest medoid
double medoid_cost(const DistanceCache& d, const std::vector<int>& medoids) {
    double cost = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const int m : medoids) best = std::min(best, sq(d.at(i, m)));
        cost += best;
    }
    return cost;
}

std::vector<int> assign_to_medoids(const DistanceCache& d, const std::vector<int>& medoids) {
    std::vector<int> assign(d.size());
    for (int i = 0; i < d.size(); ++i) {
        int best = 0;
        double best_d = sq(d.at(i, medoids[0]));
        for (size_t c = 1; c < medoids.size(); ++c) {
            const double v = sq(d.at(i, medoids[c]));
            if (v < best_d) {
                best_d = v;
                best = static_cast<int>(c);
            }
        }
        assign[i] = best;
    }
    return assign;
}

}  // namespace

Partition k_medoids(const DistanceCache& d, int k, uint64_t seed) {
    const int n = d.size();
    check_k(k, n);

    Rng rng(seed);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool.data(), pool.size());
    std::vector<int> medoids(pool.begin(), pool.begin() + k);
    std::sort(medoids.begin(), medoids.end());

    double cost = medoid_cost(d, medoids);
    for (;;) {
        double best_cost = cost;
        int best_slot = -1, best_obj = -1;
        for (int slot = 0; slot < k; ++slot) {
            for (int obj = 0; obj < n; ++obj) {
                if (std::find(medoids.begin(), medoids.end(), obj) != medoids.end()) continue;
                const int old = medoids[slot];
                medoids[slot] = obj;
                const double c = medoid_cost(d, medoids);
                medoids[slot] = old;
                if (c < best_cost - 1e-15 * (1.0 + std::abs(best_cost))) {
                    best_cost = c;
                    best_slot = slot;
                    best_obj = obj;
                }
            }
        }
        if (best_slot < 0) break;
        medoids[best_slot] = best_obj;
        std::sort(medoids.begin(), medoids.end());  // ties resolve to the lowest index
        cost = best_cost;
    }

    Partition p;
    p.k = k;
    p.medoids = medoids;
    p.assignments = assign_to_medoids(d, medoids);
    p.objective = cost;
    return p;
}

double within_dispersion(const DistanceCache& d, const std::vector<int>& assignments, int k,
                         double rho) {
    const DistanceCache dp = d.powed(rho);
    std::vector<double> self(k, 0.0);
    std::vector<double> count(k, 0.0);
    const int n = d.size();
    for (int i = 0; i < n; ++i) {
        count[assignments[i]] += 1.0;
        for (int j = 0; j < n; ++j)
            if (assignments[i] == assignments[j]) self[assignments[i]] += dp.at(i, j);
    }
    double w = 0.0;
    for (int c = 0; c < k; ++c)
        if (count[c] > 0.0) w += self[c] / (2.0 * count[c]);
    return w;
}

Partition k_groups(const DistanceCache& d, int k, double rho, uint64_t seed,
                   bool init_from_medoids) {
    const int n = d.size();
    check_k(k, n);
    if (!(rho > 0.0 && rho <= 2.0)) throw std::invalid_argument("k_groups: rho must be in (0,2]");

    const DistanceCache dp = d.powed(rho);

    std::vector<int> assign;
    if (init_from_medoids) {
        assign = k_medoids(d, k, seed).assignments;
    } else {
        Rng rng(seed);
        assign.resize(n);
        // random assignment with every cluster non-empty
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        rng.shuffle(pool.data(), pool.size());
        for (int c = 0; c < k; ++c) assign[pool[c]] = c;
        for (int t = k; t < n; ++t) assign[pool[t]] = static_cast<int>(rng.uniform_int(k));
    }

    // cluster sizes and internal sums S_c = sum over ordered pairs in c
    std::vector<double> size(k, 0.0), self(k, 0.0);
    for (int i = 0; i < n; ++i) size[assign[i]] += 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (assign[i] == assign[j]) self[assign[i]] += dp.at(i, j);

    auto w_of = [&]() {
        double w = 0.0;
        for (int c = 0; c < k; ++c) w += self[c] / (2.0 * size[c]);
        return w;
    };

    double w = w_of();
    for (;;) {
        double best_delta = -1e-12 * (1.0 + std::abs(w));
        int best_point = -1, best_dst = -1;
        for (int i = 0; i < n; ++i) {
            const int src = assign[i];
            if (size[src] <= 1.0) continue;  // moves may not empty a cluster
            double s_i_src = 0.0;
            for (int j = 0; j < n; ++j)
                if (assign[j] == src) s_i_src += dp.at(i, j);
            const double w_src_old = self[src] / (2.0 * size[src]);
            const double w_src_new = (self[src] - 2.0 * s_i_src) / (2.0 * (size[src] - 1.0));
            for (int dst = 0; dst < k; ++dst) {
                if (dst == src) continue;
                double s_i_dst = 0.0;
                for (int j = 0; j < n; ++j)
                    if (assign[j] == dst) s_i_dst += dp.at(i, j);
                const double w_dst_old = self[dst] / (2.0 * size[dst]);
                const double w_dst_new = (self[dst] + 2.0 * s_i_dst) / (2.0 * (size[dst] + 1.0));
                const double delta = (w_src_new + w_dst_new) - (w_src_old + w_dst_old);
                if (delta < best_delta) {
                    best_delta = delta;
                    best_point = i;
                    best_dst = dst;
                }
            }
        }
        if (best_point < 0) break;
        const int src = assign[best_point];
        double s_src = 0.0, s_dst = 0.0;
        for (int j = 0; j < n; ++j) {
            if (assign[j] == src) s_src += dp.at(best_point, j);
            if (assign[j] == best_dst) s_dst += dp.at(best_point, j);
        }
        self[src] -= 2.0 * s_src;
        self[best_dst] += 2.0 * s_dst;
        size[src] -= 1.0;
        size[best_dst] += 1.0;
        assign[best_point] = best_dst;
        w = w_of();
    }

    Partition p;
    p.k = k;
    p.assignments = assign;
    p.objective = w;
    return p;
}

Affinity build_affinity(const DistanceCache& d, int tau) {
    const int n = d.size();
    if (tau < 1 || tau >= n) throw std::invalid_argument("build_affinity: need 1 <= tau < n");

    std::vector<double> sigma(n);
    int floored = 0;
    std::vector<double> row(n - 1);
    for (int i = 0; i < n; ++i) {
        int at = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) row[at++] = d.at(i, j);
        std::nth_element(row.begin(), row.begin() + (tau - 1), row.end());
        double s = row[tau - 1];
        if (s <= 0.0) {
            s = std::numeric_limits<double>::epsilon();
            ++floored;
        }
        sigma[i] = s;
    }

    Affinity aff;
    aff.n = n;
    aff.tau = tau;
    aff.floored_bandwidths = floored;
    aff.a.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        aff.a[static_cast<size_t>(i) * n + i] = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = std::exp(-sq(d.at(i, j)) / (sigma[i] * sigma[j]));
            aff.a[static_cast<size_t>(i) * n + j] = v;
            aff.a[static_cast<size_t>(j) * n + i] = v;
        }
    }
    return aff;
}

Partition kmeans(const std::vector<std::vector<double>>& points, int k, uint64_t seed,
                 int restarts, int max_iter) {
    const int n = static_cast<int>(points.size());
    check_k(k, n);
    const int dim = static_cast<int>(points[0].size());

    auto dist2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int t = 0; t < dim; ++t) s += sq(a[t] - b[t]);
        return s;
    };

    Partition best;
    best.objective = std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        Rng rng(Rng::derive(seed, static_cast<uint64_t>(r)));

        // k-means++ seeding
        std::vector<std::vector<double>> centers;
        centers.push_back(points[rng.uniform_int(n)]);
        std::vector<double> d2(n);
        while (static_cast<int>(centers.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                double m = std::numeric_limits<double>::infinity();
                for (const auto& c : centers) m = std::min(m, dist2(points[i], c));
                d2[i] = m;
                total += m;
            }
            int pick;
            if (total <= 0.0) {
                pick = static_cast<int>(rng.uniform_int(n));
            } else {
                const double u = rng.uniform() * total;
                double acc = 0.0;
                pick = n - 1;
                for (int i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (u < acc) {
                        pick = i;
                        break;
                    }
                }
            }
            centers.push_back(points[pick]);
        }

        std::vector<int> assign(n, 0);
        for (int it = 0; it < max_iter; ++it) {
            bool changed = false;
            for (int i = 0; i < n; ++i) {
                int bc = 0;
                double bd = dist2(points[i], centers[0]);
                for (int c = 1; c < k; ++c) {
                    const double v = dist2(points[i], centers[c]);
                    if (v < bd) {
                        bd = v;
                        bc = c;
                    }
                }
                if (assign[i] != bc) {
                    assign[i] = bc;
                    changed = true;
                }
            }
            std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
            std::vector<int> counts(k, 0);
            for (int i = 0; i < n; ++i) {
                ++counts[assign[i]];
                for (int t = 0; t < dim; ++t) sums[assign[i]][t] += points[i][t];
            }
            for (int c = 0; c < k; ++c) {
                if (counts[c] == 0) {
                    // revive an empty cluster at the point farthest from its center
                    int far = 0;
                    double fd = -1.0;
                    for (int i = 0; i < n; ++i) {
                        const double v = dist2(points[i], centers[assign[i]]);
                        if (v > fd && counts[assign[i]] > 1) {
                            fd = v;
                            far = i;
                        }
                    }
                    --counts[assign[far]];
                    for (int t = 0; t < dim; ++t) sums[assign[far]][t] -= points[far][t];
                    assign[far] = c;
                    counts[c] = 1;
                    for (int t = 0; t < dim; ++t) sums[c][t] = points[far][t];
                    changed = true;
                }
                for (int t = 0; t < dim; ++t) centers[c][t] = sums[c][t] / counts[c];
            }
            if (!changed && it > 0) break;
        }

        double wcss = 0.0;
        for (int i = 0; i < n; ++i) wcss += dist2(points[i], centers[assign[i]]);
        if (wcss < best.objective) {
            best.objective = wcss;
            best.assignments = assign;
            best.k = k;
        }
    }
    return best;
}

Partition spectral_cluster(const Affinity& a, int k, uint64_t seed) {
    const int n = a.n;
    check_k(k, n);

    SymMatrix lap(n);
    std::vector<double> deg(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) deg[i] += a.at(i, j);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            lap.at(i, j) = (i == j ? 1.0 : 0.0) - a.at(i, j) / std::sqrt(deg[i] * deg[j]);
    }

    const EigenDecomposition eig = sym_eigen(lap);  // throws if it fails to converge

    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < n; ++i) rows[i][c] = eig.vectors[c][i];

    return kmeans(rows, k, seed);  // objective = k-means WCSS on the spectral rows
}

double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rand_index: length mismatch");
    const int n = static_cast<int>(a.size());
    if (n < 2) return 1.0;
    long long agree = 0, total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool ta = a[i] == a[j];
            const bool tb = b[i] == b[j];
            agree += ta == tb;
            ++total;
        }
    return static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace tnet
