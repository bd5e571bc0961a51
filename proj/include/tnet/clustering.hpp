#pragma once

#include <cstdint>
#include <vector>

#include "tnet/energy.hpp"

namespace tnet {

struct Partition {
    std::vector<int> assignments;  // 0..k-1 per item
    int k = 0;
    double objective = 0.0;        // method-specific
    std::vector<int> medoids;      // where applicable
};

struct Affinity {
    int n = 0;
    std::vector<double> a;  // n*n, symmetric, unit diagonal
    int tau = 0;
    int floored_bandwidths = 0;  // duplicate items whose bandwidth hit the floor

    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// PAM with squared distances: random initial medoids, assign to nearest,
// best-swap iterations until no swap improves the objective.
Partition k_medoids(const DistanceCache& d, int k, uint64_t seed);

// Energy k-groups: single-point moves that most decrease the within-sample
// dispersion W_rho, initialized from the k-medoids partition (or randomly).
Partition k_groups(const DistanceCache& d, int k, double rho, uint64_t seed,
                   bool init_from_medoids = true);

// Locally-adaptive Gaussian affinity: bandwidth sigma_i = distance to the
// tau-th nearest neighbour, A(i,j) = exp(-d(i,j)^2 / (sigma_i sigma_j)).
Affinity build_affinity(const DistanceCache& d, int tau);

// Symmetric normalized Laplacian, eigenvectors of the k smallest eigenvalues,
// k-means on the rows (k-means++ seeding, 10 restarts).
Partition spectral_cluster(const Affinity& a, int k, uint64_t seed);

// Fraction of item pairs on which two labelings agree (together/apart).
double rand_index(const std::vector<int>& a, const std::vector<int>& b);

// plain k-means used by the spectral pipeline (exposed for tests)
Partition kmeans(const std::vector<std::vector<double>>& points, int k, uint64_t seed,
                 int restarts = 10, int max_iter = 100);

double within_dispersion(const DistanceCache& d, const std::vector<int>& assignments, int k,
                         double rho);

}  // namespace tnet
