#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnet/landscape.hpp"

namespace tnet {

struct Sample {
    std::vector<Landscape> items;
    std::string label;
};

// Pooled pairwise L2 distance matrix. Permutation replicates only touch this
// cache; no landscape distance is ever computed twice.
class DistanceCache {
public:
    DistanceCache() = default;
    explicit DistanceCache(std::vector<double> matrix, int n);
    static DistanceCache from_landscapes(const std::vector<Landscape>& items);

    int size() const { return n_; }
    double at(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }

    // elementwise power of the matrix (for d_rho sums)
    DistanceCache powed(double rho) const;
    DistanceCache scaled(double c) const;

private:
    int n_ = 0;
    std::vector<double> d_;
};

enum class StatisticKind { two_sample, k_sample, disco_between };

const char* to_string(StatisticKind k);

struct TestReport {
    std::string method;
    double statistic = 0.0;
    std::vector<double> replicates;
    double p_value = 1.0;
    int B = 0;
    uint64_t seed = 0;
    std::vector<int> group_sizes;
    int order = 0;

    std::string to_json() const;
};

struct DiscoResult {
    double total = 0.0;
    double within = 0.0;
    double between = 0.0;
};

// Scaled two-sample energy statistic T = n1 n2/(n1+n2) * E_hat, with E_hat
// the empirical energy distance between the two index sets.
double two_sample_statistic(const DistanceCache& d, const std::vector<int>& idx1,
                            const std::vector<int>& idx2);

// Sum of the k(k-1)/2 pairwise two-sample statistics.
double k_sample_statistic(const DistanceCache& d, const std::vector<std::vector<int>>& groups);

// Distance-components decomposition of total dispersion at exponent rho in
// (0, 2]: total = within + between.
DiscoResult disco_decomposition(const DistanceCache& d,
                                const std::vector<std::vector<int>>& groups, double rho);

struct PermutationConfig {
    StatisticKind kind = StatisticKind::k_sample;
    int B = 999;
    uint64_t seed = 0;
    double rho = 1.0;  // disco only
};

// Label-permutation test: group sizes preserved, statistic recomputed from
// the cache per replicate, p = (#{T <= T_b} + 1)/(B+1).
TestReport permutation_test(const std::vector<Sample>& samples, const PermutationConfig& cfg);

// Same test on a prebuilt cache with given group sizes (items pooled in
// group order).
TestReport permutation_test(const DistanceCache& cache, const std::vector<int>& group_sizes,
                            const PermutationConfig& cfg);

}  // namespace tnet
