#include "tnet/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tnet/rng.hpp"

namespace tnet {

DistanceCache::DistanceCache(std::vector<double> matrix, int n) : n_(n), d_(std::move(matrix)) {
    if (static_cast<size_t>(n_) * n_ != d_.size())
        throw std::invalid_argument("DistanceCache: matrix size mismatch");
}

DistanceCache DistanceCache::from_landscapes(const std::vector<Landscape>& items) {
    const int n = static_cast<int>(items.size());
    std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = l2_distance(items[i], items[j]);
            d[static_cast<size_t>(i) * n + j] = v;
            d[static_cast<size_t>(j) * n + i] = v;
        }
    return DistanceCache(std::move(d), n);
}

DistanceCache DistanceCache::powed(double rho) const {
    if (rho == 1.0) return *this;
    std::vector<double> d(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) d[i] = std::pow(d_[i], rho);
    for (int i = 0; i < n_; ++i) d[static_cast<size_t>(i) * n_ + i] = 0.0;
    return DistanceCache(std::move(d), n_);
}

DistanceCache DistanceCache::scaled(double c) const {
    std::vector<double> d(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) d[i] = c * d_[i];
    return DistanceCache(std::move(d), n_);
}

const char* to_string(StatisticKind k) {
    switch (k) {
        case StatisticKind::two_sample: return "two_sample";
        case StatisticKind::k_sample: return "k_sample";
        case StatisticKind::disco_between: return "disco";
    }
    return "?";
}

namespace {

void check_groups(const DistanceCache& d, const std::vector<std::vector<int>>& groups,
                  size_t min_groups) {
    if (groups.size() < min_groups)
        throw std::invalid_argument("energy statistic: need at least " +
                                    std::to_string(min_groups) + " groups");
    std::vector<char> seen(d.size(), 0);
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("energy statistic: empty group");
        for (const int i : g) {
            if (i < 0 || i >= d.size())
                throw std::invalid_argument("energy statistic: index out of range");
            if (seen[i]) throw std::invalid_argument("energy statistic: overlapping index sets");
            seen[i] = 1;
        }
    }
}

// sum of d(i,j) over the full ordered product of two index sets
double cross_sum(const DistanceCache& d, const std::vector<int>& a, const std::vector<int>& b) {
    double s = 0.0;
    for (const int i : a)
        for (const int j : b) s += d.at(i, j);
    return s;
}

double two_sample_from_sums(double sxy, double sxx, double syy, double n1, double n2) {
    const double energy = 2.0 * sxy / (n1 * n2) - sxx / (n1 * n1) - syy / (n2 * n2);
    return n1 * n2 / (n1 + n2) * energy;
}

}  // namespace

double two_sample_statistic(const DistanceCache& d, const std::vector<int>& idx1,
                            const std::vector<int>& idx2) {
    check_groups(d, {idx1, idx2}, 2);
    const double n1 = static_cast<double>(idx1.size());
    const double n2 = static_cast<double>(idx2.size());
    return two_sample_from_sums(cross_sum(d, idx1, idx2), cross_sum(d, idx1, idx1),
                                cross_sum(d, idx2, idx2), n1, n2);
}

double k_sample_statistic(const DistanceCache& d, const std::vector<std::vector<int>>& groups) {
    check_groups(d, groups, 2);
    const size_t k = groups.size();
    std::vector<double> self(k);
    for (size_t i = 0; i < k; ++i) self[i] = cross_sum(d, groups[i], groups[i]);
    double total = 0.0;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            total += two_sample_from_sums(cross_sum(d, groups[i], groups[j]), self[i], self[j],
                                          static_cast<double>(groups[i].size()),
                                          static_cast<double>(groups[j].size()));
    return total;
}

DiscoResult disco_decomposition(const DistanceCache& d,
                                const std::vector<std::vector<int>>& groups, double rho) {
    if (!(rho > 0.0 && rho <= 2.0))
        throw std::invalid_argument("disco_decomposition: rho must be in (0,2]");
    check_groups(d, groups, 1);
    const DistanceCache dp = d.powed(rho);

    const size_t k = groups.size();
    double n = 0.0;
    for (const auto& g : groups) n += static_cast<double>(g.size());

    std::vector<double> self(k);
    for (size_t i = 0; i < k; ++i) self[i] = cross_sum(dp, groups[i], groups[i]);

    DiscoResult r;
    double pooled = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const double ni = static_cast<double>(groups[i].size());
        pooled += self[i];
        r.within += self[i] / (2.0 * ni);
        for (size_t j = i + 1; j < k; ++j) {
            const double nj = static_cast<double>(groups[j].size());
            const double sij = cross_sum(dp, groups[i], groups[j]);
            pooled += 2.0 * sij;
            r.between += ni * nj / (2.0 * n) *
                         (2.0 * sij / (ni * nj) - self[i] / (ni * ni) - self[j] / (nj * nj));
        }
    }
    r.total = pooled / (2.0 * n);
    return r;
}

std::string TestReport::to_json() const {
    std::ostringstream out;
    out.precision(17);
    out << "{\"method\":\"" << method << "\",\"statistic\":" << statistic
        << ",\"p_value\":" << p_value << ",\"B\":" << B << ",\"seed\":" << seed
        << ",\"group_sizes\":[";
    for (size_t i = 0; i < group_sizes.size(); ++i) {
        if (i) out << ',';
        out << group_sizes[i];
    }
    out << "],\"order\":" << order << "}";
    return out.str();
}

TestReport permutation_test(const DistanceCache& cache, const std::vector<int>& group_sizes,
                            const PermutationConfig& cfg) {
    if (cfg.B < 1) throw std::invalid_argument("permutation_test: B must be >= 1");
    int n = 0;
    for (const int s : group_sizes) {
        if (s < 1) throw std::invalid_argument("permutation_test: empty group");
        n += s;
    }
    if (n != cache.size()) throw std::invalid_argument("permutation_test: sizes do not pool");
    if (group_sizes.size() < 2) throw std::invalid_argument("permutation_test: need >= 2 groups");
    if (cfg.kind == StatisticKind::two_sample && group_sizes.size() != 2)
        throw std::invalid_argument("permutation_test: two_sample needs exactly 2 groups");

    const DistanceCache powered =
        cfg.kind == StatisticKind::disco_between ? cache.powed(cfg.rho) : cache;

    auto groups_from = [&](const std::vector<int>& perm) {
        std::vector<std::vector<int>> groups(group_sizes.size());
        int at = 0;
        for (size_t g = 0; g < group_sizes.size(); ++g)
            for (int t = 0; t < group_sizes[g]; ++t) groups[g].push_back(perm[at++]);
        return groups;
    };
    auto stat_of = [&](const std::vector<int>& perm) {
        const auto groups = groups_from(perm);
        if (cfg.kind == StatisticKind::disco_between)
            return disco_decomposition(powered, groups, 1.0).between;
        if (cfg.kind == StatisticKind::two_sample)
            return two_sample_statistic(cache, groups[0], groups[1]);
        return k_sample_statistic(cache, groups);
    };

    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    TestReport report;
    report.method = to_string(cfg.kind);
    report.B = cfg.B;
    report.seed = cfg.seed;
    report.group_sizes = group_sizes;
    report.statistic = stat_of(identity);
    report.replicates.resize(cfg.B);

    for (int b = 0; b < cfg.B; ++b) {
        Rng rng(Rng::derive(cfg.seed, static_cast<uint64_t>(b) + 1));
        std::vector<int> perm = identity;
        rng.shuffle(perm.data(), perm.size());
        report.replicates[b] = stat_of(perm);
    }

    int count = 0;
    for (const double t : report.replicates)
        if (report.statistic <= t) ++count;
    report.p_value = static_cast<double>(count + 1) / (cfg.B + 1);
    return report;
}

TestReport permutation_test(const std::vector<Sample>& samples, const PermutationConfig& cfg) {
    std::vector<Landscape> pool;
    std::vector<int> sizes;
    int order = 0;
    for (const auto& s : samples) {
        if (s.items.empty()) throw std::invalid_argument("permutation_test: empty sample");
        sizes.push_back(static_cast<int>(s.items.size()));
        for (const auto& l : s.items) {
            pool.push_back(l);
            order = l.order;
        }
    }
    const DistanceCache cache = DistanceCache::from_landscapes(pool);
    TestReport report = permutation_test(cache, sizes, cfg);
    report.order = order;
    return report;
}

}  // namespace tnet
