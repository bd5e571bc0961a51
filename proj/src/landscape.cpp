#include "tnet/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tnet {

namespace {

struct Tent {
    double b, d;
    double at(double t) const {
        const double v = std::min(t - b, d - t);
        return v > 0.0 ? v : 0.0;
    }
};

// drop interior breakpoints collinear with their neighbours to machine
// precision; anything coarser would silently perturb the stored function
void prune_collinear(std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) return;
    std::vector<std::pair<double, double>> out;
    out.push_back(pts.front());
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        const auto& [t1, v1] = out.back();
        const auto& [t2, v2] = pts[i];
        const auto& [t3, v3] = pts[i + 1];
        const double cross = (t3 - t1) * (v2 - v1) - (t2 - t1) * (v3 - v1);
        const double scale = std::max({std::abs(t3 - t1), std::abs(v1), std::abs(v2),
                                       std::abs(v3), 1.0});
        if (std::abs(cross) > 1e-15 * scale * scale) out.push_back(pts[i]);
    }
    out.push_back(pts.back());
    pts.swap(out);
}

}  // namespace

Landscape build_landscape(const PersistenceDiagram& d) {
    Landscape l;
    l.order = d.order;

    std::vector<Tent> tents;
    for (const auto& p : d.pairs)
        if (p.death > p.birth) tents.push_back({p.birth, p.death});
    if (tents.empty()) return l;

    std::vector<double> ts;
    ts.reserve(tents.size() * 3);
    for (const auto& t : tents) {
        ts.push_back(t.b);
        ts.push_back(0.5 * (t.b + t.d));
        ts.push_back(t.d);
    }
    // rising edge of one tent against falling edge of another: the only
    // transversal crossings piecewise tents admit
    for (size_t i = 0; i < tents.size(); ++i)
        for (size_t j = 0; j < tents.size(); ++j) {
            if (i == j) continue;
            const double tx = 0.5 * (tents[i].b + tents[j].d);  // t-b_i = d_j-t
            if (tx >= tents[i].b && tx <= 0.5 * (tents[i].b + tents[i].d) &&
                tx >= 0.5 * (tents[j].b + tents[j].d) && tx <= tents[j].d)
                ts.push_back(tx);
        }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    const size_t nt = ts.size();
    std::vector<double> vals(tents.size());
    std::vector<std::vector<double>> sampled;  // sampled[k][ti] = k-th max at ts[ti]
    for (size_t ti = 0; ti < nt; ++ti) {
        for (size_t k = 0; k < tents.size(); ++k) vals[k] = tents[k].at(ts[ti]);
        std::sort(vals.begin(), vals.end(), std::greater<double>());
        size_t depth = 0;
        while (depth < vals.size() && vals[depth] > 0.0) ++depth;
        if (sampled.size() < depth) sampled.resize(depth, std::vector<double>(nt, 0.0));
        for (size_t k = 0; k < depth; ++k) sampled[k][ti] = vals[k];
    }

    l.levels.resize(sampled.size());
    for (size_t k = 0; k < sampled.size(); ++k) {
        auto& level = l.levels[k];
        // trim the all-zero flanks, keeping one zero on each side of support
        size_t first = 0, last = nt - 1;
        while (first < nt && sampled[k][first] == 0.0) ++first;
        while (last > 0 && sampled[k][last] == 0.0) --last;
        if (first > 0) --first;
        if (last + 1 < nt) ++last;
        for (size_t ti = first; ti <= last; ++ti) level.emplace_back(ts[ti], sampled[k][ti]);
        prune_collinear(level);
    }
    return l;
}

double eval(const Landscape& l, int k, double t) {
    if (k < 1 || k > l.level_count()) return 0.0;
    const auto& level = l.levels[k - 1];
    if (level.empty() || t <= level.front().first || t >= level.back().first) {
        // exact hit on an endpoint still returns the stored value
        if (!level.empty() && t == level.front().first) return level.front().second;
        if (!level.empty() && t == level.back().first) return level.back().second;
        return 0.0;
    }
    auto it = std::upper_bound(level.begin(), level.end(), t,
                               [](double x, const std::pair<double, double>& p) {
                                   return x < p.first;
                               });
    const auto& [t2, v2] = *it;
    const auto& [t1, v1] = *(it - 1);
    if (t2 == t1) return v1;
    return v1 + (v2 - v1) * (t - t1) / (t2 - t1);
}

namespace {

std::vector<double> merged_grid(const Landscape& a, const Landscape& b, int k) {
    std::vector<double> ts;
    if (k <= a.level_count())
        for (const auto& [t, v] : a.levels[k - 1]) ts.push_back(t);
    if (k <= b.level_count())
        for (const auto& [t, v] : b.levels[k - 1]) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

}  // namespace

double l2_distance(const Landscape& a, const Landscape& b) {
    const int levels = std::max(a.level_count(), b.level_count());
    double sum = 0.0;
    for (int k = 1; k <= levels; ++k) {
        const auto ts = merged_grid(a, b, k);
        for (size_t i = 0; i + 1 < ts.size(); ++i) {
            const double h = ts[i + 1] - ts[i];
            if (h <= 0.0) continue;
            const double g1 = eval(a, k, ts[i]) - eval(b, k, ts[i]);
            const double g2 = eval(a, k, ts[i + 1]) - eval(b, k, ts[i + 1]);
            sum += h * (g1 * g1 + g1 * g2 + g2 * g2) / 3.0;
        }
    }
    return std::sqrt(sum);
}

double lp_norm(const Landscape& a, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("lp_norm: p must be 1 or 2");
    double sum = 0.0;
    for (const auto& level : a.levels) {
        for (size_t i = 0; i + 1 < level.size(); ++i) {
            const double h = level[i + 1].first - level[i].first;
            const double v1 = level[i].second, v2 = level[i + 1].second;
            if (p == 1)
                sum += 0.5 * h * (v1 + v2);
            else
                sum += h * (v1 * v1 + v1 * v2 + v2 * v2) / 3.0;
        }
    }
    return p == 1 ? sum : std::sqrt(sum);
}

double sup_norm(const Landscape& a) {
    double m = 0.0;
    if (!a.levels.empty())
        for (const auto& [t, v] : a.levels.front()) m = std::max(m, v);
    return m;
}

double sup_distance(const Landscape& a, const Landscape& b) {
    const int levels = std::max(a.level_count(), b.level_count());
    double m = 0.0;
    for (int k = 1; k <= levels; ++k) {
        for (const double t : merged_grid(a, b, k))
            m = std::max(m, std::abs(eval(a, k, t) - eval(b, k, t)));
    }
    return m;
}

void write_landscape_csv(std::ostream& out, const Landscape& l) {
    out.precision(17);
    out << "level,t,value\n";
    for (int k = 0; k < l.level_count(); ++k)
        for (const auto& [t, v] : l.levels[k]) out << (k + 1) << ',' << t << ',' << v << '\n';
}

Landscape read_landscape_csv(std::istream& in) {
    Landscape l;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        const int level = std::stoi(tok);
        if (level < 1) throw std::runtime_error("read_landscape_csv: bad level index");
        std::getline(ls, tok, ',');
        const double t = std::stod(tok);
        std::getline(ls, tok, ',');
        const double v = std::stod(tok);
        if (l.level_count() < level) l.levels.resize(level);
        l.levels[level - 1].emplace_back(t, v);
    }
    return l;
}

}  // namespace tnet
