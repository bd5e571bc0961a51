#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "tnet/persistence.hpp"

namespace tnet {

// Persistence landscape: nested piecewise-linear levels stored as exact
// breakpoint lists (t, value), zero outside each level's stored range. No
// grid is ever involved; norms and distances integrate segments in closed
// form.
struct Landscape {
    int order = 0;
    std::vector<std::vector<std::pair<double, double>>> levels;

    bool empty() const { return levels.empty(); }
    int level_count() const { return static_cast<int>(levels.size()); }
};

// k-th max of the tent functions min(t - b, d - t)_+ over the diagram's
// pairs, evaluated exactly at tent breakpoints and pairwise crossings.
Landscape build_landscape(const PersistenceDiagram& d);

// Value of level k (1-based) at t; zero outside support or past the last
// stored level.
double eval(const Landscape& l, int k, double t);

// L2 distance between landscapes of the same order, missing levels treated
// as zero.
double l2_distance(const Landscape& a, const Landscape& b);

// p in {1, 2}; use sup_norm for the L-infinity case.
double lp_norm(const Landscape& a, int p);
double sup_norm(const Landscape& a);

double sup_distance(const Landscape& a, const Landscape& b);

// CSV rows "level,t,value"; reconstruction is exact.
void write_landscape_csv(std::ostream& out, const Landscape& l);
Landscape read_landscape_csv(std::istream& in);

}  // namespace tnet
