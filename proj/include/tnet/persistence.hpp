#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace tnet {

using Point2 = std::array<double, 2>;

enum class Convention { radius, diameter };

const char* to_string(Convention c);
Convention convention_from_string(const std::string& s);

struct DiagramPair {
    double birth = 0.0;
    double death = 0.0;

    bool operator==(const DiagramPair&) const = default;
};

// Multiset of (birth, death) pairs for one homology order, with classes alive
// at the end truncated at max_filtration.
struct PersistenceDiagram {
    int order = 0;
    std::vector<DiagramPair> pairs;
    double max_filtration = 0.0;

    // canonical sort by (birth, death) for multiset comparisons
    void normalize();
};

struct FiltEdge {
    double value = 0.0;
    int i = 0;
    int j = 0;
};

// Pairwise-distance filtration of a planar point set. Edges carry d(i,j)/2
// under the radius convention or d(i,j) under the diameter convention, sorted
// ascending with ties broken by (i, j).
struct Filtration {
    std::vector<Point2> points;
    std::vector<FiltEdge> edges;
    Convention convention = Convention::radius;
    double max_filtration = 0.0;
};

Filtration vr_filtration(const std::vector<Point2>& points,
                         Convention convention = Convention::radius);

// Order 0: union-find sweep over the sorted edges. Merges kill the younger
// component (elder rule, ties by lower root index); finite deaths are exactly
// the spanning-forest edge values. One (0, max_filtration) pair remains per
// final component.
PersistenceDiagram diagram_h0(const Filtration& f);

// Order 1: Z/2 boundary-matrix column reduction on the clique complex up to
// triangles. Triangle value = max of its edge values, ordered after edges of
// the same value with lexicographic tie-breaks. Zero-persistence pairs are
// dropped; survivors are truncated at max_filtration.
PersistenceDiagram diagram_h1(const Filtration& f);

// Remove classes truncated at max_filtration. Their tent is half the point
// set's diameter: between graphs it encodes embedding scale, not topology,
// so population inference runs on the finite classes only.
PersistenceDiagram drop_essential(const PersistenceDiagram& d);

// Min-max matching distance between diagrams of the same order; unmatched
// points pay their L-inf distance to the diagonal. Binary search over
// candidate costs with a bipartite feasibility matching.
double bottleneck_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

// CSV: "# maxfilt=<v>" comment, "order,birth,death" header, one row per pair.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d);
PersistenceDiagram read_diagram_csv(std::istream& in);

}  // namespace tnet
