#include "tnet/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tnet {

const char* to_string(Convention c) { return c == Convention::radius ? "radius" : "diameter"; }

Convention convention_from_string(const std::string& s) {
    if (s == "radius") return Convention::radius;
    if (s == "diameter") return Convention::diameter;
    throw std::invalid_argument("unknown filtration convention: " + s);
}

void PersistenceDiagram::normalize() {
    std::sort(pairs.begin(), pairs.end(), [](const DiagramPair& a, const DiagramPair& b) {
        return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
    });
}

Filtration vr_filtration(const std::vector<Point2>& points, Convention convention) {
    if (points.empty()) throw std::invalid_argument("vr_filtration: empty point set");
    Filtration f;
    f.points = points;
    f.convention = convention;
    const int m = static_cast<int>(points.size());
    f.edges.reserve(static_cast<size_t>(m) * (m - 1) / 2);
    const double scale = convention == Convention::radius ? 0.5 : 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double dx = points[i][0] - points[j][0];
            const double dy = points[i][1] - points[j][1];
            f.edges.push_back({scale * std::sqrt(dx * dx + dy * dy), i, j});
        }
    std::sort(f.edges.begin(), f.edges.end(), [](const FiltEdge& a, const FiltEdge& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    f.max_filtration = f.edges.empty() ? 0.0 : f.edges.back().value;
    return f;
}

namespace {

struct ElderUnionFind {
    std::vector<int> parent;
    std::vector<int> root_vertex;  // minimal vertex index in the component

    explicit ElderUnionFind(int n) : parent(n), root_vertex(n) {
        for (int i = 0; i < n; ++i) parent[i] = root_vertex[i] = i;
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
};

}  // namespace

PersistenceDiagram diagram_h0(const Filtration& f) {
    const int m = static_cast<int>(f.points.size());
    PersistenceDiagram d;
    d.order = 0;
    d.max_filtration = f.max_filtration;

    ElderUnionFind uf(m);
    int components = m;
    for (const FiltEdge& e : f.edges) {
        int ra = uf.find(e.i), rb = uf.find(e.j);
        if (ra == rb) continue;
        // the component with the larger representative index dies
        if (uf.root_vertex[ra] > uf.root_vertex[rb]) std::swap(ra, rb);
        d.pairs.push_back({0.0, e.value});
        uf.parent[rb] = ra;
        --components;
    }
    for (int c = 0; c < components; ++c) d.pairs.push_back({0.0, f.max_filtration});
    d.normalize();
    return d;
}

namespace {

struct Triangle {
    double value;
    int a, b, c;  // a < b < c
};

// xor of two sorted index vectors (Z/2 column addition)
void xor_into(std::vector<int>& dst, const std::vector<int>& src) {
    std::vector<int> out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() && j < src.size()) {
        if (dst[i] < src[j])
            out.push_back(dst[i++]);
        else if (src[j] < dst[i])
            out.push_back(src[j++]);
        else {
            ++i;
            ++j;
        }
    }
    while (i < dst.size()) out.push_back(dst[i++]);
    while (j < src.size()) out.push_back(src[j++]);
    dst.swap(out);
}

}  // namespace

PersistenceDiagram diagram_h1(const Filtration& f) {
    const int m = static_cast<int>(f.points.size());
    PersistenceDiagram d;
    d.order = 1;
    d.max_filtration = f.max_filtration;
    if (m < 3) return d;

    const auto& edges = f.edges;
    const int ne = static_cast<int>(edges.size());

    // rank of each edge in the filtration order
    std::vector<std::vector<int>> edge_rank(m, std::vector<int>(m, -1));
    for (int r = 0; r < ne; ++r) edge_rank[edges[r].i][edges[r].j] = r;

    // positive edges create 1-cycles: endpoints already connected when inserted
    std::vector<char> positive(ne, 0);
    {
        ElderUnionFind uf(m);
        for (int r = 0; r < ne; ++r) {
            const int ra = uf.find(edges[r].i), rb = uf.find(edges[r].j);
            if (ra == rb)
                positive[r] = 1;
            else
                uf.parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }

    // all triangles, value = max edge value; ordered by (value, lex triple) and
    // processed after same-value edges (edges already placed before by rank)
    std::vector<Triangle> tris;
    tris.reserve(static_cast<size_t>(m) * (m - 1) * (m - 2) / 6);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                const double v = std::max({edges[edge_rank[a][b]].value,
                                           edges[edge_rank[a][c]].value,
                                           edges[edge_rank[b][c]].value});
                tris.push_back({v, a, b, c});
            }
    std::sort(tris.begin(), tris.end(), [](const Triangle& x, const Triangle& y) {
        if (x.value != y.value) return x.value < y.value;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });

    // column reduction over triangle columns; rows are edge ranks
    std::vector<std::vector<int>> reduced_for_low(ne);  // reduced column keyed by its low
    std::vector<double> death_of_edge(ne, -1.0);

    std::vector<int> col;
    for (const Triangle& t : tris) {
        col = {edge_rank[t.a][t.b], edge_rank[t.a][t.c], edge_rank[t.b][t.c]};
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            const int low = col.back();
            if (reduced_for_low[low].empty()) {
                reduced_for_low[low] = col;
                death_of_edge[low] = t.value;
                break;
            }
            xor_into(col, reduced_for_low[low]);
        }
        // empty column: triangle creates a 2-class, irrelevant here
    }

    for (int r = 0; r < ne; ++r) {
        if (!positive[r]) continue;
        const double birth = edges[r].value;
        const double death = death_of_edge[r] >= 0.0 ? death_of_edge[r] : f.max_filtration;
        if (death > birth) d.pairs.push_back({birth, death});
    }
    d.normalize();
    return d;
}

PersistenceDiagram drop_essential(const PersistenceDiagram& d) {
    PersistenceDiagram out = d;
    out.pairs.erase(std::remove_if(out.pairs.begin(), out.pairs.end(),
                                   [&](const DiagramPair& p) {
                                       return p.death >= d.max_filtration;
                                   }),
                    out.pairs.end());
    return out;
}

namespace {

double diag_cost(const DiagramPair& p) { return 0.5 * (p.death - p.birth); }

double linf(const DiagramPair& p, const DiagramPair& q) {
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

// Feasibility at threshold c via the usual augmented bipartite graph: left
// side = points of A plus one diagonal copy per point of B, right side =
// points of B plus one diagonal copy per point of A. Diagonal copies accept
// any point whose diagonal projection costs <= c; copies match each other for
// free. Feasible iff a perfect matching exists (Kuhn's algorithm).
bool feasible(const std::vector<DiagramPair>& a, const std::vector<DiagramPair>& b, double c) {
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    const int total = na + nb;

    std::vector<std::vector<int>> adj(total);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j)
            if (linf(a[i], b[j]) <= c) adj[i].push_back(j);
        if (diag_cost(a[i]) <= c)
            for (int t = 0; t < na; ++t) adj[i].push_back(nb + t);
    }
    for (int s = 0; s < nb; ++s) {
        auto& row = adj[na + s];
        for (int j = 0; j < nb; ++j)
            if (diag_cost(b[j]) <= c) row.push_back(j);
        for (int t = 0; t < na; ++t) row.push_back(nb + t);
    }

    std::vector<int> match_right(total, -1);
    std::vector<char> visited(total, 0);
    auto try_augment = [&](auto&& self, int u) -> bool {
        for (const int v : adj[u]) {
            if (visited[v]) continue;
            visited[v] = 1;
            if (match_right[v] < 0 || self(self, match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };

    for (int u = 0; u < total; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(try_augment, u)) return false;
    }
    return true;
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    if (d1.order != d2.order)
        throw std::invalid_argument("bottleneck_distance: diagrams of different order");
    const auto& a = d1.pairs;
    const auto& b = d2.pairs;
    if (a.empty() && b.empty()) return 0.0;

    std::vector<double> candidates{0.0};
    for (const auto& p : a) candidates.push_back(diag_cost(p));
    for (const auto& q : b) candidates.push_back(diag_cost(q));
    for (const auto& p : a)
        for (const auto& q : b) candidates.push_back(linf(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    size_t lo = 0, hi = candidates.size() - 1;
    // the largest candidate always admits an all-diagonal or full matching
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (feasible(a, b, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
    out.precision(17);
    out << "# maxfilt=" << d.max_filtration << '\n';
    out << "# order=" << d.order << '\n';
    out << "order,birth,death\n";
    for (const auto& p : d.pairs) out << d.order << ',' << p.birth << ',' << p.death << '\n';
}

PersistenceDiagram read_diagram_csv(std::istream& in) {
    PersistenceDiagram d;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto mf = line.find("maxfilt=");
            if (mf != std::string::npos) d.max_filtration = std::stod(line.substr(mf + 8));
            const auto od = line.find("order=");
            if (od != std::string::npos) d.order = std::stoi(line.substr(od + 6));
            continue;
        }
        if (!have_header) {
            have_header = true;  // "order,birth,death"
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        d.order = std::stoi(tok);
        DiagramPair p;
        std::getline(ls, tok, ',');
        p.birth = std::stod(tok);
        std::getline(ls, tok, ',');
        p.death = std::stod(tok);
        d.pairs.push_back(p);
    }
    return d;
}

}  // namespace tnet
