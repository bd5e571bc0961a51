#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tnet {

// Undirected simple binary graph. Edges stored once as (i, j) with i < j,
// kept sorted so membership tests are a binary search.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {}

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;

    double density() const;
    std::vector<std::vector<int>> adjacency_lists() const;

    // BFS hop distances from every node; unreachable pairs are -1.
    std::vector<std::vector<int>> shortest_paths() const;

    // Plain-text edge list: first line "n=<count>", then "i j" per edge, i < j.
    static Graph read(std::istream& in);
    static Graph load(const std::string& path);
    void write(std::ostream& out) const;
    void save(const std::string& path) const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

}  // namespace tnet
