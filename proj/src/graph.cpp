#include "tnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tnet {

void Graph::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("Graph::add_edge: self-loop");
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("Graph::add_edge: node index out of range");
    if (i > j) std::swap(i, j);
    const std::pair<int, int> e{i, j};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return;
    edges_.insert(it, e);
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), std::pair<int, int>{i, j});
}

double Graph::density() const {
    if (n_ < 2) return 0.0;
    const double pairs = 0.5 * n_ * (n_ - 1);
    return static_cast<double>(edges_.size()) / pairs;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
    std::vector<std::vector<int>> adj(n_);
    for (const auto& [i, j] : edges_) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::vector<std::vector<int>> Graph::shortest_paths() const {
    const auto adj = adjacency_lists();
    std::vector<std::vector<int>> dist(n_, std::vector<int>(n_, -1));
    std::deque<int> queue;
    for (int s = 0; s < n_; ++s) {
        auto& d = dist[s];
        d[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (const int w : adj[u]) {
                if (d[w] < 0) {
                    d[w] = d[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return dist;
}

Graph Graph::read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("Graph::read: empty input");
    if (line.rfind("n=", 0) != 0) throw std::runtime_error("Graph::read: expected 'n=<count>' header");
    const int n = std::stoi(line.substr(2));
    if (n < 0) throw std::runtime_error("Graph::read: negative node count");
    Graph g(n);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i, j;
        if (!(ls >> i >> j)) throw std::runtime_error("Graph::read: malformed edge line: " + line);
        g.add_edge(i, j);
    }
    return g;
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Graph::load: cannot open " + path);
    return read(in);
}

void Graph::write(std::ostream& out) const {
    out << "n=" << n_ << '\n';
    for (const auto& [i, j] : edges_) out << i << ' ' << j << '\n';
}

void Graph::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("Graph::save: cannot open " + path);
    write(out);
}

}  // namespace tnet
