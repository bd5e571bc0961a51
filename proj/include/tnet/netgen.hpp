#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tnet/graph.hpp"

namespace tnet {

// Graph-level summary statistics for characterizing a simulated ensemble.
// Centralities are means over nodes; path statistics are restricted to the
// largest connected component.
struct DescriptorRecord {
    double average_degree = 0.0;
    double avg_shortest_path = 0.0;
    double betweenness = 0.0;
    double closeness = 0.0;
    double degree_centrality = 0.0;
    double density = 0.0;
    double diameter = 0.0;
    double modularity = 0.0;
    double transitivity = 0.0;

    static const char* csv_header();
    void write_csv_row(std::ostream& out) const;
};

// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs is an edge independently
// with probability p.
Graph gen_er(int n, double p, uint64_t seed);

// Stochastic block model: within-block pairs edge with p_high, cross-block
// with p_low.
Graph gen_sbm(const std::vector<int>& block_sizes, double p_high, double p_low, uint64_t seed);

// Split n nodes as evenly as possible into k blocks; remainder goes to the
// first blocks.
std::vector<int> even_blocks(int n, int k);

DescriptorRecord descriptors(const Graph& g);

}  // namespace tnet
