#pragma once

#include <cstddef>
#include <vector>

#include "achci/cost_matrix.hpp"
#include "achci/geometry.hpp"
#include "achci/tsplib_io.hpp"

namespace achci {

/// Instance points followed by separator endpoints (a then b for each
/// separator). Two vertices are adjacent iff the straight segment between
/// them is not blocked; edge weight is its Euclidean length.
struct VisibilityGraph {
    struct Edge {
        std::size_t to;
        double weight;
    };

    std::vector<Point> vertices;
    std::size_t instance_count = 0;
    std::vector<std::vector<Edge>> adjacency;

    std::size_t size() const { return vertices.size(); }
    bool has_edge(std::size_t u, std::size_t v) const;
    std::size_t edge_count() const;
};

VisibilityGraph build_visibility_graph(const Instance& inst, const SeparatorSet& seps);

/// Single-source Dijkstra over the whole graph (binary heap).
std::vector<double> shortest_distances(const VisibilityGraph& g, std::size_t source);

/// Shortest separator-avoiding path lengths between the first `n` vertices.
/// Sources run on up to `threads` workers; the result does not depend on it.
CostMatrix all_pairs_costs(const VisibilityGraph& g, std::size_t n, unsigned threads = 1);

/// Mean of true-path / straight-line length over all unordered pairs.
double deviation_factor(const CostMatrix& c, const Instance& inst);

}  // namespace achci
