#include "achci/shortest_paths.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace achci {

bool VisibilityGraph::has_edge(std::size_t u, std::size_t v) const {
    return std::any_of(adjacency[u].begin(), adjacency[u].end(),
                       [v](const Edge& e) { return e.to == v; });
}

std::size_t VisibilityGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& adj : adjacency) total += adj.size();
    return total / 2;
}

VisibilityGraph build_visibility_graph(const Instance& inst, const SeparatorSet& seps) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
        for (std::size_t s = 0; s < seps.segments.size(); ++s) {
            if (on_segment_interior(inst[i], seps.segments[s])) {
                throw std::invalid_argument("instance '" + inst.name() + "': node " +
                                            std::to_string(i + 1) + " lies inside separator " +
                                            std::to_string(s + 1));
            }
        }
    }

    VisibilityGraph g;
    g.instance_count = inst.size();
    g.vertices = inst.coords();
    for (const auto& s : seps.segments) {
        g.vertices.push_back(s.a);
        g.vertices.push_back(s.b);
    }
    const std::size_t v = g.vertices.size();
    g.adjacency.assign(v, {});
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = i + 1; j < v; ++j) {
            const Segment path{g.vertices[i], g.vertices[j]};
            if (segments_block(path, seps)) continue;
            const double w = path.length();
            g.adjacency[i].push_back({j, w});
            g.adjacency[j].push_back({i, w});
        }
    }
    return g;
}

std::vector<double> shortest_distances(const VisibilityGraph& g, std::size_t source) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.size(), kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& e : g.adjacency[u]) {
            const double nd = d + e.weight;
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                heap.push({nd, e.to});
            }
        }
    }
    return dist;
}

CostMatrix all_pairs_costs(const VisibilityGraph& g, std::size_t n, unsigned threads) {
    if (n > g.instance_count) throw std::invalid_argument("all_pairs_costs: n exceeds instance points");
    CostMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = std::numeric_limits<double>::infinity();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t s = next++; s < n; s = next++) {
            const auto dist = shortest_distances(g, s);
            // Row s owns entries (s, t) for t > s; mirrored below.
            for (std::size_t t = s + 1; t < n; ++t) c(s, t) = dist[t];
        }
    };
    threads = std::max(1u, threads);
    if (g.size() == g.instance_count) {
        // No separators: every pair is joined by its direct edge.
        for (std::size_t s = 0; s < n; ++s) {
            for (const auto& e : g.adjacency[s]) {
                if (e.to > s && e.to < n) c(s, e.to) = e.weight;
            }
        }
    } else if (threads == 1 || n < 64) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!std::isfinite(c(i, j))) {
                throw std::runtime_error("points " + std::to_string(i + 1) + " and " +
                                         std::to_string(j + 1) + " are not connected");
            }
            c(j, i) = c(i, j);
        }
    }
    return c;
}

double deviation_factor(const CostMatrix& c, const Instance& inst) {
    const std::size_t n = inst.size();
    if (c.size() != n) throw std::invalid_argument("deviation_factor: size mismatch");
    if (n < 2) throw std::invalid_argument("deviation_factor needs at least 2 points");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double straight = distance(inst[i], inst[j]);
            if (straight == 0.0) {
                throw std::invalid_argument("instance '" + inst.name() + "': nodes " +
                                            std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " coincide");
            }
            sum += c(i, j) / straight;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return sum / pairs;
}

}  // namespace achci
