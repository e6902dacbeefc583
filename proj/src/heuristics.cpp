#include "achci/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "achci/geometry.hpp"
#include "achci/tsplib_io.hpp"

namespace achci {

namespace {

struct Candidate {
    std::size_t node = std::numeric_limits<std::size_t>::max();
    std::size_t pos = 0;
    bool degenerate = true;
    double score = std::numeric_limits<double>::infinity();
};

struct Option {
    std::size_t node;
    std::size_t pos;
    bool degenerate;
    double detour;  // C_ik + C_kj
    double arc;     // C_ij
};

// Strict improvement only, so the first candidate in scan order wins ties.
void consider(Candidate& best, const Option& o) {
    const double score = o.degenerate ? o.detour - o.arc : o.detour / o.arc;
    const bool empty = best.node == std::numeric_limits<std::size_t>::max();
    const bool better = empty || (best.degenerate && !o.degenerate) ||
                        (o.degenerate == best.degenerate && score < best.score);
    if (better) best = {o.node, o.pos, o.degenerate, score};
}

}  // namespace

double tour_cost(const CostMatrix& c, std::span<const std::size_t> order) {
    const std::size_t n = c.size();
    if (order.size() != n) {
        throw std::invalid_argument("tour has " + std::to_string(order.size()) + " nodes, expected " +
                                    std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (const std::size_t v : order) {
        if (v >= n || seen[v]) throw std::invalid_argument("tour order is not a permutation");
        seen[v] = true;
    }
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) total += c(order[r], order[(r + 1) % n]);
    return total;
}

Tour achci(const CostMatrix& c, const Embedding2D& e, InsertionRule rule, AchciTrace* trace) {
    const std::size_t n = c.size();
    if (n < 3) throw std::invalid_argument("achci needs at least 3 nodes");
    if (e.coords.size() != n) throw std::invalid_argument("achci: embedding size does not match costs");

    std::vector<std::size_t> seed = convex_hull(std::span<const Point>(e.coords));
    if (seed.size() == 1) {
        // Everything embedded onto one point: pair it with its costliest partner.
        const std::size_t a = seed.front();
        std::size_t b = a == 0 ? 1 : 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (v != a && c(a, v) > c(a, b)) b = v;
        }
        seed.push_back(b);
    }
    if (trace) {
        trace->seed = seed;
        trace->insertions.clear();
    }

    const double degenerate_below = 1e-12 * c.max_entry();
    std::vector<bool> in_tour(n, false);
    for (const std::size_t v : seed) in_tour[v] = true;

    // ring[p] -> ring[p + 1] are the subtour arcs; ring.back() == ring.front().
    std::vector<std::size_t> ring = seed;
    ring.push_back(seed.front());
    std::vector<double> arc(seed.size());
    for (std::size_t p = 0; p < seed.size(); ++p) arc[p] = c(ring[p], ring[p + 1]);

    while (ring.size() - 1 < n) {
        const std::size_t arcs = ring.size() - 1;
        Candidate best;

        for (std::size_t k = 0; k < n; ++k) {
            if (in_tour[k]) continue;
            const auto row = c.row(k);
            if (rule == InsertionRule::JointRatio) {
                for (std::size_t p = 0; p < arcs; ++p) {
                    const double detour = row[ring[p]] + row[ring[p + 1]];
                    consider(best, {k, p, arc[p] < degenerate_below, detour, arc[p]});
                }
            } else {
                std::size_t cheapest = 0;
                double least = std::numeric_limits<double>::infinity();
                for (std::size_t p = 0; p < arcs; ++p) {
                    const double increase = row[ring[p]] + row[ring[p + 1]] - arc[p];
                    if (increase < least) {
                        least = increase;
                        cheapest = p;
                    }
                }
                const double detour = row[ring[cheapest]] + row[ring[cheapest + 1]];
                consider(best, {k, cheapest, arc[cheapest] < degenerate_below, detour, arc[cheapest]});
            }
        }
        const std::size_t best_node = best.node;
        const std::size_t best_pos = best.pos;
        const double best_score = best.score;

        const std::size_t i = ring[best_pos];
        const std::size_t j = ring[best_pos + 1];
        if (trace) trace->insertions.push_back({best_node, i, j, best_score});
        ring.insert(ring.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1, best_node);
        arc[best_pos] = c(i, best_node);
        arc.insert(arc.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1, c(best_node, j));
        in_tour[best_node] = true;
    }

    Tour t;
    t.order.assign(ring.begin(), ring.end() - 1);
    t.cost = tour_cost(c, t.order);
    return t;
}

Tour achci(const CostMatrix& c, InsertionRule rule) { return achci(c, embed_costs(c), rule); }

InsertionRule parse_insertion_rule(const std::string& name) {
    if (name == "joint-ratio") return InsertionRule::JointRatio;
    if (name == "cheapest-arc-ratio") return InsertionRule::CheapestArcRatio;
    throw std::invalid_argument("unknown insertion rule '" + name + "'");
}

const char* to_string(InsertionRule rule) {
    return rule == InsertionRule::JointRatio ? "joint-ratio" : "cheapest-arc-ratio";
}

Tour nearest_neighbor(const CostMatrix& c, std::size_t start) {
    const std::size_t n = c.size();
    if (start >= n) throw std::invalid_argument("nearest_neighbor: start node out of range");
    std::vector<bool> visited(n, false);
    Tour t;
    t.order.reserve(n);
    t.order.push_back(start);
    visited[start] = true;
    std::size_t current = start;
    for (std::size_t step = 1; step < n; ++step) {
        const auto row = c.row(current);
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!visited[v] && (next == n || row[v] < row[next])) next = v;
        }
        visited[next] = true;
        t.order.push_back(next);
        current = next;
    }
    t.cost = tour_cost(c, t.order);
    return t;
}

Tour nearest_neighbor_best_start(const CostMatrix& c) {
    if (c.size() == 0) throw std::invalid_argument("nearest_neighbor: empty cost matrix");
    Tour best = nearest_neighbor(c, 0);
    for (std::size_t s = 1; s < c.size(); ++s) {
        Tour t = nearest_neighbor(c, s);
        if (t.cost < best.cost) best = std::move(t);
    }
    return best;
}

Tour brute_force_optimal(const CostMatrix& c) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("brute_force_optimal: empty cost matrix");
    if (n > kBruteForceMaxNodes) {
        throw std::invalid_argument("brute_force_optimal: n = " + std::to_string(n) + " exceeds " +
                                    std::to_string(kBruteForceMaxNodes));
    }
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), std::size_t{1});

    Tour best;
    best.cost = std::numeric_limits<double>::infinity();
    do {
        // Each cycle appears in both directions; keep one.
        if (rest.size() >= 2 && rest.front() > rest.back()) continue;
        double cost = 0.0;
        std::size_t prev = 0;
        for (const std::size_t v : rest) {
            cost += c(prev, v);
            prev = v;
        }
        cost += c(prev, 0);
        if (cost < best.cost) {
            best.cost = cost;
            best.order.assign(1, 0);
            best.order.insert(best.order.end(), rest.begin(), rest.end());
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    best.cost = tour_cost(c, best.order);
    return best;
}

void write_tour_json(std::ostream& out, const Tour& tour, const std::string& algorithm,
                     const std::string& instance) {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm;
    j["instance"] = instance;
    j["n"] = tour.order.size();
    j["cost"] = tour.cost;
    auto& order = j["order"] = nlohmann::ordered_json::array();
    for (const std::size_t v : tour.order) order.push_back(v + 1);
    out << j.dump() << '\n';
}

void write_tour_csv(std::ostream& out, const Tour& tour) {
    out << "position,node\n";
    for (std::size_t p = 0; p < tour.order.size(); ++p) out << (p + 1) << ',' << (tour.order[p] + 1) << '\n';
}

}  // namespace achci
