#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "achci/cost_matrix.hpp"
#include "achci/mds.hpp"

namespace achci {

/// Closed tour: order[0] -> order[1] -> ... -> order[n-1] -> order[0].
struct Tour {
    std::vector<std::size_t> order;  ///< 0-based node indices
    double cost = 0.0;
};

/// Sum of arc costs around the closed tour. Throws std::invalid_argument if
/// `order` is not a permutation of 0..n-1.
double tour_cost(const CostMatrix& c, std::span<const std::size_t> order);

/// Optional record of how achci built its tour.
struct AchciTrace {
    struct Insertion {
        std::size_t node;   ///< inserted node k
        std::size_t after;  ///< i, k is placed between i and j
        std::size_t before; ///< j
        double score;       ///< (C_ik + C_kj) / C_ij, or the additive cost on a degenerate arc
    };
    std::vector<std::size_t> seed;  ///< initial subtour, hull order
    std::vector<Insertion> insertions;
};

/// How the next node and its position are chosen.
enum class InsertionRule {
    /// For each outside k take the arc with the least increase
    /// C_ik + C_kj - C_ij, then pick the k whose arc has the smallest ratio
    /// (C_ik + C_kj) / C_ij. This is the classic convex hull insertion rule.
    CheapestArcRatio,
    /// Minimize (C_ik + C_kj) / C_ij jointly over outside k and subtour arcs (i, j).
    JointRatio,
};

/// Cheapest insertion seeded with the convex hull of the embedding.
///
/// The embedding only decides the initial subtour; every insertion uses the
/// true costs. Ties go to the smallest k, then the earliest arc. Arcs with
/// C_ij below 1e-12 of the largest cost are ranked by the additive cost
/// C_ik + C_kj - C_ij and only used when no other arc is available.
Tour achci(const CostMatrix& c, const Embedding2D& e,
           InsertionRule rule = InsertionRule::CheapestArcRatio, AchciTrace* trace = nullptr);

/// Embeds `c` and runs achci.
Tour achci(const CostMatrix& c, InsertionRule rule = InsertionRule::CheapestArcRatio);

InsertionRule parse_insertion_rule(const std::string& name);
const char* to_string(InsertionRule rule);

/// Greedy nearest neighbor from `start`; ties go to the lowest index.
Tour nearest_neighbor(const CostMatrix& c, std::size_t start = 0);

/// Nearest neighbor from every start, keeping the cheapest tour.
Tour nearest_neighbor_best_start(const CostMatrix& c);

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Exact optimum by enumeration with node 0 fixed first. n <= 12.
Tour brute_force_optimal(const CostMatrix& c);

/// JSON object with algorithm, instance, cost and the 1-based order.
void write_tour_json(std::ostream& out, const Tour& tour, const std::string& algorithm,
                     const std::string& instance);

/// CSV "position,node" with 1-based node ids.
void write_tour_csv(std::ostream& out, const Tour& tour);

}  // namespace achci
