#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "achci/geometry.hpp"
#include "achci/heuristics.hpp"
#include "achci/mds.hpp"
#include "achci/shortest_paths.hpp"
#include "achci/tsplib_io.hpp"
#include "oracles.hpp"

using namespace achci;

namespace {

CostMatrix costs_for(const Instance& inst, int k) {
    return all_pairs_costs(build_visibility_graph(inst, generate_separators(inst, k)), inst.size());
}

Instance data_instance(const std::string& rel) {
    return load_instance(std::filesystem::path(ACHCI_DATA_DIR) / rel);
}

bool is_permutation(const std::vector<std::size_t>& order, std::size_t n) {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected(n);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    return sorted == expected;
}

const std::vector<Point> kSquareCenter = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};

}  // namespace

TEST_CASE("tour cost") {
    const CostMatrix sq = oracle::euclidean_costs({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const std::vector<std::size_t> corners = {0, 1, 2, 3};
    CHECK(tour_cost(sq, corners) == doctest::Approx(4.0));

    const CostMatrix tri(3, {0, 2, 3, 2, 0, 5, 3, 5, 0});
    for (const auto& order : std::vector<std::vector<std::size_t>>{{0, 1, 2}, {2, 1, 0}, {1, 0, 2}})
        CHECK(tour_cost(tri, order) == 10.0);

    const std::vector<std::size_t> dup = {0, 1, 1, 3}, short_order = {0, 1, 2}, out_of_range = {0, 1, 2, 4};
    CHECK_THROWS(tour_cost(sq, dup));
    CHECK_THROWS(tour_cost(sq, short_order));
    CHECK_THROWS(tour_cost(sq, out_of_range));
}

TEST_CASE("tour cost is invariant under rotation") {
    oracle::Rng rng(21);
    const CostMatrix c = oracle::euclidean_costs(oracle::random_points(rng, 30));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::size_t> order(30);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = 29; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        const double base = tour_cost(c, order);
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(rng.below(30)), order.end());
        CHECK(tour_cost(c, order) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("nearest neighbor on a line") {
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {1, 0}, {3, 0}, {7, 0}});
    const Tour t = nearest_neighbor(c, 0);
    CHECK(t.order == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(t.cost == doctest::Approx(14.0));
}

TEST_CASE("nearest neighbor on three nodes is the only cycle") {
    const CostMatrix tri(3, {0, 2, 3, 2, 0, 5, 3, 5, 0});
    for (std::size_t s = 0; s < 3; ++s) CHECK(nearest_neighbor(tri, s).cost == 10.0);
}

TEST_CASE("nearest neighbor takes the cheapest arc at every step") {
    oracle::Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.below(40);
        const CostMatrix c = oracle::euclidean_costs(oracle::random_points(rng, n));
        const std::size_t start = rng.below(n);
        const Tour t = nearest_neighbor(c, start);
        REQUIRE(is_permutation(t.order, n));
        CHECK(t.order.front() == start);
        std::vector<bool> visited(n, false);
        visited[start] = true;
        for (std::size_t r = 1; r < n; ++r) {
            const std::size_t from = t.order[r - 1], to = t.order[r];
            for (std::size_t v = 0; v < n; ++v)
                if (!visited[v]) CHECK(c(from, to) <= c(from, v));
            visited[to] = true;
        }
        CHECK(t.cost == doctest::Approx(tour_cost(c, t.order)).epsilon(1e-12));
    }
}

TEST_CASE("nearest neighbor ties go to the lowest index") {
    // From node 0, nodes 1 and 2 are both at distance 1.
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {0, 1}, {1, 0}, {5, 5}});
    CHECK(nearest_neighbor(c, 0).order[1] == 1);
    CHECK_THROWS(nearest_neighbor(c, 4));
}

TEST_CASE("best start is no worse than any fixed start") {
    oracle::Rng rng(23);
    const CostMatrix c = oracle::euclidean_costs(oracle::random_points(rng, 25));
    const Tour best = nearest_neighbor_best_start(c);
    for (std::size_t s = 0; s < 25; ++s) CHECK(best.cost <= nearest_neighbor(c, s).cost);
}

TEST_CASE("brute force") {
    const CostMatrix sq = oracle::euclidean_costs({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(brute_force_optimal(sq).cost == doctest::Approx(4.0));
    const CostMatrix tri(3, {0, 2, 3, 2, 0, 5, 3, 5, 0});
    CHECK(brute_force_optimal(tri).cost == 10.0);
    CHECK(brute_force_optimal(tri).order.front() == 0);
    CHECK_THROWS(brute_force_optimal(CostMatrix(13)));
}

TEST_CASE("brute force equals Held-Karp") {
    oracle::Rng rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.below(8);
        CostMatrix c = oracle::euclidean_costs(oracle::random_points(rng, n));
        if (trial % 2) {
            // Arbitrary symmetric costs, not necessarily metric.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = rng.uniform(1, 10);
        }
        const Tour t = brute_force_optimal(c);
        CHECK(is_permutation(t.order, n));
        CHECK(t.cost == doctest::Approx(oracle::held_karp(c)).epsilon(1e-12));
    }
}

TEST_CASE("square with a center point") {
    const CostMatrix c = oracle::euclidean_costs(kSquareCenter);
    AchciTrace trace;
    const Tour t = achci::achci(c, embed_costs(c), InsertionRule::CheapestArcRatio, &trace);
    CHECK(trace.seed.size() == 4);
    CHECK(std::find(trace.seed.begin(), trace.seed.end(), 4) == trace.seed.end());
    REQUIRE(trace.insertions.size() == 1);
    CHECK(trace.insertions[0].node == 4);
    CHECK(trace.insertions[0].score == doctest::Approx(std::sqrt(2.0)));
    CHECK(t.cost == doctest::Approx(3.0 + std::sqrt(2.0)));
    CHECK(t.cost == doctest::Approx(brute_force_optimal(c).cost));
    CHECK(achci::achci(c, InsertionRule::JointRatio).cost == doctest::Approx(t.cost));
}

TEST_CASE("insertion ties go to the smallest node, then the earliest arc") {
    // Nodes 4 and 5 mirror each other across the square and tie on their best ratio.
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1}, {2, 3}});
    for (const auto rule : {InsertionRule::CheapestArcRatio, InsertionRule::JointRatio}) {
        AchciTrace trace;
        achci::achci(c, embed_costs(c), rule, &trace);
        REQUIRE(trace.insertions.size() == 2);
        CHECK(trace.insertions[0].node == 4);
        CHECK(std::min(trace.insertions[0].after, trace.insertions[0].before) == 0);
        CHECK(std::max(trace.insertions[0].after, trace.insertions[0].before) == 1);
        CHECK(trace.insertions[1].node == 5);
    }
}

TEST_CASE("coincident nodes use the additive fallback") {
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {3, 0}, {3, 0}, {0, 3}, {1, 1}});
    for (const auto rule : {InsertionRule::CheapestArcRatio, InsertionRule::JointRatio}) {
        const Tour t = achci::achci(c, rule);
        CHECK(is_permutation(t.order, 5));
        CHECK(std::isfinite(t.cost));
        CHECK(t.cost >= brute_force_optimal(c).cost - 1e-12);
    }
}

TEST_CASE("collinear embedding seeds a two-node subtour") {
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {1, 0}, {2, 0}, {5, 0}, {3, 0}});
    AchciTrace trace;
    const Tour t = achci::achci(c, embed_costs(c), InsertionRule::CheapestArcRatio, &trace);
    CHECK(trace.seed.size() == 2);
    CHECK(t.cost == doctest::Approx(10.0));
}

TEST_CASE("achci is never better than the optimum and builds valid tours") {
    oracle::Rng rng(25);
    double worst = 1.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 5 + rng.below(6);
        const Instance inst("r", oracle::random_points(rng, n));
        const CostMatrix c = trial % 2 ? costs_for(inst, 2) : oracle::euclidean_costs(inst.coords());
        const double opt = brute_force_optimal(c).cost;
        for (const auto rule : {InsertionRule::CheapestArcRatio, InsertionRule::JointRatio}) {
            AchciTrace trace;
            const Tour t = achci::achci(c, embed_costs(c), rule, &trace);
            REQUIRE(is_permutation(t.order, n));
            CHECK(t.cost == doctest::Approx(tour_cost(c, t.order)).epsilon(1e-9));
            CHECK(t.cost >= opt * (1 - 1e-12));
            CHECK(trace.seed.size() + trace.insertions.size() == n);
            if (rule == InsertionRule::CheapestArcRatio) worst = std::max(worst, t.cost / opt);
        }
    }
    CHECK(worst <= 1.35);
}

TEST_CASE("subtour stays a simple cycle") {
    oracle::Rng rng(26);
    const Instance inst("r", oracle::random_points(rng, 40));
    const CostMatrix c = costs_for(inst, 4);
    AchciTrace trace;
    const Tour t = achci::achci(c, embed_costs(c), InsertionRule::CheapestArcRatio, &trace);
    std::vector<std::size_t> ring = trace.seed;
    for (const auto& ins : trace.insertions) {
        const auto it = std::find(ring.begin(), ring.end(), ins.after);
        REQUIRE(it != ring.end());
        const auto next = std::next(it) == ring.end() ? ring.begin() : std::next(it);
        CHECK(*next == ins.before);
        CHECK(std::find(ring.begin(), ring.end(), ins.node) == ring.end());
        ring.insert(std::next(it), ins.node);
    }
    CHECK(ring == t.order);
}

TEST_CASE("achci is deterministic") {
    const Instance inst = data_instance("tsplib/berlin52.tsp");
    const CostMatrix c = costs_for(inst, 4);
    const Tour a = achci::achci(c), b = achci::achci(c);
    CHECK(a.order == b.order);
    CHECK(a.cost == b.cost);
}

TEST_CASE("achci needs three nodes and a matching embedding") {
    const CostMatrix two(2, {0, 1, 1, 0});
    CHECK_THROWS(achci::achci(two, Embedding2D{}));
    const CostMatrix c = oracle::euclidean_costs(kSquareCenter);
    Embedding2D e = embed_costs(c);
    e.coords.pop_back();
    CHECK_THROWS(achci::achci(c, e));
}

TEST_CASE("regression values") {
    const Instance demo = data_instance("demo25.tsp");
    const CostMatrix c4 = costs_for(demo, 4);
    CHECK(achci::achci(c4).cost == doctest::Approx(431.32883088476297).epsilon(1e-12));

    const Instance berlin = data_instance("tsplib/berlin52.tsp");
    const CostMatrix b0 = costs_for(berlin, 0);
    CHECK(achci::achci(b0).cost == doctest::Approx(7624.998318041205).epsilon(1e-12));
    CHECK(achci::achci(b0, InsertionRule::JointRatio).cost == doctest::Approx(7693.271885606801).epsilon(1e-12));
    CHECK(nearest_neighbor(b0, 0).cost == doctest::Approx(8980.918279329191).epsilon(1e-12));
}

TEST_CASE("demo tour around separators costs no more than its detours require") {
    const Instance demo = data_instance("demo25.tsp");
    const SeparatorSet seps = generate_separators(demo, 4);
    const CostMatrix c = costs_for(demo, 4);
    const Tour t = achci::achci(c);
    double straight = 0.0;
    for (std::size_t r = 0; r < t.order.size(); ++r)
        straight += distance(demo[t.order[r]], demo[t.order[(r + 1) % t.order.size()]]);
    CHECK(t.cost >= straight);
    CHECK(t.cost < nearest_neighbor(c, 0).cost);
}

TEST_CASE("tour output") {
    const CostMatrix c = oracle::euclidean_costs({{0, 0}, {1, 0}, {3, 0}, {7, 0}});
    const Tour t = nearest_neighbor(c, 0);
    std::ostringstream json, csv;
    write_tour_json(json, t, "nn", "line");
    CHECK(json.str() == "{\"algorithm\":\"nn\",\"instance\":\"line\",\"n\":4,\"cost\":14.0,\"order\":[1,2,3,4]}\n");
    write_tour_csv(csv, t);
    CHECK(csv.str() == "position,node\n1,1\n2,2\n3,3\n4,4\n");
}

TEST_CASE("insertion rule names") {
    CHECK(parse_insertion_rule("joint-ratio") == InsertionRule::JointRatio);
    CHECK(parse_insertion_rule("cheapest-arc-ratio") == InsertionRule::CheapestArcRatio);
    CHECK(std::string(to_string(InsertionRule::JointRatio)) == "joint-ratio");
    CHECK_THROWS(parse_insertion_rule("greedy"));
}
