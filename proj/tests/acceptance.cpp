// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   acceptance [--only N] [--tsplib DIR]
//
// TSPLIB files are read from DIR, $ACHCI_TSPLIB_DIR, or data/tsplib.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "achci/bench.hpp"
#include "achci/geometry.hpp"
#include "achci/heuristics.hpp"
#include "achci/mds.hpp"
#include "achci/shortest_paths.hpp"
#include "achci/tsplib_io.hpp"
#include "oracles.hpp"

using namespace achci;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

fs::path g_tsplib_dir;

fs::path data_dir() { return fs::path(ACHCI_DATA_DIR); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "achci_acceptance" / name;
    fs::create_directories(dir);
    return dir;
}

std::string join(const std::vector<std::string>& items, std::size_t limit = 8) {
    std::string out;
    for (std::size_t i = 0; i < items.size() && i < limit; ++i) out += (i ? " " : "") + items[i];
    if (items.size() > limit) out += " ...";
    return out;
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(digits);
    ss << v;
    return ss.str();
}

CostMatrix costs_for(const Instance& inst, int k) {
    return all_pairs_costs(build_visibility_graph(inst, generate_separators(inst, k)), inst.size());
}

// The twenty smallest manifest instances.
std::vector<std::string> recovery_instances() {
    std::ifstream in(data_dir() / "benchmarks.json");
    const auto j = nlohmann::json::parse(in);
    std::vector<std::pair<std::size_t, std::string>> entries;
    for (const auto& e : j.at("instances")) {
        const auto name = e.at("name").get<std::string>();
        const auto n = e.at("n").get<std::size_t>();
        if (std::none_of(entries.begin(), entries.end(), [&](const auto& x) { return x.second == name; }))
            entries.emplace_back(n, name);
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> names;
    for (std::size_t i = 0; i < entries.size() && i < 20; ++i) names.push_back(entries[i].second);
    return names;
}

Outcome euclidean_recovery() {
    std::vector<std::string> missing, bad;
    std::size_t checked = 0;
    double worst_rel = 0.0, worst_df = 0.0;
    for (const auto& name : recovery_instances()) {
        const fs::path file = g_tsplib_dir / (name + ".tsp");
        if (!fs::exists(file)) {
            missing.push_back(name);
            continue;
        }
        const Instance inst = load_instance(file);
        const CostMatrix c = costs_for(inst, 0);
        const Embedding2D e = embed_costs(c);
        double rel = 0.0;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            for (std::size_t j = i + 1; j < inst.size(); ++j) {
                const double d = distance(inst[i], inst[j]);
                rel = std::max(rel, std::abs(distance(e.coords[i], e.coords[j]) - d) / d);
            }
        }
        const double df_err = std::abs(deviation_factor(c, inst) - 1.0);
        worst_rel = std::max(worst_rel, rel);
        worst_df = std::max(worst_df, df_err);
        if (rel > 1e-6 || df_err > 1e-9) bad.push_back(name);
        ++checked;
    }
    Outcome o;
    o.pass = missing.empty() && bad.empty() && checked == 20;
    std::ostringstream d;
    d << checked << "/20 instances checked, max relative distance error " << worst_rel << ", max |DF-1| "
      << worst_df;
    if (!bad.empty()) d << "; out of tolerance: " << join(bad);
    if (!missing.empty()) d << "; missing TSPLIB files: " << join(missing, 20);
    o.detail = d.str();
    return o;
}

Outcome oracle_gap() {
    oracle::Rng rng(20240501);
    std::size_t cases = 0, below_opt = 0, hull_cases = 0, hull_bad = 0, regenerated = 0;
    double worst = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        for (int k : {0, 2}) {
            Instance inst;
            CostMatrix c;
            for (;;) {
                const std::size_t n = 5 + rng.below(6);
                inst = Instance("rand" + std::to_string(trial), oracle::random_points(rng, n));
                try {
                    c = costs_for(inst, k);
                    break;
                } catch (const std::exception&) {
                    ++regenerated;
                }
            }
            const Tour opt = brute_force_optimal(c);
            const Tour t = achci::achci(c);
            ++cases;
            if (t.cost < opt.cost * (1.0 - 1e-12)) ++below_opt;
            worst = std::max(worst, t.cost / opt.cost);
            if (k == 0) {
                ++hull_cases;
                const auto hull = convex_hull(std::span<const Point>(inst.coords()));
                if (!oracle::same_cyclic_order(hull, opt.order)) ++hull_bad;
            }
        }
    }
    Outcome o;
    o.pass = below_opt == 0 && hull_bad == 0;
    o.detail = std::to_string(cases) + " cases, " + std::to_string(below_opt) + " below optimum, worst ratio " +
               fixed(worst, 4) + ", hull order violated in " + std::to_string(hull_bad) + "/" +
               std::to_string(hull_cases) + " (regenerated " + std::to_string(regenerated) + ")";
    return o;
}

RunConfig desk_config(const fs::path& out) {
    RunConfig c;
    c.instance_dir = g_tsplib_dir;
    c.output_dir = out;
    c.cache_dir = scratch("cache");
    c.separator_counts = {0, 2, 4, 8};
    c.instances = manifest_instances(data_dir() / "benchmarks.json", 300);
    c.timing = false;
    return c;
}

Outcome table_reproduction() {
    const RunConfig config = desk_config(scratch("desk"));
    const SuiteResult r = run_suite(suite_items(config), config);
    write_suite_reports(config.output_dir, r);
    const Summary s = summarize(r.rows);
    std::vector<std::string> missing;
    for (const auto& f : r.failures) {
        if (std::find(missing.begin(), missing.end(), f.instance) == missing.end()) missing.push_back(f.instance);
    }
    Outcome o;
    o.pass = r.failures.empty() && s.win_rate >= 0.85 && std::abs(s.mean_reduction_pct - 11.0) <= 5.0;
    o.detail = std::to_string(s.rows) + "/" + std::to_string(s.rows + r.failures.size()) + " rows, win rate " +
               fixed(100.0 * s.win_rate, 1) + "%, mean reduction " + fixed(s.mean_reduction_pct, 2) + "%";
    if (!missing.empty()) {
        o.detail += "; " + std::to_string(missing.size()) + " instances unavailable: " + join(missing);
    }
    return o;
}

Outcome spot_check() {
    std::vector<std::string> missing, negative;
    std::string values;
    for (const std::string name : {"eil51", "berlin52", "kroA100", "pr76"}) {
        const fs::path file = g_tsplib_dir / (name + ".tsp");
        if (!fs::exists(file)) {
            missing.push_back(name);
            continue;
        }
        const ExperimentRow row = run_experiment(load_instance(file), 0, RunConfig{});
        values += " " + name + "=" + fixed(row.reduction_pct, 2);
        if (!(row.reduction_pct > 0.0)) negative.push_back(name);
    }
    Outcome o;
    o.pass = missing.empty() && negative.empty();
    o.detail = "reduction_pct at k=0:" + (values.empty() ? std::string(" none") : values);
    if (!negative.empty()) o.detail += "; not positive: " + join(negative);
    if (!missing.empty()) o.detail += "; missing TSPLIB files: " + join(missing);
    return o;
}

Outcome complexity() {
    using Clock = std::chrono::steady_clock;
    oracle::Rng rng(1600);
    std::vector<double> ns, ts;
    std::string detail;
    for (std::size_t n : {100, 200, 400, 800, 1600}) {
        const auto pts = oracle::random_points(rng, n, 1000.0);
        const CostMatrix c = oracle::euclidean_costs(pts);
        const int reps = n <= 200 ? 5 : (n <= 400 ? 3 : 1);
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < reps; ++r) {
            const auto t0 = Clock::now();
            const Embedding2D e = embed_2d(gram_from_costs(c));
            const Tour t = achci::achci(c, e);
            const double s = std::chrono::duration<double>(Clock::now() - t0).count();
            if (t.order.size() != n) return {false, "invalid tour at n=" + std::to_string(n)};
            best = std::min(best, s);
        }
        ns.push_back(static_cast<double>(n));
        ts.push_back(best);
        detail += " n=" + std::to_string(n) + ":" + fixed(best, 4) + "s";
    }
    const auto slope = fit_loglog_slope(ns, ts);
    Outcome o;
    o.pass = slope && *slope >= 2.3 && *slope <= 3.3;
    o.detail = "fitted exponent " + (slope ? fixed(*slope, 3) : std::string("n/a")) + " (" + detail.substr(1) + ")";
    return o;
}

Outcome geometry_paths() {
    oracle::Rng rng(500);
    std::size_t edge_mismatch = 0, dist_mismatch = 0, pairs = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const oracle::Scene sc = oracle::random_scene(rng, 10, 4, trial % 2 == 1);
        const VisibilityGraph g = build_visibility_graph(sc.inst, sc.seps);
        const oracle::Graph og = oracle::visibility(sc.inst.coords(), sc.seps.segments);
        for (std::size_t u = 0; u < g.size(); ++u)
            for (std::size_t v = 0; v < g.size(); ++v)
                if (u != v && g.has_edge(u, v) != std::isfinite(og.w[u][v])) ++edge_mismatch;
        const auto fw = oracle::floyd_warshall(og);
        for (std::size_t s = 0; s < sc.inst.size(); ++s) {
            const auto d = shortest_distances(g, s);
            for (std::size_t t = 0; t < g.size(); ++t) {
                ++pairs;
                if (std::isinf(fw[s][t]) || std::isinf(d[t])) {
                    if (std::isinf(fw[s][t]) != std::isinf(d[t])) ++dist_mismatch;
                    continue;
                }
                const double err = std::abs(d[t] - fw[s][t]);
                worst = std::max(worst, err);
                if (err > 1e-9) ++dist_mismatch;
            }
        }
    }
    Outcome o;
    o.pass = edge_mismatch == 0 && dist_mismatch == 0;
    std::ostringstream d;
    d << "500 scenes, " << edge_mismatch << " edge mismatches, " << dist_mismatch << "/" << pairs
      << " distance mismatches, max error " << worst;
    o.detail = d.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    std::vector<std::string> csv;
    std::size_t rows = 0, failed = 0;
    for (const char* run : {"run1", "run2"}) {
        const fs::path out = scratch(std::string("determinism_") + run);
        RunConfig config = desk_config(out);
        config.workers = run[3] == '1' ? 1 : 2;
        const SuiteResult r = run_suite(suite_items(config), config);
        write_suite_reports(out, r);
        csv.push_back(slurp(out / "rows.csv"));
        rows = r.rows.size();
        failed = r.failures.size();
    }
    Outcome o;
    o.pass = csv[0] == csv[1] && rows > 0;
    o.detail = std::string(csv[0] == csv[1] ? "identical" : "different") + " row CSVs (" + std::to_string(csv[0].size()) +
               " bytes, " + std::to_string(rows) + " rows, " + std::to_string(failed) + " unavailable rows)";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    g_tsplib_dir = data_dir() / "tsplib";
    if (const char* env = std::getenv("ACHCI_TSPLIB_DIR")) g_tsplib_dir = env;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg == "--tsplib" && i + 1 < argc) {
            g_tsplib_dir = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--only N] [--tsplib DIR]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "Euclidean recovery", euclidean_recovery},
        {2, "Oracle optimality gap", oracle_gap},
        {3, "Desk-scale suite reproduction", table_reproduction},
        {4, "Full-suite spot check", spot_check},
        {5, "Complexity", complexity},
        {6, "Geometry/paths correctness", geometry_paths},
        {7, "Determinism", determinism},
    };

    std::cout << "TSPLIB directory: " << g_tsplib_dir.string() << '\n';
    int failures = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
                  << fixed(secs, 1) << " s)" << std::endl;
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
