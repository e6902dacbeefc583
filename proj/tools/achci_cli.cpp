// Command-line front end: instance inspection, separator generation, cost
// matrices, embeddings, single solves and the benchmark suite.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "achci/bench.hpp"
#include "achci/geometry.hpp"
#include "achci/heuristics.hpp"
#include "achci/mds.hpp"
#include "achci/shortest_paths.hpp"
#include "achci/svg.hpp"
#include "achci/tsplib_io.hpp"

namespace {

using namespace achci;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

Instance load(const std::string& path) {
    std::vector<std::string> warnings;
    Instance inst = load_instance(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
    return inst;
}

CostMatrix costs_for(const Instance& inst, const SeparatorSet& seps, unsigned threads) {
    return all_pairs_costs(build_visibility_graph(inst, seps), inst.size(), threads);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex hull cheapest insertion for TSPs with impassable separators"};
    app.require_subcommand(1);

    std::string file;
    int k = 0;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto* parse = app.add_subcommand("parse", "Read a TSPLIB instance and print a summary");
    std::string parse_out;
    parse->add_option("instance", file, "TSPLIB file")->required();
    parse->add_option("--out", parse_out, "Re-serialize the instance to this file");

    auto* gen = app.add_subcommand("gen-separators", "Generate the separator star for an instance");
    std::string gen_out, gen_svg;
    gen->add_option("instance", file)->required();
    gen->add_option("-k,--separators", k, "Number of separators")->check(CLI::NonNegativeNumber);
    gen->add_option("--out", gen_out, "Separator JSON sidecar");
    gen->add_option("--svg", gen_svg, "Draw points and separators");

    auto* costs = app.add_subcommand("costs", "All-pairs shortest path costs around the separators");
    std::string costs_csv, costs_bin;
    costs->add_option("instance", file)->required();
    costs->add_option("-k,--separators", k)->check(CLI::NonNegativeNumber);
    costs->add_option("--csv", costs_csv, "Write the matrix as CSV");
    costs->add_option("--bin", costs_bin, "Write the matrix in binary cache form");
    costs->add_option("--threads", threads, "Dijkstra worker threads");

    auto* embed = app.add_subcommand("embed", "Two-dimensional MDS embedding of the cost matrix");
    std::string embed_csv, embed_svg;
    embed->add_option("instance", file)->required();
    embed->add_option("-k,--separators", k)->check(CLI::NonNegativeNumber);
    embed->add_option("--csv", embed_csv, "Write index,x,y");
    embed->add_option("--svg", embed_svg, "Draw the embedding and its convex hull");
    embed->add_option("--threads", threads);

    auto* solve = app.add_subcommand("solve", "Build a tour");
    std::string algo = "achci", rule = "cheapest-arc-ratio", solve_json, solve_csv, solve_svg;
    std::size_t start = 1;
    bool best_start = false;
    solve->add_option("instance", file)->required();
    solve->add_option("-k,--separators", k)->check(CLI::NonNegativeNumber);
    solve->add_option("--algo", algo)->check(CLI::IsMember({"achci", "nn", "brute"}));
    solve->add_option("--insertion", rule, "ACHCI insertion rule")
        ->check(CLI::IsMember({"joint-ratio", "cheapest-arc-ratio"}));
    solve->add_option("--start", start, "NN start node (1-based)")->check(CLI::PositiveNumber);
    solve->add_flag("--best-start", best_start, "NN from every start, keep the best");
    solve->add_option("--json", solve_json, "Write the tour as JSON");
    solve->add_option("--csv", solve_csv, "Write the tour as CSV");
    solve->add_option("--svg", solve_svg, "Draw the tour");
    solve->add_option("--threads", threads);

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite from a config file");
    std::string config_path;
    int workers = 0;
    bool no_timing = false;
    std::string bench_rule;
    bench->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    bench->add_option("--workers", workers, "Rows run concurrently (overrides config)");
    bench->add_option("--insertion", bench_rule, "ACHCI insertion rule (overrides config)")
        ->check(CLI::IsMember({"joint-ratio", "cheapest-arc-ratio"}));
    bench->add_flag("--no-timing", no_timing, "Write zero times so reports are reproducible");

    auto* plot = app.add_subcommand("plot", "Summary and plots from a row CSV");
    std::string rows_path, plot_dir = ".";
    plot->add_option("--rows", rows_path)->required()->check(CLI::ExistingFile);
    plot->add_option("--out", plot_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*parse) {
            const Instance inst = load(file);
            const Point c = centroid(inst);
            std::cout << "name " << inst.name() << "\nn " << inst.size() << "\nedge_weight_type "
                      << inst.edge_weight_type() << "\ncentroid " << format_double(c.x) << ' '
                      << format_double(c.y) << '\n';
            if (!parse_out.empty()) save_instance(parse_out, inst);
        } else if (*gen) {
            const Instance inst = load(file);
            const SeparatorSet seps = generate_separators(inst, k);
            if (gen_out.empty()) {
                write_separators_json(std::cout, seps);
            } else {
                auto out = open_out(gen_out);
                write_separators_json(out, seps);
            }
            if (!gen_svg.empty()) {
                auto out = open_out(gen_svg);
                svg::write_scene(out, inst, seps, nullptr, inst.name() + ", k = " + std::to_string(k));
            }
        } else if (*costs) {
            const Instance inst = load(file);
            const SeparatorSet seps = generate_separators(inst, k);
            const VisibilityGraph g = build_visibility_graph(inst, seps);
            const CostMatrix c = all_pairs_costs(g, inst.size(), threads);
            std::cout << "n " << inst.size() << "\nk " << k << "\nvisibility_vertices " << g.size()
                      << "\nvisibility_edges " << g.edge_count() << "\ndeviation_factor "
                      << format_double(deviation_factor(c, inst)) << '\n';
            if (!costs_csv.empty()) {
                auto out = open_out(costs_csv);
                write_costs_csv(out, c);
            }
            if (!costs_bin.empty()) save_costs_binary(costs_bin, c, cost_cache_key(inst, k));
        } else if (*embed) {
            const Instance inst = load(file);
            const CostMatrix c = costs_for(inst, generate_separators(inst, k), threads);
            const Embedding2D e = embed_costs(c);
            std::cout << "lambda1 " << format_double(e.lambda1) << "\nlambda2 " << format_double(e.lambda2)
                      << "\nnegative_eigenvalues " << e.spectrum.negatives_clamped << "\nnegative_mass "
                      << format_double(e.spectrum.negative_mass) << "\nstress "
                      << format_double(embedding_stress(c, e)) << '\n';
            if (!embed_csv.empty()) {
                auto out = open_out(embed_csv);
                write_embedding_csv(out, e);
            }
            if (!embed_svg.empty()) {
                auto out = open_out(embed_svg);
                svg::write_points(out, e.coords, convex_hull(std::span<const Point>(e.coords)),
                                  inst.name() + " embedding, k = " + std::to_string(k));
            }
        } else if (*solve) {
            const Instance inst = load(file);
            const SeparatorSet seps = generate_separators(inst, k);
            const CostMatrix c = costs_for(inst, seps, threads);
            Tour tour;
            if (algo == "achci") {
                tour = achci::achci(c, parse_insertion_rule(rule));
            } else if (algo == "nn") {
                if (start > inst.size()) throw std::invalid_argument("--start exceeds the node count");
                tour = best_start ? nearest_neighbor_best_start(c) : nearest_neighbor(c, start - 1);
            } else {
                tour = brute_force_optimal(c);
            }
            std::cout << "algorithm " << algo << "\ncost " << format_double(tour.cost) << "\norder";
            for (const std::size_t v : tour.order) std::cout << ' ' << v + 1;
            std::cout << '\n';
            if (!solve_json.empty()) {
                auto out = open_out(solve_json);
                write_tour_json(out, tour, algo, inst.name());
            }
            if (!solve_csv.empty()) {
                auto out = open_out(solve_csv);
                write_tour_csv(out, tour);
            }
            if (!solve_svg.empty()) {
                auto out = open_out(solve_svg);
                svg::write_scene(out, inst, seps, &tour,
                                 inst.name() + ", k = " + std::to_string(k) + ", " + algo);
            }
        } else if (*bench) {
            RunConfig config = load_config(config_path);
            if (workers > 0) config.workers = static_cast<unsigned>(workers);
            if (no_timing) config.timing = false;
            if (!bench_rule.empty()) config.insertion = parse_insertion_rule(bench_rule);
            const auto items = suite_items(config);
            std::cerr << "running " << items.size() << " rows\n";
            const SuiteResult result = run_suite(items, config);
            write_suite_reports(config.output_dir, result);
            const Summary s = summarize(result.rows);
            std::cout << "rows " << s.rows << "\nfailed " << result.failures.size() << "\nwins " << s.wins
                      << "\nwin_rate " << format_double(s.win_rate) << "\nmean_reduction_pct "
                      << format_double(s.mean_reduction_pct) << "\nreports " << config.output_dir.string()
                      << '\n';
            for (const auto& f : result.failures) {
                std::cerr << "failed: " << f.instance << " k=" << f.k << ": " << f.message << '\n';
            }
        } else if (*plot) {
            std::ifstream in(rows_path);
            write_plots(plot_dir, read_rows_csv(in));
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
