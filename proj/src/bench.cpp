#include "achci/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "achci/heuristics.hpp"
#include "achci/mds.hpp"
#include "achci/shortest_paths.hpp"
#include "achci/svg.hpp"

namespace achci {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::string context(const std::string& instance, int k) {
    return instance + " (k=" + std::to_string(k) + ")";
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::vector<std::string> manifest_instances(const fs::path& manifest, std::optional<std::size_t> max_n) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
    const json j = json::parse(in);
    std::vector<std::string> names;
    for (const auto& entry : j.at("instances")) {
        const auto n = entry.at("n").get<std::size_t>();
        if (max_n && n > *max_n) continue;
        auto name = entry.at("name").get<std::string>();
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
    }
    return names;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    const json j = json::parse(in);
    const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();

    RunConfig c;
    if (j.contains("instance_dir")) c.instance_dir = resolve(base, j["instance_dir"].get<std::string>());
    if (j.contains("output_dir")) c.output_dir = resolve(base, j["output_dir"].get<std::string>());
    if (j.contains("cache_dir")) c.cache_dir = resolve(base, j["cache_dir"].get<std::string>());
    if (j.contains("separator_counts")) c.separator_counts = j["separator_counts"].get<std::vector<int>>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
    if (j.contains("dijkstra_threads")) c.dijkstra_threads = j["dijkstra_threads"].get<unsigned>();
    if (j.contains("nn_start")) {
        const auto& s = j["nn_start"];
        if (s.is_string() && s.get<std::string>() == "best") {
            c.nn_start = NnStart::BestOfAll;
        } else if (s.is_number_unsigned() && s.get<std::size_t>() >= 1) {
            c.nn_start = NnStart::Fixed;
            c.nn_start_node = s.get<std::size_t>() - 1;
        } else {
            throw std::runtime_error("config: nn_start must be \"best\" or a 1-based node index");
        }
    }
    if (j.contains("insertion")) c.insertion = parse_insertion_rule(j["insertion"].get<std::string>());
    if (j.contains("instances")) {
        c.instances = j["instances"].get<std::vector<std::string>>();
    } else if (j.contains("manifest")) {
        std::optional<std::size_t> max_n;
        if (j.contains("max_n")) max_n = j["max_n"].get<std::size_t>();
        c.instances = manifest_instances(resolve(base, j["manifest"].get<std::string>()), max_n);
    }
    for (int k : c.separator_counts) {
        if (k < 0) throw std::runtime_error("config: separator counts must be nonnegative");
    }
    return c;
}

std::uint64_t cost_cache_key(const Instance& inst, int k) {
    // FNV-1a over a format tag, k and the raw coordinates.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    const std::uint32_t version = 1;
    mix(&version, sizeof version);
    mix(&k, sizeof k);
    for (const auto& p : inst.coords()) {
        mix(&p.x, sizeof p.x);
        mix(&p.y, sizeof p.y);
    }
    return h;
}

CostMatrix cached_costs(const Instance& inst, const SeparatorSet& seps, const RunConfig& config,
                        bool* cache_hit) {
    const std::uint64_t key = cost_cache_key(inst, seps.k);
    fs::path file;
    if (!config.cache_dir.empty()) {
        file = config.cache_dir / (inst.name() + "_k" + std::to_string(seps.k) + ".bin");
        CostMatrix cached = load_costs_binary(file, key);
        if (cached.size() == inst.size()) {
            if (cache_hit) *cache_hit = true;
            return cached;
        }
    }
    if (cache_hit) *cache_hit = false;
    const VisibilityGraph g = build_visibility_graph(inst, seps);
    CostMatrix c = all_pairs_costs(g, inst.size(), config.dijkstra_threads);
    if (!file.empty()) save_costs_binary(file, c, key);
    return c;
}

ExperimentRow run_experiment(const Instance& inst, int k, const RunConfig& config) {
    try {
        if (inst.size() < 3) throw std::invalid_argument("instance needs at least 3 nodes");
        ExperimentRow row;
        row.instance = inst.name();
        row.n = inst.size();
        row.k = k;

        const SeparatorSet seps = generate_separators(inst, k);
        auto t0 = Clock::now();
        const CostMatrix c = cached_costs(inst, seps, config, &row.cache_hit);
        row.costs_time_s = seconds_since(t0);
        row.df = deviation_factor(c, inst);

        t0 = Clock::now();
        const Tour nn = config.nn_start == NnStart::BestOfAll
                            ? nearest_neighbor_best_start(c)
                            : nearest_neighbor(c, std::min(config.nn_start_node, c.size() - 1));
        const double nn_time = seconds_since(t0);

        t0 = Clock::now();
        const Embedding2D e = embed_2d(gram_from_costs(c));
        AchciTrace trace;
        const Tour tour = achci(c, e, config.insertion, &trace);
        const double achci_time = seconds_since(t0);

        row.nn_cost = nn.cost;
        row.achci_cost = tour.cost;
        row.reduction_pct = 100.0 * (nn.cost - tour.cost) / nn.cost;
        if (config.timing) {
            row.nn_time_s = nn_time;
            row.achci_time_s = achci_time;
        } else {
            row.costs_time_s = 0.0;
        }
        row.stress = embedding_stress(c, e);
        row.hull_size = trace.seed.size();
        row.negatives_clamped = e.spectrum.negatives_clamped;
        return row;
    } catch (const std::exception& ex) {
        throw std::runtime_error(context(inst.name(), k) + ": " + ex.what());
    }
}

std::vector<SuiteItem> suite_items(const RunConfig& config) {
    std::vector<SuiteItem> items;
    for (const auto& name : config.instances) {
        for (int k : config.separator_counts) items.push_back({name, k});
    }
    return items;
}

SuiteResult run_suite(const std::vector<SuiteItem>& items, const RunConfig& config) {
    std::vector<std::optional<ExperimentRow>> rows(items.size());
    std::vector<std::optional<RowFailure>> failures(items.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            const auto& item = items[i];
            try {
                const fs::path file = config.instance_dir / (item.instance + ".tsp");
                if (!fs::exists(file)) throw std::runtime_error("instance file not found: " + file.string());
                const Instance inst = load_instance(file);
                rows[i] = run_experiment(inst, item.k, config);
            } catch (const std::exception& ex) {
                std::string msg = ex.what();
                const std::string prefix = context(item.instance, item.k) + ": ";
                if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
                failures[i] = RowFailure{item.instance, item.k, msg};
            }
        }
    };
    const unsigned workers = std::max(1u, config.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }

    SuiteResult result;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (rows[i]) result.rows.push_back(std::move(*rows[i]));
        if (failures[i]) result.failures.push_back(std::move(*failures[i]));
    }
    return result;
}

std::optional<double> fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& t) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n.size() && i < t.size(); ++i) {
        if (n[i] > 0 && t[i] > 0) pts.emplace_back(std::log(n[i]), std::log(t[i]));
    }
    if (pts.size() < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0) return std::nullopt;
    return sxy / sxx;
}

Summary summarize(const std::vector<ExperimentRow>& rows) {
    Summary s;
    s.rows = rows.size();
    double total = 0.0;
    std::vector<double> ns;
    std::vector<double> ts;
    for (const auto& r : rows) {
        if (r.reduction_pct > 0.0) ++s.wins;
        total += r.reduction_pct;
        ns.push_back(static_cast<double>(r.n));
        ts.push_back(r.achci_time_s);
    }
    if (s.rows > 0) {
        s.win_rate = static_cast<double>(s.wins) / static_cast<double>(s.rows);
        s.mean_reduction_pct = total / static_cast<double>(s.rows);
    }
    s.runtime_fit_exponent = fit_loglog_slope(ns, ts);
    return s;
}

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << kRowCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.instance << ',' << r.n << ',' << r.k << ',' << format_double(r.df) << ','
            << format_double(r.nn_cost) << ',' << format_double(r.achci_cost) << ','
            << format_double(r.reduction_pct) << ',' << format_double(r.nn_time_s) << ','
            << format_double(r.achci_time_s) << '\n';
    }
}

std::vector<ExperimentRow> read_rows_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRowCsvHeader) {
        throw std::runtime_error("row CSV: unexpected header '" + line + "'");
    }
    std::vector<ExperimentRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) {
            throw std::runtime_error("row CSV line " + std::to_string(lineno) + ": expected 9 fields");
        }
        try {
            ExperimentRow r;
            r.instance = cells[0];
            r.n = std::stoul(cells[1]);
            r.k = std::stoi(cells[2]);
            r.df = std::stod(cells[3]);
            r.nn_cost = std::stod(cells[4]);
            r.achci_cost = std::stod(cells[5]);
            r.reduction_pct = std::stod(cells[6]);
            r.nn_time_s = std::stod(cells[7]);
            r.achci_time_s = std::stod(cells[8]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::runtime_error("row CSV line " + std::to_string(lineno) + ": bad number");
        }
    }
    return rows;
}

void write_summary_json(std::ostream& out, const Summary& s) {
    nlohmann::ordered_json j;
    j["rows"] = s.rows;
    j["wins"] = s.wins;
    j["win_rate"] = s.win_rate;
    j["mean_reduction_pct"] = s.mean_reduction_pct;
    j["runtime_fit_exponent"] = s.runtime_fit_exponent ? json(*s.runtime_fit_exponent) : json(nullptr);
    out << j.dump(2) << '\n';
}

void write_plots(const fs::path& dir, const std::vector<ExperimentRow>& rows) {
    fs::create_directories(dir);
    const Summary s = summarize(rows);
    {
        auto out = open_out(dir / "summary.json");
        write_summary_json(out, s);
    }

    svg::Series ratio{"achci/nn", {}, {}};
    std::vector<double> ratios;
    svg::Series achci_t{"ACHCI", {}, {}};
    svg::Series nn_t{"NN", {}, {}};
    for (const auto& r : rows) {
        const double q = r.achci_cost / r.nn_cost;
        ratio.x.push_back(r.df);
        ratio.y.push_back(q);
        ratios.push_back(q);
        achci_t.x.push_back(static_cast<double>(r.n));
        achci_t.y.push_back(r.achci_time_s);
        nn_t.x.push_back(static_cast<double>(r.n));
        nn_t.y.push_back(r.nn_time_s);
    }
    {
        auto out = open_out(dir / "ratio_vs_df.svg");
        const double one = 1.0;
        svg::write_scatter(out, ratio, "Tour cost ratio vs deviation factor", "deviation factor",
                           "ACHCI cost / NN cost", &one);
    }
    {
        auto out = open_out(dir / "ratio_histogram.svg");
        svg::write_histogram(out, ratios, 20, "Distribution of ACHCI / NN cost ratio", "ACHCI cost / NN cost");
    }
    {
        std::vector<std::string> notes;
        std::vector<double> ns(achci_t.x);
        if (s.runtime_fit_exponent) notes.push_back("ACHCI fitted exponent " + format_double(*s.runtime_fit_exponent));
        if (const auto nn_fit = fit_loglog_slope(nn_t.x, nn_t.y)) notes.push_back("NN fitted exponent " + format_double(*nn_fit));
        auto out = open_out(dir / "runtime.svg");
        svg::write_loglog(out, {achci_t, nn_t}, "Computation time", "n", "seconds", notes);
    }
}

void write_suite_reports(const fs::path& dir, const SuiteResult& result) {
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "rows.csv");
        write_rows_csv(out, result.rows);
    }
    {
        auto out = open_out(dir / "diagnostics.csv");
        out << "instance,k,costs_time_s,cache_hit,stress,hull_size,negative_eigenvalues\n";
        for (const auto& r : result.rows) {
            out << r.instance << ',' << r.k << ',' << format_double(r.costs_time_s) << ','
                << (r.cache_hit ? 1 : 0) << ',' << format_double(r.stress) << ',' << r.hull_size << ','
                << r.negatives_clamped << '\n';
        }
    }
    {
        auto out = open_out(dir / "failures.csv");
        out << "instance,k,message\n";
        for (const auto& f : result.failures) {
            std::string msg = f.message;
            std::replace(msg.begin(), msg.end(), '"', '\'');
            out << f.instance << ',' << f.k << ",\"" << msg << "\"\n";
        }
    }
    write_plots(dir, result.rows);
}

}  // namespace achci
