#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "achci/cost_matrix.hpp"
#include "achci/geometry.hpp"
#include "achci/heuristics.hpp"
#include "achci/tsplib_io.hpp"

namespace achci {

enum class NnStart { Fixed, BestOfAll };

struct RunConfig {
    std::filesystem::path instance_dir = ".";
    std::filesystem::path output_dir = "out";
    std::filesystem::path cache_dir;  ///< empty disables the cost-matrix cache
    std::vector<int> separator_counts = {0, 2, 4, 8, 16, 32};
    std::vector<std::string> instances;
    NnStart nn_start = NnStart::Fixed;
    std::size_t nn_start_node = 0;  ///< 0-based
    InsertionRule insertion = InsertionRule::CheapestArcRatio;
    bool timing = true;             ///< false writes zero times, making reports reproducible
    unsigned workers = 1;           ///< rows in flight
    unsigned dijkstra_threads = 1;
};

/// Reads a JSON config. Relative paths are resolved against the config
/// file's directory. Instances come from "instances" (names) or from a
/// "manifest" file filtered by "max_n".
RunConfig load_config(const std::filesystem::path& path);

/// Instance names listed in a manifest file with n <= max_n, in file order.
std::vector<std::string> manifest_instances(const std::filesystem::path& manifest,
                                            std::optional<std::size_t> max_n = std::nullopt);

struct ExperimentRow {
    std::string instance;
    std::size_t n = 0;
    int k = 0;
    double df = 1.0;
    double nn_cost = 0.0;
    double achci_cost = 0.0;
    double reduction_pct = 0.0;
    double nn_time_s = 0.0;
    double achci_time_s = 0.0;

    // Diagnostics, written to a separate file.
    double costs_time_s = 0.0;
    double stress = 0.0;
    std::size_t hull_size = 0;
    std::size_t negatives_clamped = 0;
    bool cache_hit = false;
};

/// Cost matrix for (instance, k), read from or written to the cache.
CostMatrix cached_costs(const Instance& inst, const SeparatorSet& seps, const RunConfig& config,
                        bool* cache_hit = nullptr);

std::uint64_t cost_cache_key(const Instance& inst, int k);

/// Full pipeline for one (instance, k) cell. Errors carry instance/k context.
ExperimentRow run_experiment(const Instance& inst, int k, const RunConfig& config);

struct SuiteItem {
    std::string instance;
    int k = 0;
};

struct RowFailure {
    std::string instance;
    int k = 0;
    std::string message;
};

struct SuiteResult {
    std::vector<ExperimentRow> rows;  ///< manifest order
    std::vector<RowFailure> failures;
};

std::vector<SuiteItem> suite_items(const RunConfig& config);

SuiteResult run_suite(const std::vector<SuiteItem>& items, const RunConfig& config);

struct Summary {
    std::size_t rows = 0;
    std::size_t wins = 0;
    double win_rate = 0.0;
    double mean_reduction_pct = 0.0;
    std::optional<double> runtime_fit_exponent;
};

Summary summarize(const std::vector<ExperimentRow>& rows);

/// Least-squares slope of log(time) against log(n) over rows with time > 0.
std::optional<double> fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& t);

inline constexpr const char* kRowCsvHeader =
    "instance,n,k,df,nn_cost,achci_cost,reduction_pct,nn_time_s,achci_time_s";

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> read_rows_csv(std::istream& in);
void write_summary_json(std::ostream& out, const Summary& s);

/// rows.csv, diagnostics.csv, failures.csv, summary.json and the plots.
void write_suite_reports(const std::filesystem::path& dir, const SuiteResult& result);

/// summary.json and the three plots from an existing row set.
void write_plots(const std::filesystem::path& dir, const std::vector<ExperimentRow>& rows);

}  // namespace achci
