#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "achci/geometry.hpp"
#include "achci/heuristics.hpp"
#include "achci/tsplib_io.hpp"

namespace achci::svg {

/// Points, separators and (optionally) a tour drawn as straight arcs.
void write_scene(std::ostream& out, const Instance& inst, const SeparatorSet& seps,
                 const Tour* tour = nullptr, const std::string& title = "");

void write_points(std::ostream& out, const std::vector<Point>& points,
                  const std::vector<std::size_t>& hull, const std::string& title);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Scatter plot with an optional horizontal reference line.
void write_scatter(std::ostream& out, const Series& s, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const double* reference_y = nullptr);

void write_histogram(std::ostream& out, const std::vector<double>& values, int bins,
                     const std::string& title, const std::string& xlabel);

/// Log-log scatter of each series; `notes` are printed under the title.
void write_loglog(std::ostream& out, const std::vector<Series>& series, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel,
                  const std::vector<std::string>& notes = {});

}  // namespace achci::svg
