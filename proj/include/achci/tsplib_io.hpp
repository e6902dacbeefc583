#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "achci/geometry.hpp"

namespace achci {

/// Named planar point cloud. Node i of the file is coords[i - 1].
class Instance {
public:
    Instance() = default;
    Instance(std::string name, std::vector<Point> coords,
             std::string edge_weight_type = "EUC_2D");

    const std::string& name() const { return name_; }
    const std::string& edge_weight_type() const { return edge_weight_type_; }
    const std::vector<Point>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    const Point& operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::string name_;
    std::string edge_weight_type_ = "EUC_2D";
    std::vector<Point> coords_;
};

class TsplibError : public std::runtime_error {
public:
    TsplibError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parse a TSPLIB instance with a 2D NODE_COORD_SECTION.
///
/// Coordinates are kept as read; no TSPLIB rounding convention is applied.
/// `fallback_name` is used when the header has no NAME. Unknown keywords and
/// sections are skipped, with a message appended to `warnings` if given.
Instance parse_instance(std::istream& in, std::string_view fallback_name = "unnamed",
                        std::vector<std::string>* warnings = nullptr);

Instance load_instance(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);

/// Write TSPLIB text that parses back to an equal Instance. An empty name is
/// written as "unnamed".
void serialize_instance(std::ostream& out, const Instance& inst);

void save_instance(const std::filesystem::path& path, const Instance& inst);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace achci
