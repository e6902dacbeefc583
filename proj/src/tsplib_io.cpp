#include "achci/tsplib_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace achci {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<double> to_double(std::string_view tok) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<long long> to_integer(std::string_view tok) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
    return v;
}

bool starts_numeric(std::string_view s) {
    if (s.empty()) return false;
    const char c = s.front();
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

// Splits "KEY : VALUE", "KEY: VALUE" and bare "KEY" lines.
std::pair<std::string, std::string_view> split_keyword(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
        const auto ws = line.find_first_of(" \t");
        if (ws == std::string_view::npos) return {std::string(line), {}};
        return {std::string(trim(line.substr(0, ws))), trim(line.substr(ws))};
    }
    return {std::string(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

constexpr std::array kPlanarWeightTypes = {"EUC_2D", "CEIL_2D", "ATT", "MAN_2D", "MAX_2D"};

bool is_planar(std::string_view type) {
    for (const auto* t : kPlanarWeightTypes) {
        if (type == t) return true;
    }
    return false;
}

}  // namespace

Instance::Instance(std::string name, std::vector<Point> coords, std::string edge_weight_type)
    : name_(std::move(name)), edge_weight_type_(std::move(edge_weight_type)),
      coords_(std::move(coords)) {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i].x) || !std::isfinite(coords_[i].y)) {
            throw std::invalid_argument("instance '" + name_ + "': node " +
                                        std::to_string(i + 1) + " has a non-finite coordinate");
        }
    }
}

TsplibError::TsplibError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Instance parse_instance(std::istream& in, std::string_view fallback_name,
                        std::vector<std::string>* warnings) {
    auto warn = [&](std::size_t line, const std::string& msg) {
        if (warnings) warnings->push_back("line " + std::to_string(line) + ": " + msg);
    };

    enum class Mode { Header, Coords, Skipping };
    Mode mode = Mode::Header;

    std::string name;
    std::string weight_type;
    std::optional<std::size_t> dimension;
    std::size_t dimension_line = 0;
    bool saw_coord_section = false;
    std::vector<Point> coords;

    std::string raw;
    std::size_t lineno = 0;
    std::size_t coord_section_end = 0;
    bool saw_eof = false;

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        if ((mode == Mode::Coords || mode == Mode::Skipping) && starts_numeric(line)) {
            if (mode == Mode::Skipping) continue;
            const auto tok = split_ws(line);
            if (tok.size() != 3) {
                throw TsplibError(lineno, "expected 'id x y', got " + std::to_string(tok.size()) +
                                              " fields");
            }
            const auto id = to_integer(tok[0]);
            if (!id) throw TsplibError(lineno, "non-integer node id '" + std::string(tok[0]) + "'");
            const auto x = to_double(tok[1]);
            const auto y = to_double(tok[2]);
            if (!x || !y) {
                throw TsplibError(lineno, "non-numeric coordinate in '" + std::string(line) + "'");
            }
            if (coords.size() >= *dimension) {
                throw TsplibError(lineno, "more coordinate rows than DIMENSION " +
                                              std::to_string(*dimension));
            }
            if (*id != static_cast<long long>(coords.size() + 1)) {
                throw TsplibError(lineno, "node id " + std::to_string(*id) + " out of sequence, expected " +
                                              std::to_string(coords.size() + 1));
            }
            coords.push_back({*x, *y});
            coord_section_end = lineno;
            continue;
        }

        auto [key, value] = split_keyword(line);
        if (mode == Mode::Coords) coord_section_end = lineno;
        mode = Mode::Header;

        if (key == "EOF") {
            saw_eof = true;
            break;
        }
        if (key == "NAME") {
            name = std::string(value);
        } else if (key == "TYPE") {
            if (value == "TOUR") throw TsplibError(lineno, "tour files are not instances");
            if (value != "TSP") warn(lineno, "TYPE '" + std::string(value) + "' treated as TSP");
        } else if (key == "COMMENT") {
        } else if (key == "DIMENSION") {
            const auto d = to_integer(value);
            if (!d || *d < 1) {
                throw TsplibError(lineno, "invalid DIMENSION '" + std::string(value) + "'");
            }
            dimension = static_cast<std::size_t>(*d);
            dimension_line = lineno;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (!is_planar(value)) {
                throw TsplibError(lineno, "unsupported EDGE_WEIGHT_TYPE '" + std::string(value) +
                                              "' (need planar coordinates)");
            }
            weight_type = std::string(value);
        } else if (key == "NODE_COORD_SECTION") {
            if (!dimension) throw TsplibError(lineno, "NODE_COORD_SECTION before DIMENSION");
            if (saw_coord_section) throw TsplibError(lineno, "duplicate NODE_COORD_SECTION");
            saw_coord_section = true;
            mode = Mode::Coords;
            coords.reserve(*dimension);
        } else if (key.size() > 8 && key.ends_with("_SECTION")) {
            warn(lineno, "skipping section " + key);
            mode = Mode::Skipping;
        } else if (starts_numeric(line)) {
            throw TsplibError(lineno, "unexpected data outside a section");
        } else {
            warn(lineno, "ignoring keyword " + key);
        }
    }

    if (!saw_coord_section) {
        throw TsplibError(lineno, "missing NODE_COORD_SECTION");
    }
    if (coords.size() != *dimension) {
        throw TsplibError(saw_eof || coord_section_end == 0 ? lineno : coord_section_end,
                          "DIMENSION " + std::to_string(*dimension) + " (line " +
                              std::to_string(dimension_line) + ") but " +
                              std::to_string(coords.size()) + " coordinate rows");
    }
    if (weight_type.empty()) {
        warn(lineno, "no EDGE_WEIGHT_TYPE, assuming EUC_2D");
        weight_type = "EUC_2D";
    }
    if (name.empty()) name = std::string(fallback_name);
    return Instance(std::move(name), std::move(coords), std::move(weight_type));
}

Instance load_instance(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    try {
        return parse_instance(in, path.stem().string(), warnings);
    } catch (const TsplibError& e) {
        throw TsplibError(e.line(), path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

void serialize_instance(std::ostream& out, const Instance& inst) {
    out << "NAME : " << (inst.name().empty() ? "unnamed" : inst.name()) << '\n'
        << "TYPE : TSP\n"
        << "DIMENSION : " << inst.size() << '\n'
        << "EDGE_WEIGHT_TYPE : " << inst.edge_weight_type() << '\n'
        << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < inst.size(); ++i) {
        out << (i + 1) << ' ' << format_double(inst[i].x) << ' ' << format_double(inst[i].y) << '\n';
    }
    out << "EOF\n";
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    serialize_instance(out, inst);
}

}  // namespace achci
