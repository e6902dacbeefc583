#include "achci/cost_matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "achci/tsplib_io.hpp"

namespace achci {

namespace {
constexpr std::array<char, 8> kMagic = {'A', 'C', 'H', 'C', 'I', 'C', 'M', '1'};
}

CostMatrix::CostMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n) {
        throw std::invalid_argument("cost matrix data has " + std::to_string(data_.size()) +
                                    " entries, expected " + std::to_string(n * n));
    }
}

double CostMatrix::max_entry() const {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

void validate_costs(const CostMatrix& c, double rel_tol) {
    const std::size_t n = c.size();
    for (double v : c.data()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("cost matrix has a negative or non-finite entry");
        }
    }
    const double scale = std::max(c.max_entry(), 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (c(i, i) != 0.0) {
            throw std::invalid_argument("cost matrix diagonal entry " + std::to_string(i + 1) +
                                        " is nonzero");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(c(i, j) - c(j, i)) > rel_tol * scale) {
                throw std::invalid_argument("cost matrix is not symmetric at (" +
                                            std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            }
        }
    }
}

void write_costs_csv(std::ostream& out, const CostMatrix& c) {
    out << c.size() << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) out << ',';
            out << format_double(c(i, j));
        }
        out << '\n';
    }
}

CostMatrix read_costs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("cost CSV: missing header");
    std::size_t n = 0;
    try {
        n = std::stoul(line);
    } catch (const std::exception&) {
        throw std::runtime_error("cost CSV: bad header '" + line + "'");
    }
    std::vector<double> data;
    data.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("cost CSV: expected " + std::to_string(n) + " rows");
        }
        std::istringstream row(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(row, cell, ',')) {
            data.push_back(std::stod(cell));
            ++cols;
        }
        if (cols != n) {
            throw std::runtime_error("cost CSV: row " + std::to_string(i + 1) + " has " +
                                     std::to_string(cols) + " columns");
        }
    }
    return CostMatrix(n, std::move(data));
}

void save_costs_binary(const std::filesystem::path& path, const CostMatrix& c, std::uint64_t key) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp." +
                     std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write cost cache " + tmp);
        const std::uint64_t n = c.size();
        out.write(kMagic.data(), kMagic.size());
        out.write(reinterpret_cast<const char*>(&n), sizeof n);
        out.write(reinterpret_cast<const char*>(&key), sizeof key);
        out.write(reinterpret_cast<const char*>(c.data().data()),
                  static_cast<std::streamsize>(c.data().size() * sizeof(double)));
        if (!out) throw std::runtime_error("short write to cost cache " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

CostMatrix load_costs_binary(const std::filesystem::path& path, std::uint64_t key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::array<char, 8> magic{};
    std::uint64_t n = 0;
    std::uint64_t stored_key = 0;
    in.read(magic.data(), magic.size());
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&stored_key), sizeof stored_key);
    if (!in || magic != kMagic || stored_key != key || n > (1u << 16)) return {};
    std::vector<double> data(n * n);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in) return {};
    return CostMatrix(n, std::move(data));
}

}  // namespace achci
