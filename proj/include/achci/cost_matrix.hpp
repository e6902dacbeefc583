#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace achci {

/// Dense symmetric arc-cost matrix C, row-major, 0-based indices.
class CostMatrix {
public:
    CostMatrix() = default;
    explicit CostMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
    CostMatrix(std::size_t n, std::vector<double> row_major);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    const std::vector<double>& data() const { return data_; }
    double max_entry() const;

    friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Throws std::invalid_argument unless C is finite, nonnegative, has a zero
/// diagonal and is symmetric within `rel_tol` of the largest entry.
void validate_costs(const CostMatrix& c, double rel_tol = 1e-9);

/// Text form: first line n, then n rows of comma-separated doubles.
void write_costs_csv(std::ostream& out, const CostMatrix& c);
CostMatrix read_costs_csv(std::istream& in);

/// Binary cache form: magic, n, a 64-bit key, then n*n little-endian doubles.
void save_costs_binary(const std::filesystem::path& path, const CostMatrix& c, std::uint64_t key);

/// Returns an empty matrix if the file is missing, malformed, or its key differs.
CostMatrix load_costs_binary(const std::filesystem::path& path, std::uint64_t key);

}  // namespace achci
