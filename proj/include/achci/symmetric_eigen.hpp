#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace achci {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

class EigenError : public std::runtime_error {
public:
    EigenError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Full eigendecomposition A = V diag(values) V^T of a symmetric matrix.
/// Eigenvalues are sorted in descending order and `vectors.row(i)` is the
/// unit eigenvector belonging to `values[i]`.
struct SymmetricEigen {
    std::vector<double> values;
    DenseMatrix vectors;
};

/// Householder reduction to tridiagonal form followed by implicit QL.
/// `a` must be square and symmetric. Throws EigenError if an eigenvalue
/// fails to converge within the iteration cap.
SymmetricEigen symmetric_eigen(const DenseMatrix& a);

}  // namespace achci
