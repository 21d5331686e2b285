#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace conngraph {

/// Dense square matrix, row-major. Only what the Laplacian and the Jacobi
/// solver need.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    std::span<const double> values() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace conngraph
