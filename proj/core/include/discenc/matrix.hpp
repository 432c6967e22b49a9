#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace discenc {

/// Dense row-major matrix of doubles. The single carrier type for samples,
/// weights, activations and feature blocks.
///
/// Shape coercions are always explicit; there is no broadcasting anywhere in
/// this library. Finite-ness is validated wherever values enter the system
/// (file loaders, deserialization, checked constructors); the arithmetic
/// routines assume finite inputs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-initialized
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool all_finite() const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Standard matrix product. Throws std::invalid_argument naming both shapes
/// when the inner dimensions disagree. Summation order per output element is
/// fixed (sequential over the inner index), so results do not depend on any
/// form of internal parallelism.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

/// Element-wise map; out[i][j] = f(a[i][j]).
template <class F>
Matrix map_elements(const Matrix& a, F&& f) {
    Matrix out(a.rows(), a.cols());
    const double* src = a.data();
    double* dst = out.data();
    for (std::size_t i = 0; i < a.size(); ++i) dst[i] = f(src[i]);
    return out;
}

/// sqrt(sum (u_i - v_i)^2). Lengths must agree.
double euclidean_distance(std::span<const double> u, std::span<const double> v);

/// Squared Euclidean distance, same summation order as euclidean_distance.
/// Monotone in the distance, so nearest-neighbor orderings computed on it are
/// orderings under the Euclidean metric.
double squared_distance(std::span<const double> u, std::span<const double> v);

}  // namespace discenc
