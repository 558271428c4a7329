#ifndef FLOWSHOP_MATRIX_HPP
#define FLOWSHOP_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace flowshop {

// Dense row-major matrix of doubles. Small and dumb on purpose; all the
// numerics in this project are plain loops over contiguous rows.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    bool operator==(const Matrix&) const = default;
};

} // namespace flowshop

#endif
