#pragma once

#include <cstddef>
#include <vector>

namespace qosm {

/// Row-major dense matrix, just enough for the normal-equations solver.
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns false when a pivot collapses (singular system).
bool solve_linear(DenseMatrix a, std::vector<double> b, std::vector<double>& x);

/// Least squares via normal equations. Tries the plain system first and
/// falls back to a ridge-regularized solve on rank deficiency.
std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& targets,
                                        bool with_intercept, double ridge);

}  // namespace qosm
