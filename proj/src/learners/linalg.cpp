#include "qosm/learners/linalg.hpp"

#include <cmath>
#include <cstdlib>

namespace qosm {

bool solve_linear(DenseMatrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a.at(r, col)) > std::fabs(a.at(pivot, col))) pivot = r;
        if (std::fabs(a.at(pivot, col)) < 1e-12) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a.at(i, c) * x[c];
        x[i] = s / a.at(i, i);
    }
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& targets,
                                        bool with_intercept, double ridge) {
    const std::size_t d = rows.empty() ? 0 : rows[0].size();
    const std::size_t n = d + (with_intercept ? 1 : 0);

    DenseMatrix xtx(n, n);
    std::vector<double> xty(n, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) xtx.at(i, j) += row[i] * row[j];
            xty[i] += row[i] * targets[r];
        }
        if (with_intercept) {
            for (std::size_t i = 0; i < d; ++i) xtx.at(i, d) += row[i];
            xtx.at(d, d) += 1.0;
            xty[d] += targets[r];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) xtx.at(i, j) = xtx.at(j, i);

    std::vector<double> beta;
    if (solve_linear(xtx, xty, beta)) return beta;

    for (std::size_t i = 0; i < n; ++i) xtx.at(i, i) += ridge;
    if (solve_linear(xtx, xty, beta)) return beta;

    // fully degenerate (e.g. zero rows): predict the target mean
    beta.assign(n, 0.0);
    if (with_intercept && !targets.empty()) {
        double mean = 0.0;
        for (double t : targets) mean += t;
        beta[d] = mean / static_cast<double>(targets.size());
    }
    return beta;
}

}  // namespace qosm
