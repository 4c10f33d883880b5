#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the solver or quadrature code it is compared against.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jumpfem/sparse.hpp"

namespace jumpfem::oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const CsrMatrix& A) {
    Dense d(A.n, std::vector<double>(A.n, 0.0));
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
            d[i][A.col_indices[k]] = A.values[k];
    return d;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (a[piv][col] == 0.0)
            throw std::runtime_error("dense_solve: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

inline CsrMatrix from_dense(const Dense& d) {
    std::vector<std::vector<std::size_t>> rows(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (d[i][j] != 0.0)
                rows[i].push_back(j);
    CsrMatrix m = CsrMatrix::from_pattern(rows);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
            m.values[k] = d[i][m.col_indices[k]];
    return m;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

/// Integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1): a! b! / (a+b+2)!.
inline double reference_monomial_integral(int a, int b) {
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

inline double relative_difference(const std::vector<double>& x, const std::vector<double>& y) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - y[i]) * (x[i] - y[i]);
        den += y[i] * y[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

/// Brute-force minimiser of h^(1-eps)/sqrt(eps) over eps = step, 2 step, ..., <= eps_max.
inline double grid_minimize_bound(double h, double step, double eps_max) {
    double best_eps = step;
    double best = INFINITY;
    for (int k = 1; k * step <= eps_max + 1e-12; ++k) {
        const double eps = k * step;
        const double v = std::pow(h, 1.0 - eps) / std::sqrt(eps);
        if (v < best) {
            best = v;
            best_eps = eps;
        }
    }
    return best_eps;
}

}  // namespace jumpfem::oracle
