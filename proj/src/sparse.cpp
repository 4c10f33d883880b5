#include "jumpfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpfem {

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    const auto first = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i]);
    const auto last = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j)
        return 0.0;
    return values[static_cast<std::size_t>(it - col_indices.begin())];
}

std::size_t CsrMatrix::slot(std::size_t i, std::size_t j) const {
    const auto first = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i]);
    const auto last = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j)
        throw std::out_of_range("CsrMatrix::slot: entry not in sparsity pattern");
    return static_cast<std::size_t>(it - col_indices.begin());
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
            sum += values[k] * x[col_indices[k]];
        y[i] = sum;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(n);
    multiply(x, y);
    return y;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = at(i, i);
    return d;
}

bool CsrMatrix::is_symmetric(double rel_tol) const {
    double scale = 0.0;
    for (double v : values)
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            const std::size_t j = col_indices[k];
            if (std::abs(values[k] - at(j, i)) > rel_tol * scale)
                return false;
        }
    }
    return true;
}

CsrMatrix CsrMatrix::from_pattern(const std::vector<std::vector<std::size_t>>& rows) {
    CsrMatrix m;
    m.n = rows.size();
    m.row_offsets.assign(m.n + 1, 0);
    for (std::size_t i = 0; i < m.n; ++i)
        m.row_offsets[i + 1] = m.row_offsets[i] + rows[i].size();
    m.col_indices.reserve(m.row_offsets.back());
    for (const auto& r : rows)
        m.col_indices.insert(m.col_indices.end(), r.begin(), r.end());
    m.values.assign(m.col_indices.size(), 0.0);
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace jumpfem
