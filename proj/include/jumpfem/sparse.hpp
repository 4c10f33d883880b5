#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jumpfem {

/// Square matrix in compressed-row layout. Column indices are sorted within each row.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_offsets{0};
    std::vector<std::size_t> col_indices;
    std::vector<double> values;

    std::size_t nnz() const { return values.size(); }

    /// Entry (i, j), zero when not stored.
    double at(std::size_t i, std::size_t j) const;

    /// Index into values for (i, j); throws if (i, j) is not in the pattern.
    std::size_t slot(std::size_t i, std::size_t j) const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    std::vector<double> diagonal() const;

    /// Every stored (i,j,v) has a stored (j,i) equal to v within rel_tol relative to max |v|.
    bool is_symmetric(double rel_tol) const;

    /// Builds the pattern from per-row sorted, unique column lists; values start at zero.
    static CsrMatrix from_pattern(const std::vector<std::vector<std::size_t>>& rows);
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace jumpfem
